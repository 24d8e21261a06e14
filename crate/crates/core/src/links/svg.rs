//! Chain-layout SVG of an associated link: vertices in depth-first order
//! along a line, one Hopf clasp per vertex, and one band per tree edge
//! drawn as an arc above the chain between the two clasped circles.

use crate::trees::{LBTree, Part};

use super::slot_label;

const STEP: f64 = 120.0;
const RADIUS: f64 = 28.0;
const BASE_Y: f64 = 160.0;

fn preorder(t: &LBTree) -> Vec<usize> {
    let tree = t.tree();
    let mut order = Vec::with_capacity(tree.vertex_count());
    let mut seen = vec![false; tree.vertex_count()];
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        order.push(v);
        let mut next: Vec<usize> =
            tree.incident(v).iter().map(|&e| tree.other_end(e, v)).filter(|&w| !seen[w]).collect();
        next.sort_unstable_by(|a, b| b.cmp(a));
        stack.extend(next);
    }
    order
}

fn circle_centre(slot: usize, part: Part) -> (f64, f64) {
    let x = 60.0 + slot as f64 * STEP;
    match part {
        Part::A => (x, BASE_Y),
        Part::B => (x + RADIUS, BASE_Y),
    }
}

pub fn associated_link_svg(t: &LBTree) -> String {
    let tree = t.tree();
    let order = preorder(t);
    let mut slot = vec![0usize; tree.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        slot[v] = i;
    }
    let width = 120.0 + order.len() as f64 * STEP;
    let height = BASE_Y + 80.0;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    );
    out.push_str("<g fill=\"none\" stroke-width=\"3\">\n");
    for e in 0..tree.edge_count() {
        let (u, v) = tree.endpoints(e);
        let (x1, _) = circle_centre(slot[u], t.part_of(u, e).expect("valid tree"));
        let (x2, _) = circle_centre(slot[v], t.part_of(v, e).expect("valid tree"));
        let top = BASE_Y - RADIUS;
        let lift = 30.0 + (x1 - x2).abs() / 4.0;
        let mid = (x1 + x2) / 2.0;
        out.push_str(&format!(
            "<path class=\"band\" d=\"M {x1} {top} Q {mid} {} {x2} {top}\" stroke=\"#888\"/>\n",
            top - 2.0 * lift
        ));
    }
    for &v in &order {
        let id = tree.id(v);
        for (part, colour) in [(Part::A, "#1f77b4"), (Part::B, "#d62728")] {
            let (cx, cy) = circle_centre(slot[v], part);
            out.push_str(&format!(
                "<circle id=\"{}\" cx=\"{cx}\" cy=\"{cy}\" r=\"{RADIUS}\" stroke=\"{colour}\"/>\n",
                slot_label(id, part)
            ));
        }
    }
    out.push_str("</g>\n<g font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">\n");
    for &v in &order {
        let (cx, _) = circle_centre(slot[v], Part::A);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{}</text>\n",
            cx + RADIUS / 2.0,
            BASE_Y + RADIUS + 20.0,
            tree.id(v)
        ));
    }
    out.push_str("</g>\n</svg>\n");
    out
}
