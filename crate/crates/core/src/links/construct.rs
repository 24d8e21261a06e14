use std::collections::{BTreeSet, VecDeque};

use super::{Arc, Component, Crossing, LinkDiagram, LinkError, Merge};
use crate::trees::{LBTree, Part, VertexId};

/// Component label used by [`associated_link`] for part `part` at vertex `id`.
pub fn slot_label(id: VertexId, part: Part) -> String {
    format!("v{id}{}", part.letter())
}

/// Positive Hopf link on arcs 1..4: `labels.0` on arcs {1, 2}, `labels.1`
/// on {3, 4}. Unoriented.
pub fn hopf_link(labels: (&str, &str)) -> Result<LinkDiagram, LinkError> {
    if labels.0 == labels.1 {
        return Err(LinkError::EqualLabels(labels.0.to_string()));
    }
    LinkDiagram::new(
        vec![Crossing::unoriented([1, 4, 2, 3]), Crossing::unoriented([3, 2, 4, 1])],
        vec![],
        vec![Component::new(labels.0, [1, 2]), Component::new(labels.1, [3, 4])],
        false,
    )
}

/// Crossingless unknot with one loop arc.
pub fn unknot(label: &str) -> LinkDiagram {
    LinkDiagram::new(vec![], vec![1], vec![Component::new(label, [1])], false).expect("a loop is valid")
}

fn factors(l: &LinkDiagram) -> Vec<LinkDiagram> {
    if l.summands().is_empty() {
        vec![l.unoriented()]
    } else {
        l.summands().to_vec()
    }
}

fn shifted(l: &LinkDiagram, by: Arc) -> LinkDiagram {
    let mut out = l.clone();
    for c in &mut out.crossings {
        c.arcs = c.arcs.map(|a| a + by);
    }
    for a in &mut out.loops {
        *a += by;
    }
    for c in &mut out.components {
        for a in &mut c.arcs {
            *a += by;
        }
    }
    out
}

/// `(tail, head)` endpoints of a crossing arc: occurrence order when
/// unoriented, direction of travel when oriented.
fn ends(l: &LinkDiagram, arc: Arc) -> ((usize, usize), (usize, usize)) {
    let occ: Vec<(usize, usize)> = l
        .crossings
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.arcs.iter().enumerate().filter(move |(_, &a)| a == arc).map(move |(p, _)| (i, p)))
        .collect();
    assert_eq!(occ.len(), 2, "arc {arc} must appear twice");
    if l.oriented && super::incoming(&l.crossings[occ[0].0], occ[0].1) {
        (occ[1], occ[0])
    } else {
        (occ[0], occ[1])
    }
}

/// Connected sum of `l1` and `l2` along components `c1` and `c2`.
///
/// Arcs of `l2` are shifted past the largest arc of `l1`. The splice is
/// made at the lowest crossing arc of each chosen component: with `x` the
/// arc of `c1` and `y` that of `c2`, `x` is rerouted into the head of `y`
/// and `y` into the head of `x`. The merged component is labelled
/// `"{c1}+{c2}"`; a crossingless summand component simply disappears
/// into the other.
pub fn connected_sum(l1: &LinkDiagram, c1: &str, l2: &LinkDiagram, c2: &str) -> Result<LinkDiagram, LinkError> {
    if l1.oriented != l2.oriented {
        return Err(LinkError::OrientationMismatch);
    }
    let k1 = l1.component_index(c1).ok_or_else(|| LinkError::UnknownComponent(c1.to_string()))?;
    let k2 = l2.component_index(c2).ok_or_else(|| LinkError::UnknownComponent(c2.to_string()))?;
    let merged_label = format!("{c1}+{c2}");
    let mut labels: BTreeSet<&str> = BTreeSet::from([merged_label.as_str()]);
    for c in l1.components.iter().enumerate().filter(|&(i, _)| i != k1).map(|(_, c)| c) {
        if !labels.insert(&c.label) {
            return Err(LinkError::DuplicateLabel(c.label.clone()));
        }
    }
    for c in l2.components.iter().enumerate().filter(|&(i, _)| i != k2).map(|(_, c)| c) {
        if !labels.insert(&c.label) {
            return Err(LinkError::DuplicateLabel(c.label.clone()));
        }
    }

    let offset = l1.max_arc().unwrap_or(0);
    let l2 = shifted(l2, offset);
    let comp1 = &l1.components[k1];
    let comp2 = &l2.components[k2];
    let is_loop = |l: &LinkDiagram, c: &Component| c.arcs.iter().all(|a| l.loops.contains(a));

    let mut crossings: Vec<Crossing> = l1.crossings.clone();
    let mut loops: Vec<Arc> = l1.loops.clone();
    let mut merged_arcs: Vec<Arc> = comp1.arcs.iter().chain(&comp2.arcs).copied().collect();
    let base = crossings.len();
    crossings.extend(l2.crossings.iter().cloned());
    loops.extend(l2.loops.iter().copied());

    if is_loop(l1, comp1) {
        loops.retain(|a| !comp1.arcs.contains(a));
        merged_arcs.retain(|a| !comp1.arcs.contains(a));
    } else if is_loop(&l2, comp2) {
        loops.retain(|a| !comp2.arcs.contains(a));
        merged_arcs.retain(|a| !comp2.arcs.contains(a));
    } else {
        let x = *comp1.arcs.iter().find(|a| !l1.loops.contains(a)).expect("component meets a crossing");
        let y = *comp2.arcs.iter().find(|a| !l2.loops.contains(a)).expect("component meets a crossing");
        let (_, x_head) = ends(l1, x);
        let (_, y_head) = ends(&l2, y);
        crossings[x_head.0].arcs[x_head.1] = y;
        crossings[base + y_head.0].arcs[y_head.1] = x;
        if !l1.oriented {
            for i in [x_head.0, base + y_head.0] {
                crossings[i] = Crossing::unoriented(crossings[i].arcs);
            }
        }
    }

    let mut origins = comp1.origins.clone();
    origins.extend(comp2.origins.iter().cloned());
    let mut merged = Component::new(merged_label.clone(), merged_arcs);
    merged.origins = origins;

    let mut components = Vec::with_capacity(l1.components.len() + l2.components.len() - 1);
    for (i, c) in l1.components.iter().enumerate() {
        components.push(if i == k1 { merged.clone() } else { c.clone() });
    }
    components.extend(l2.components.iter().enumerate().filter(|&(i, _)| i != k2).map(|(_, c)| c.clone()));

    let mut out = LinkDiagram::new(crossings, loops, components, l1.oriented)?;
    let mut merges = l1.merges.clone();
    merges.extend(l2.merges.iter().cloned());
    merges.push(Merge { left: c1.to_string(), right: c2.to_string(), result: merged_label });
    let mut summands = factors(l1);
    summands.extend(factors(&l2));
    out.set_history(merges, summands);
    Ok(out)
}

/// The associated link: one Hopf link per vertex with components
/// [`slot_label`]`(v, A)` and `(v, B)`, summed along every tree edge at
/// the components of the parts holding that edge. Edges are processed in
/// breadth-first order from the first vertex.
pub fn associated_link(t: &LBTree) -> LinkDiagram {
    let tree = t.tree();
    let hopf = |v: usize| {
        let id = tree.id(v);
        hopf_link((&slot_label(id, Part::A), &slot_label(id, Part::B))).expect("distinct labels")
    };
    let mut acc = hopf(0);
    let mut seen = vec![false; tree.vertex_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &e in tree.incident(v) {
            let w = tree.other_end(e, v);
            if seen[w] {
                continue;
            }
            seen[w] = true;
            queue.push_back(w);
            let from = slot_label(tree.id(v), t.part_of(v, e).expect("valid tree"));
            let to = slot_label(tree.id(w), t.part_of(w, e).expect("valid tree"));
            let label = acc.component_with_origin(&from).expect("slot component present").label.clone();
            acc = connected_sum(&acc, &label, &hopf(w), &to).expect("associated link sums are well formed");
        }
    }
    acc
}
