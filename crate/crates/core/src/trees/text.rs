//! Edge-list text format.
//!
//! ```text
//! # comment
//! 1 2 0          edge 1-2 with colour 0 (colour column optional)
//! 2 3 1
//! 7              a lone vertex id (single-vertex trees)
//! part 2: 1 | 3  explicit bipartition at 2, by neighbour ids
//! ```
//!
//! Colours must be given on every edge or on none. Without colours every
//! edge starts in part A; `part` lines then override individual vertices.

use std::collections::BTreeSet;

use super::{
    bipartitions_from_bicolouring, validate_lbtree, Bicolouring, Bipartition, LBTree, Tree, TreeError, VertexId,
};

fn parse_err(line: usize, message: impl Into<String>) -> TreeError {
    TreeError::Parse { line, message: message.into() }
}

fn parse_id(tok: &str, line: usize) -> Result<VertexId, TreeError> {
    tok.parse().map_err(|_| parse_err(line, format!("bad vertex id `{tok}`")))
}

pub fn parse_tree_text(input: &str) -> Result<LBTree, TreeError> {
    let mut vertices: BTreeSet<VertexId> = BTreeSet::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut colours: Vec<Option<u8>> = Vec::new();
    let mut part_lines: Vec<(usize, VertexId, Vec<VertexId>, Vec<VertexId>)> = Vec::new();

    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("part") {
            let (head, body) = rest.split_once(':').ok_or_else(|| parse_err(line_no, "expected `part v: a b | c`"))?;
            let v = parse_id(head.trim(), line_no)?;
            let (a, b) = body.split_once('|').unwrap_or((body, ""));
            let ids = |s: &str| -> Result<Vec<VertexId>, TreeError> {
                s.split_whitespace().map(|t| parse_id(t, line_no)).collect()
            };
            part_lines.push((line_no, v, ids(a)?, ids(b)?));
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [v] => {
                vertices.insert(parse_id(v, line_no)?);
            }
            [u, v, rest @ ..] if rest.len() <= 1 => {
                let (u, v) = (parse_id(u, line_no)?, parse_id(v, line_no)?);
                vertices.extend([u, v]);
                edges.push((u, v));
                colours.push(match rest.first() {
                    None => None,
                    Some(&"0") => Some(0),
                    Some(&"1") => Some(1),
                    Some(c) => return Err(parse_err(line_no, format!("colour must be 0 or 1, got `{c}`"))),
                });
            }
            _ => return Err(parse_err(line_no, "expected `u v [colour]`")),
        }
    }

    let tree = Tree::new(vertices, edges)?;
    let coloured = colours.iter().filter(|c| c.is_some()).count();
    let mut lb = if coloured == 0 {
        LBTree::uniform(tree)
    } else if coloured == colours.len() {
        let c = Bicolouring::from_slice(&colours.iter().map(|c| c.unwrap()).collect::<Vec<_>>());
        bipartitions_from_bicolouring(&tree, &c)?
    } else {
        let e = colours.iter().position(|c| c.is_none()).unwrap();
        return Err(TreeError::Uncoloured(e));
    };

    if !part_lines.is_empty() {
        let tree = lb.tree().clone();
        let mut parts = lb.parts().to_vec();
        for (line_no, v, a, b) in part_lines {
            let vi = tree.index_of(v).ok_or_else(|| parse_err(line_no, format!("unknown vertex {v}")))?;
            let edge_to = |w: VertexId| {
                tree.index_of(w)
                    .and_then(|wi| tree.edge_between(vi, wi))
                    .ok_or_else(|| parse_err(line_no, format!("{w} is not a neighbour of {v}")))
            };
            parts[vi] = Bipartition::new(
                a.into_iter().map(edge_to).collect::<Result<Vec<_>, _>>()?,
                b.into_iter().map(edge_to).collect::<Result<Vec<_>, _>>()?,
            );
        }
        lb = LBTree::from_parts_unchecked(tree, parts);
        let report = validate_lbtree(&lb);
        if !report.is_ok() {
            return Err(TreeError::InvalidBipartitions(report));
        }
    }
    Ok(lb)
}

/// Writes `t` with the colour column from `c`.
pub fn write_tree_text(t: &Tree, c: &Bicolouring) -> String {
    let mut out = String::new();
    if t.edge_count() == 0 {
        out.push_str(&format!("{}\n", t.id(0)));
    }
    for e in 0..t.edge_count() {
        let (u, v) = t.edge_ids(e);
        match c.get(e) {
            Some(col) => out.push_str(&format!("{u} {v} {col}\n")),
            None => out.push_str(&format!("{u} {v}\n")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{compatible_bicolouring, is_isomorphic, Part};

    #[test]
    fn coloured_edges() {
        let t = parse_tree_text("# path\n1 2 0\n2 3 1\n").unwrap();
        assert_eq!(t.vertex_count(), 3);
        assert_ne!(t.part_of(1, 0), t.part_of(1, 1));
    }

    #[test]
    fn uncoloured_edges_are_uniform() {
        let t = parse_tree_text("1 2\n2 3\n").unwrap();
        assert_eq!(t.part_of(1, 0), Some(Part::A));
        assert_eq!(t.part_of(1, 1), Some(Part::A));
    }

    #[test]
    fn part_lines_override() {
        let t = parse_tree_text("1 2\n2 3\npart 2: 1 | 3\n").unwrap();
        assert_eq!(t.part_of(1, 0), Some(Part::A));
        assert_eq!(t.part_of(1, 1), Some(Part::B));
    }

    #[test]
    fn lone_vertex() {
        let t = parse_tree_text("5\n").unwrap();
        assert_eq!(t.vertex_count(), 1);
    }

    #[test]
    fn mixed_colouring_is_rejected() {
        assert_eq!(parse_tree_text("1 2 0\n2 3\n"), Err(TreeError::Uncoloured(1)));
    }

    #[test]
    fn bad_lines_report_line_numbers() {
        assert!(matches!(parse_tree_text("1 2 0\n\nx y\n"), Err(TreeError::Parse { line: 3, .. })));
        assert!(matches!(parse_tree_text("1 2 7\n"), Err(TreeError::Parse { line: 1, .. })));
    }

    #[test]
    fn write_then_parse_preserves_the_class() {
        let t = parse_tree_text("1 2\n2 3\n2 4\npart 2: 1 3 | 4\n").unwrap();
        let c = compatible_bicolouring(&t);
        let back = parse_tree_text(&write_tree_text(t.tree(), &c)).unwrap();
        assert!(back.eq_up_to_swaps(&t));
        assert!(is_isomorphic(&back, &t));
    }
}
