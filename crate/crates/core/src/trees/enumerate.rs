use std::collections::BTreeMap;

use super::{canonical_code, Bipartition, LBTree, Part, Tree, VertexId};

fn attach_leaf(t: &LBTree, w: usize, part: Part) -> LBTree {
    let tree = t.tree();
    let new_id = tree.vertex_count() as VertexId;
    let mut edges: Vec<(VertexId, VertexId)> = (0..tree.edge_count()).map(|e| tree.edge_ids(e)).collect();
    let e = edges.len();
    edges.push((tree.id(w), new_id));
    let grown = Tree::new(tree.ids().iter().copied().chain([new_id]), edges).expect("leaf extension");
    let mut parts: Vec<Bipartition> = t.parts().to_vec();
    match part {
        Part::A => parts[w].a.insert(e),
        Part::B => parts[w].b.insert(e),
    };
    parts.push(Bipartition::new([e], []));
    LBTree::from_parts_unchecked(grown, parts)
}

/// One representative per isomorphism class of locally bipartitioned trees
/// on `k` vertices (ids `0..k`), ordered by canonical code.
///
/// Every tree with at least two vertices has a leaf whose removal leaves a
/// smaller representative, so growing each class by one leaf in every
/// possible position and deduplicating reaches every class.
pub fn enumerate_lbtrees(k: usize) -> impl Iterator<Item = LBTree> {
    let mut level: Vec<LBTree> = if k == 0 { Vec::new() } else { vec![LBTree::single_vertex(0)] };
    for _ in 1..k {
        let mut classes: BTreeMap<Vec<u8>, LBTree> = BTreeMap::new();
        for t in &level {
            for w in 0..t.vertex_count() {
                for part in [Part::A, Part::B] {
                    let g = attach_leaf(t, w, part);
                    classes.entry(canonical_code(&g)).or_insert(g);
                }
            }
        }
        level = classes.into_values().collect();
    }
    level.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_lbtrees(0).count(), 0);
        assert_eq!(enumerate_lbtrees(1).count(), 1);
        assert_eq!(enumerate_lbtrees(2).count(), 1);
    }

    #[test]
    fn output_is_valid_and_deterministic() {
        let a: Vec<LBTree> = enumerate_lbtrees(5).collect();
        let b: Vec<LBTree> = enumerate_lbtrees(5).collect();
        assert_eq!(a, b);
        for t in &a {
            assert!(crate::trees::validate_lbtree(t).is_ok());
        }
    }
}
