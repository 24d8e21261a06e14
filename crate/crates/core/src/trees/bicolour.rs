use std::collections::BTreeSet;

use super::{Bicolouring, Bipartition, EdgeId, LBTree, Tree, TreeError};

/// Local bipartitions induced by an edge colouring: colour 0 goes to `A_v`,
/// colour 1 to `B_v`.
pub fn bipartitions_from_bicolouring(t: &Tree, c: &Bicolouring) -> Result<LBTree, TreeError> {
    if let Some((&e, _)) = c.colour.iter().find(|(&e, _)| e >= t.edge_count()) {
        return Err(TreeError::ForeignColour(e));
    }
    let mut colours = Vec::with_capacity(t.edge_count());
    for e in 0..t.edge_count() {
        match c.get(e) {
            None => return Err(TreeError::Uncoloured(e)),
            Some(x) if x > 1 => return Err(TreeError::BadColour { edge: e, colour: x }),
            Some(x) => colours.push(x),
        }
    }
    let parts = (0..t.vertex_count())
        .map(|v| {
            let inc = t.incident(v);
            Bipartition::new(
                inc.iter().copied().filter(|&e| colours[e] == 0),
                inc.iter().copied().filter(|&e| colours[e] == 1),
            )
        })
        .collect();
    Ok(LBTree::from_parts_unchecked(t.clone(), parts))
}

/// One step of leaf stripping: `leaf` hangs off `neighbour` via `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeafStep {
    pub leaf: usize,
    pub edge: EdgeId,
    pub neighbour: usize,
}

/// Strips the lowest-index leaf of the remaining tree until one vertex is
/// left. Returns the steps in stripping order and the surviving vertex.
pub fn leaf_strip_order(t: &Tree) -> (Vec<LeafStep>, usize) {
    let n = t.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    while steps.len() + 1 < n {
        let leaf = leaves.pop_first().expect("a tree with two or more vertices has a leaf");
        let edge = t
            .incident(leaf)
            .iter()
            .copied()
            .find(|&e| !removed[t.other_end(e, leaf)])
            .expect("leaf keeps one live edge");
        let neighbour = t.other_end(edge, leaf);
        removed[leaf] = true;
        degree[neighbour] -= 1;
        if degree[neighbour] == 1 {
            leaves.insert(neighbour);
        }
        steps.push(LeafStep { leaf, edge, neighbour });
    }
    let root = (0..n).find(|&v| !removed[v]).expect("one vertex survives");
    (steps, root)
}

/// A bicolouring inducing the local bipartitions of `t`, each up to swapping
/// `(A_v, B_v)`.
///
/// Leaves are stripped lowest index first; edges are then coloured in
/// reverse order, each one matching the colour already used by its part at
/// the inner endpoint, or opposite to the other part, or 0 when the inner
/// endpoint has no coloured edge yet.
///
/// # Panics
///
/// On an invalid `t`, or if the induction ever meets an inconsistent
/// colouring (which would be a bug).
pub fn compatible_bicolouring(t: &LBTree) -> Bicolouring {
    let report = super::validate_lbtree(t);
    assert!(report.is_ok(), "compatible_bicolouring needs a valid tree: {report}");
    let tree = t.tree();
    let (steps, _) = leaf_strip_order(tree);
    let mut colour: Vec<Option<u8>> = vec![None; tree.edge_count()];
    for step in steps.iter().rev() {
        let part = t.part_of(step.neighbour, step.edge).expect("validated");
        let mut forced: Option<u8> = None;
        for &f in tree.incident(step.neighbour) {
            let Some(c) = colour[f] else { continue };
            let want = if t.part_of(step.neighbour, f) == Some(part) { c } else { 1 - c };
            match forced {
                None => forced = Some(want),
                Some(prev) if prev != want => panic!(
                    "inconsistent colouring at vertex {} while adding edge {}",
                    tree.id(step.neighbour),
                    step.edge
                ),
                _ => {}
            }
        }
        colour[step.edge] = Some(forced.unwrap_or(0));
    }
    Bicolouring {
        colour: colour.into_iter().enumerate().map(|(e, c)| (e, c.expect("every edge is stripped once"))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::random::random_lbtree;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn star_colouring_unfolds() {
        let t = Tree::star(4);
        let lb = bipartitions_from_bicolouring(&t, &Bicolouring::from_slice(&[0, 0, 1])).unwrap();
        assert_eq!(lb.bipartition(0), &Bipartition::new([0, 1], [2]));
    }

    #[test]
    fn uniform_colouring_gives_trivial_parts() {
        let t = Tree::path(5);
        let lb = bipartitions_from_bicolouring(&t, &Bicolouring::from_slice(&[0; 4])).unwrap();
        for v in 0..5 {
            assert!(lb.bipartition(v).b.is_empty());
            assert_eq!(lb.bipartition(v).a.len(), t.degree(v));
        }
    }

    #[test]
    fn alternating_colours_split_internal_vertices() {
        let t = Tree::path(4);
        let lb = bipartitions_from_bicolouring(&t, &Bicolouring::from_slice(&[0, 1, 0])).unwrap();
        for v in 1..3 {
            assert_eq!(lb.bipartition(v).a.len(), 1);
            assert_eq!(lb.bipartition(v).b.len(), 1);
        }
    }

    #[test]
    fn partial_colouring_names_the_edge() {
        let t = Tree::path(4);
        let mut c = Bicolouring::from_slice(&[0, 1, 0]);
        c.colour.remove(&1);
        assert_eq!(bipartitions_from_bicolouring(&t, &c), Err(TreeError::Uncoloured(1)));
    }

    #[test]
    fn single_edge_gets_colour_zero() {
        let t = LBTree::uniform(Tree::path(2));
        assert_eq!(compatible_bicolouring(&t), Bicolouring::from_slice(&[0]));
    }

    #[test]
    fn split_vertex_forces_different_colours() {
        let parts = vec![Bipartition::new([0], []), Bipartition::new([0], [1]), Bipartition::new([1], [])];
        let t = LBTree::new(Tree::path(3), parts).unwrap();
        let c = compatible_bicolouring(&t);
        assert_ne!(c.get(0), c.get(1));
    }

    #[test]
    fn random_round_trip_on_twelve_vertices() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..50 {
            let t = random_lbtree(&mut rng, 12);
            let c = compatible_bicolouring(&t);
            let back = bipartitions_from_bicolouring(t.tree(), &c).unwrap();
            // exhaustive per-vertex comparison up to swap
            for v in 0..12 {
                assert!(back.bipartition(v).eq_up_to_swap(t.bipartition(v)), "vertex {v}");
            }
        }
    }

    #[test]
    fn strip_order_takes_lowest_leaf() {
        let (steps, root) = leaf_strip_order(&Tree::star(4));
        let leaves: Vec<usize> = steps.iter().map(|s| s.leaf).collect();
        assert_eq!(leaves, vec![1, 2, 0]);
        assert_eq!(root, 3);
    }
}
