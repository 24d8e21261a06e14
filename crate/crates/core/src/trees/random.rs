//! Random trees for property tests and benchmarks.

use rand::Rng;

use super::{Bipartition, LBTree, Tree, VertexId};

/// Uniform labelled tree on ids `0..k` via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Tree {
    assert!(k > 0, "random_tree needs k >= 1");
    if k == 1 {
        return Tree::singleton(0);
    }
    let seq: Vec<usize> = (0..k - 2).map(|_| rng.gen_range(0..k)).collect();
    let mut degree = vec![1usize; k];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    let mut leaves: std::collections::BTreeSet<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    for &x in &seq {
        let leaf = leaves.pop_first().expect("Prüfer decoding");
        edges.push((leaf as VertexId, x as VertexId));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0] as VertexId, rest[1] as VertexId));
    Tree::new(0..k as VertexId, edges).expect("Prüfer sequences decode to trees")
}

/// Random tree with every incident edge independently assigned to `A_v` or
/// `B_v` at each endpoint.
pub fn random_lbtree<R: Rng + ?Sized>(rng: &mut R, k: usize) -> LBTree {
    let tree = random_tree(rng, k);
    let parts = (0..tree.vertex_count())
        .map(|v| {
            let mut p = Bipartition::default();
            for &e in tree.incident(v) {
                if rng.gen_bool(0.5) {
                    p.a.insert(e);
                } else {
                    p.b.insert(e);
                }
            }
            p
        })
        .collect();
    LBTree::from_parts_unchecked(tree, parts)
}
