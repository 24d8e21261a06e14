//! AHU-style canonical codes for locally bipartitioned trees.
//!
//! A non-root vertex is encoded as `(` + sorted codes of the children in the
//! part holding the parent edge + `|` + sorted codes of the other children
//! + `)`. Fixing the parent side makes the code independent of the order of
//! `(A_v, B_v)`. The root has no parent edge, so its two part strings are
//! sorted and wrapped in `[` `]`. The final code is the minimum over the
//! tree's centres.

use super::{EdgeId, LBTree, Part};

fn centres(t: &LBTree) -> Vec<usize> {
    let tree = t.tree();
    let n = tree.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &e in tree.incident(v) {
                let w = tree.other_end(e, v);
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn subtree_code(t: &LBTree, v: usize, parent_edge: EdgeId) -> Vec<u8> {
    let tree = t.tree();
    let parent_part = t.part_of(v, parent_edge).expect("valid tree");
    let mut same = Vec::new();
    let mut other = Vec::new();
    for &e in tree.incident(v) {
        if e == parent_edge {
            continue;
        }
        let code = subtree_code(t, tree.other_end(e, v), e);
        if t.part_of(v, e) == Some(parent_part) {
            same.push(code);
        } else {
            other.push(code);
        }
    }
    same.sort_unstable();
    other.sort_unstable();
    let mut out = vec![b'('];
    out.extend(same.concat());
    out.push(b'|');
    out.extend(other.concat());
    out.push(b')');
    out
}

fn rooted_code(t: &LBTree, root: usize) -> Vec<u8> {
    let tree = t.tree();
    let mut sides: [Vec<Vec<u8>>; 2] = [Vec::new(), Vec::new()];
    for &e in tree.incident(root) {
        let code = subtree_code(t, tree.other_end(e, root), e);
        let slot = match t.part_of(root, e).expect("valid tree") {
            Part::A => 0,
            Part::B => 1,
        };
        sides[slot].push(code);
    }
    let mut parts: Vec<Vec<u8>> = sides
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.concat()
        })
        .collect();
    parts.sort_unstable();
    let mut out = vec![b'['];
    out.extend(&parts[0]);
    out.push(b'|');
    out.extend(&parts[1]);
    out.push(b']');
    out
}

/// Canonical byte string: equal for two trees iff they are isomorphic by a
/// tree isomorphism carrying each `{A_v, B_v}` onto the image bipartition.
///
/// # Panics
///
/// If some incident edge is missing from the local bipartition.
pub fn canonical_code(t: &LBTree) -> Vec<u8> {
    centres(t).into_iter().map(|c| rooted_code(t, c)).min().expect("a tree has a centre")
}

/// [`canonical_code`] as lowercase hex.
pub fn canonical_hex(t: &LBTree) -> String {
    canonical_code(t).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn is_isomorphic(a: &LBTree, b: &LBTree) -> bool {
    a.vertex_count() == b.vertex_count() && canonical_code(a) == canonical_code(b)
}
