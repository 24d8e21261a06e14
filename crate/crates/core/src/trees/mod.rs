//! Finite trees whose vertices carry a bipartition of their incident edges.
//!
//! Vertices carry arbitrary `u32` ids but are addressed internally by their
//! dense index in ascending id order, so "lowest id" and "lowest index"
//! coincide. Edge ids are positions in the edge list.

mod bicolour;
mod canon;
mod enumerate;
pub mod random;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::unionfind::UnionFind;

pub use bicolour::{bipartitions_from_bicolouring, compatible_bicolouring, leaf_strip_order};
pub use canon::{canonical_code, canonical_hex, is_isomorphic};
pub use enumerate::enumerate_lbtrees;
pub use text::{parse_tree_text, write_tree_text};

pub type VertexId = u32;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {0} listed twice")]
    DuplicateVertex(VertexId),
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    #[error("invalid tree: {0}")]
    NotATree(TreeViolation),
    #[error("edge {0} has no colour")]
    Uncoloured(EdgeId),
    #[error("edge {edge} has colour {colour}, expected 0 or 1")]
    BadColour { edge: EdgeId, colour: u8 },
    #[error("colour assigned to unknown edge {0}")]
    ForeignColour(EdgeId),
    #[error("invalid local bipartitions: {0}")]
    InvalidBipartitions(ValidationReport),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A structural defect that keeps an edge list from being a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeViolation {
    SelfLoop { edge: EdgeId, vertex: VertexId },
    ParallelEdge { edge: EdgeId, first: EdgeId },
    Disconnected { vertex: VertexId },
    EdgeCount { vertices: usize, edges: usize },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SelfLoop { edge, vertex } => write!(f, "edge {edge} is a loop at vertex {vertex}"),
            Self::ParallelEdge { edge, first } => write!(f, "edge {edge} duplicates edge {first}"),
            Self::Disconnected { vertex } => write!(f, "vertex {vertex} is not reachable"),
            Self::EdgeCount { vertices, edges } => {
                write!(f, "{edges} edges on {vertices} vertices (expected {})", vertices.saturating_sub(1))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct Tree {
    ids: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    incidence: Vec<Vec<EdgeId>>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl TryFrom<TreeRepr> for Tree {
    type Error = TreeError;
    fn try_from(r: TreeRepr) -> Result<Self, Self::Error> {
        Tree::new(r.vertices, r.edges)
    }
}

impl From<Tree> for TreeRepr {
    fn from(t: Tree) -> Self {
        TreeRepr { edges: (0..t.edge_count()).map(|e| t.edge_ids(e)).collect(), vertices: t.ids }
    }
}

impl Tree {
    /// Builds a tree from vertex ids and edges given by endpoint ids.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, TreeError> {
        let t = Self::new_unchecked(vertices, edges)?;
        if let Some(v) = t.structural_violations().into_iter().next() {
            return Err(TreeError::NotATree(v));
        }
        Ok(t)
    }

    /// Like [`Tree::new`] but only resolves ids; the result may contain
    /// cycles, loops or parallel edges. Used to build diagnostic inputs.
    pub fn new_unchecked(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, TreeError> {
        let mut ids: Vec<VertexId> = vertices.into_iter().collect();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(TreeError::DuplicateVertex(w[0]));
            }
        }
        if ids.is_empty() {
            return Err(TreeError::Empty);
        }
        let mut dense = Vec::new();
        for (e, (u, v)) in edges.into_iter().enumerate() {
            let find = |x: VertexId| ids.binary_search(&x).map_err(|_| TreeError::UnknownVertex { edge: e, vertex: x });
            dense.push((find(u)?, find(v)?));
        }
        let mut incidence = vec![Vec::new(); ids.len()];
        for (e, &(u, v)) in dense.iter().enumerate() {
            incidence[u].push(e);
            if v != u {
                incidence[v].push(e);
            }
        }
        Ok(Self { ids, edges: dense, incidence })
    }

    /// Builds a tree whose vertex set is exactly the endpoints of `edges`.
    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Result<Self, TreeError> {
        let vs: BTreeSet<VertexId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Self::new(vs, edges.iter().copied())
    }

    pub fn singleton(id: VertexId) -> Self {
        Self { ids: vec![id], edges: Vec::new(), incidence: vec![Vec::new()] }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        assert!(n > 0, "path needs a vertex");
        let n = n as VertexId;
        Self::new(0..n, (1..n).map(|i| (i - 1, i))).expect("path is a tree")
    }

    /// Star with centre 0 and leaves `1..n`.
    pub fn star(n: usize) -> Self {
        assert!(n > 0, "star needs a vertex");
        let n = n as VertexId;
        Self::new(0..n, (1..n).map(|i| (0, i))).expect("star is a tree")
    }

    pub fn structural_violations(&self) -> Vec<TreeViolation> {
        let mut out = Vec::new();
        let mut seen: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                out.push(TreeViolation::SelfLoop { edge: e, vertex: self.ids[u] });
                continue;
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                out.push(TreeViolation::ParallelEdge { edge: e, first });
            } else {
                seen.insert(key, e);
            }
        }
        if self.edges.len() + 1 != self.ids.len() {
            out.push(TreeViolation::EdgeCount { vertices: self.ids.len(), edges: self.edges.len() });
        }
        let mut uf = UnionFind::new(self.ids.len());
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        for v in 1..self.ids.len() {
            if !uf.same(0, v) {
                out.push(TreeViolation::Disconnected { vertex: self.ids[v] });
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> VertexId {
        self.ids[v]
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    /// Endpoints of `e` as dense indices, in stored order.
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_ids(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (u, v) = self.edges[e];
        (self.ids[u], self.ids[v])
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn other_end(&self, e: EdgeId, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        self.incidence[u].iter().copied().find(|&e| self.other_end(e, u) == v)
    }

    /// Returns the same tree with vertex ids replaced via `f`, which must be
    /// injective. Edge ids are preserved.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Self, TreeError> {
        Tree::new(
            self.ids.iter().map(|&v| f(v)),
            (0..self.edge_count()).map(|e| {
                let (u, v) = self.edge_ids(e);
                (f(u), f(v))
            }),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Part {
    A,
    B,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::A => Part::B,
            Part::B => Part::A,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Part::A => 'A',
            Part::B => 'B',
        }
    }
}

/// The local bipartition `(A_v, B_v)` at a single vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub a: BTreeSet<EdgeId>,
    pub b: BTreeSet<EdgeId>,
}

impl Bipartition {
    pub fn new(a: impl IntoIterator<Item = EdgeId>, b: impl IntoIterator<Item = EdgeId>) -> Self {
        Self { a: a.into_iter().collect(), b: b.into_iter().collect() }
    }

    pub fn get(&self, p: Part) -> &BTreeSet<EdgeId> {
        match p {
            Part::A => &self.a,
            Part::B => &self.b,
        }
    }

    pub fn part_of(&self, e: EdgeId) -> Option<Part> {
        if self.a.contains(&e) {
            Some(Part::A)
        } else if self.b.contains(&e) {
            Some(Part::B)
        } else {
            None
        }
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b.clone(), b: self.a.clone() }
    }

    /// Equality of the unordered pair `{A, B}`.
    pub fn eq_up_to_swap(&self, other: &Self) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }
}

/// A locally bipartitioned tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LBTree {
    tree: Tree,
    parts: Vec<Bipartition>,
}

impl LBTree {
    /// Checked constructor; `parts[v]` belongs to the vertex with dense
    /// index `v`.
    pub fn new(tree: Tree, parts: Vec<Bipartition>) -> Result<Self, TreeError> {
        let t = Self::from_parts_unchecked(tree, parts);
        let report = validate_lbtree(&t);
        if report.is_ok() {
            Ok(t)
        } else {
            Err(TreeError::InvalidBipartitions(report))
        }
    }

    pub fn from_parts_unchecked(tree: Tree, parts: Vec<Bipartition>) -> Self {
        Self { tree, parts }
    }

    /// Every edge in part A at both of its endpoints.
    pub fn uniform(tree: Tree) -> Self {
        let parts = (0..tree.vertex_count()).map(|v| Bipartition::new(tree.incident(v).iter().copied(), [])).collect();
        Self { tree, parts }
    }

    pub fn single_vertex(id: VertexId) -> Self {
        Self::uniform(Tree::singleton(id))
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn parts(&self) -> &[Bipartition] {
        &self.parts
    }

    pub fn bipartition(&self, v: usize) -> &Bipartition {
        &self.parts[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    /// `π_v(e)`: which part at `v` contains `e`.
    pub fn part_of(&self, v: usize, e: EdgeId) -> Option<Part> {
        self.parts.get(v).and_then(|p| p.part_of(e))
    }

    /// Equality with independent per-vertex swaps allowed.
    pub fn eq_up_to_swaps(&self, other: &Self) -> bool {
        self.tree == other.tree
            && self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(x, y)| x.eq_up_to_swap(y))
    }

    /// Same structure with vertex ids mapped through the injective `f`.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Self, TreeError> {
        let tree = self.tree.relabel(&f)?;
        let mut parts = vec![Bipartition::default(); tree.vertex_count()];
        for v in 0..self.tree.vertex_count() {
            let nv = tree.index_of(f(self.tree.id(v))).expect("relabelled vertex");
            parts[nv] = self.parts[v].clone();
        }
        Ok(Self { tree, parts })
    }

    /// Restricts to the tree with vertex `leaf` and its single edge removed.
    /// Edge ids above the removed one shift down by one.
    pub fn without_leaf(&self, leaf: usize) -> Self {
        let e = self.tree.incident(leaf)[0];
        let ids: Vec<VertexId> = self.tree.ids.iter().copied().filter(|&x| x != self.tree.id(leaf)).collect();
        let edges: Vec<(VertexId, VertexId)> =
            (0..self.tree.edge_count()).filter(|&f| f != e).map(|f| self.tree.edge_ids(f)).collect();
        let tree = Tree::new(ids, edges).expect("removing a leaf keeps a tree");
        let shift = |f: EdgeId| if f > e { f - 1 } else { f };
        let parts = (0..self.tree.vertex_count())
            .filter(|&v| v != leaf)
            .map(|v| {
                let p = &self.parts[v];
                Bipartition::new(
                    p.a.iter().filter(|&&f| f != e).map(|&f| shift(f)),
                    p.b.iter().filter(|&&f| f != e).map(|&f| shift(f)),
                )
            })
            .collect();
        Self { tree, parts }
    }
}

/// One violated [`LBTree`] invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Structure(TreeViolation),
    PartCount { expected: usize, found: usize },
    Overlap { vertex: VertexId, edge: EdgeId },
    Uncovered { vertex: VertexId, edge: EdgeId },
    NotIncident { vertex: VertexId, edge: EdgeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Structure(v) => write!(f, "{v}"),
            Self::PartCount { expected, found } => {
                write!(f, "{found} bipartitions for {expected} vertices")
            }
            Self::Overlap { vertex, edge } => {
                write!(f, "non-disjoint parts at {vertex}: edge {edge} in both")
            }
            Self::Uncovered { vertex, edge } => write!(f, "edge {edge} missing from the parts at {vertex}"),
            Self::NotIncident { vertex, edge } => {
                write!(f, "edge {edge} listed at {vertex} but not incident to it")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let items: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", items.join("; "))
    }
}

pub fn validate_lbtree(t: &LBTree) -> ValidationReport {
    let tree = &t.tree;
    let mut violations: Vec<Violation> = tree.structural_violations().into_iter().map(Violation::Structure).collect();
    if t.parts.len() != tree.vertex_count() {
        violations.push(Violation::PartCount { expected: tree.vertex_count(), found: t.parts.len() });
        return ValidationReport { violations };
    }
    for v in 0..tree.vertex_count() {
        let id = tree.id(v);
        let p = &t.parts[v];
        let incident: BTreeSet<EdgeId> = tree.incident(v).iter().copied().collect();
        for &e in p.a.intersection(&p.b) {
            violations.push(Violation::Overlap { vertex: id, edge: e });
        }
        for &e in p.a.union(&p.b) {
            if !incident.contains(&e) {
                violations.push(Violation::NotIncident { vertex: id, edge: e });
            }
        }
        for &e in &incident {
            if p.part_of(e).is_none() {
                violations.push(Violation::Uncovered { vertex: id, edge: e });
            }
        }
    }
    ValidationReport { violations }
}

/// An edge colouring `E(T) -> {0, 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicolouring {
    pub colour: BTreeMap<EdgeId, u8>,
}

impl Bicolouring {
    pub fn from_slice(colours: &[u8]) -> Self {
        Self { colour: colours.iter().copied().enumerate().collect() }
    }

    pub fn get(&self, e: EdgeId) -> Option<u8> {
        self.colour.get(&e).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Tree {
        Tree::new([1, 2, 3], [(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn single_vertex_with_empty_parts_is_valid() {
        let t = LBTree::new(Tree::singleton(7), vec![Bipartition::default()]).unwrap();
        assert!(validate_lbtree(&t).is_ok());
    }

    #[test]
    fn forced_split_on_path_is_valid() {
        let parts = vec![Bipartition::new([0], []), Bipartition::new([0], [1]), Bipartition::new([], [1])];
        assert!(LBTree::new(path3(), parts).is_ok());
    }

    #[test]
    fn overlapping_parts_are_reported() {
        let parts = vec![Bipartition::new([0], []), Bipartition::new([0, 1], [0]), Bipartition::new([1], [])];
        let t = LBTree::from_parts_unchecked(path3(), parts);
        let report = validate_lbtree(&t);
        assert_eq!(report.violations, vec![Violation::Overlap { vertex: 2, edge: 0 }]);
    }

    #[test]
    fn missing_and_foreign_edges_are_reported() {
        let parts = vec![Bipartition::new([], []), Bipartition::new([0, 1], []), Bipartition::new([0, 1], [])];
        let report = validate_lbtree(&LBTree::from_parts_unchecked(path3(), parts));
        assert!(report.violations.contains(&Violation::Uncovered { vertex: 1, edge: 0 }));
        assert!(report.violations.contains(&Violation::NotIncident { vertex: 3, edge: 0 }));
    }

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(
            Tree::new([0, 1, 2], [(0, 1), (1, 0)]),
            Err(TreeError::NotATree(TreeViolation::ParallelEdge { .. }))
        ));
        assert!(matches!(Tree::new([0, 1], [(0, 0)]), Err(TreeError::NotATree(_))));
        assert!(matches!(Tree::new([0, 1, 2, 3], [(0, 1), (2, 3)]), Err(TreeError::NotATree(_))));
        assert!(matches!(Tree::new([0, 1], [(0, 5)]), Err(TreeError::UnknownVertex { edge: 0, vertex: 5 })));
    }

    #[test]
    fn serde_uses_vertex_ids() {
        let t = path3();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"vertices":[1,2,3],"edges":[[1,2],[2,3]]}"#);
        let back: Tree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn removing_a_leaf_renumbers_edges() {
        let t = LBTree::uniform(Tree::path(4));
        let r = t.without_leaf(0);
        assert_eq!(r.tree().ids(), &[1, 2, 3]);
        assert_eq!(r.tree().edge_count(), 2);
        assert!(validate_lbtree(&r).is_ok());
    }
}
