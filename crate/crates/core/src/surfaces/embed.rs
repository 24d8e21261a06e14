use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ImmersedSurface, Slot, SurfaceError, SurfaceKind};
use crate::links::{associated_link, slot_label, LinkDiagram};
use crate::trees::{leaf_strip_order, validate_lbtree, Bipartition, EdgeId, LBTree, Part, Tree, VertexId};
use crate::unionfind::UnionFind;

/// Where a tree edge runs: the slot (0 or 1) it leaves from at each
/// endpoint, in the order of the tree's edge endpoints, and the domain
/// component carrying it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeAssignment {
    pub sides: [u8; 2],
    pub carrier: usize,
}

/// A locally bipartitioned tree placed on an immersed surface: vertex `v`
/// (dense index) sits on double point `vertex_map[v]`, edge `e` is
/// described by `edge_map[e]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuitableEmbedding {
    pub target: ImmersedSurface,
    pub tree: LBTree,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<EdgeAssignment>,
}

impl SuitableEmbedding {
    /// Slot chosen by edge `e` at its endpoint `v`.
    pub fn side_at(&self, e: EdgeId, v: usize) -> u8 {
        let (a, _) = self.tree.tree().endpoints(e);
        self.edge_map[e].sides[if a == v { 0 } else { 1 }]
    }

    pub fn slot(&self, v: usize, side: u8) -> Slot {
        self.target.double_points[self.vertex_map[v]].slots[side as usize]
    }

    /// The part of `Π_v` realised by slot `side` at `v`. A slot used by no
    /// edge takes the part opposite to the used one; at an isolated vertex
    /// slot 0 is `A`.
    pub fn part_of_side(&self, v: usize, side: u8) -> Part {
        let tree = self.tree.tree();
        if let Some(&f) = tree.incident(v).first() {
            let part = self.tree.part_of(v, f).expect("verified tree");
            return if self.side_at(f, v) == side { part } else { part.other() };
        }
        if side == 0 {
            Part::A
        } else {
            Part::B
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbeddingViolation {
    InvalidTree { detail: String },
    VertexMapLength { expected: usize, found: usize },
    EdgeMapLength { expected: usize, found: usize },
    UnknownDoublePoint { vertex: VertexId, double_point: usize },
    NotInjective { double_point: usize, vertices: (VertexId, VertexId) },
    BadSide { edge: EdgeId },
    UnknownCarrier { edge: EdgeId, carrier: usize },
    SamePartDifferentSlots { vertex: VertexId, edges: (EdgeId, EdgeId) },
    DifferentPartsSameSlot { vertex: VertexId, edges: (EdgeId, EdgeId) },
    CarrierMismatch { edge: EdgeId, vertex: VertexId, component: usize, carrier: usize },
    LiftCycle { edge: EdgeId },
    Uncovered { mapped: usize, double_points: usize },
    NotContractible { component: usize, double_points: usize, edges: usize },
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidTree { detail } => write!(f, "tree invalid: {detail}"),
            Self::VertexMapLength { expected, found } => {
                write!(f, "vertex map has {found} entries, expected {expected}")
            }
            Self::EdgeMapLength { expected, found } => write!(f, "edge map has {found} entries, expected {expected}"),
            Self::UnknownDoublePoint { vertex, double_point } => {
                write!(f, "vertex {vertex} maps to missing double point {double_point}")
            }
            Self::NotInjective { double_point, vertices } => {
                write!(f, "vertices {} and {} share double point {double_point}", vertices.0, vertices.1)
            }
            Self::BadSide { edge } => write!(f, "edge {edge} names a slot other than 0 or 1"),
            Self::UnknownCarrier { edge, carrier } => {
                write!(f, "edge {edge} is carried by missing component {carrier}")
            }
            Self::SamePartDifferentSlots { vertex, edges } => {
                write!(f, "edges {} and {} share a part at vertex {vertex} but use different slots", edges.0, edges.1)
            }
            Self::DifferentPartsSameSlot { vertex, edges } => {
                write!(
                    f,
                    "edges {} and {} lie in different parts at vertex {vertex} but use the same slot",
                    edges.0, edges.1
                )
            }
            Self::CarrierMismatch { edge, vertex, component, carrier } => {
                write!(f, "edge {edge} leaves vertex {vertex} on component {component}, not on its carrier {carrier}")
            }
            Self::LiftCycle { edge } => write!(f, "edge {edge} closes a cycle in the lift"),
            Self::Uncovered { mapped, double_points } => {
                write!(f, "tree covers {mapped} of {double_points} plumbing double points")
            }
            Self::NotContractible { component, double_points, edges } => write!(
                f,
                "component {component} meets the tree in {double_points} double points and {edges} edges, not in a tree"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub violations: Vec<EmbeddingViolation>,
}

impl EmbeddingReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("pass");
        }
        let items: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&items.join("; "))
    }
}

/// Checks slot consistency, carriers, injectivity and acyclicity of the
/// lift; for plumbing targets also that every double point is covered and
/// each component meets the tree in a (nonempty) subtree.
pub fn verify_embedding(e: &SuitableEmbedding) -> EmbeddingReport {
    let mut out = Vec::new();
    let tree = e.tree.tree();
    let k = tree.vertex_count();
    let m = e.target.double_point_count();
    if e.vertex_map.len() != k {
        out.push(EmbeddingViolation::VertexMapLength { expected: k, found: e.vertex_map.len() });
    }
    if e.edge_map.len() != tree.edge_count() {
        out.push(EmbeddingViolation::EdgeMapLength { expected: tree.edge_count(), found: e.edge_map.len() });
    }
    if !out.is_empty() {
        return EmbeddingReport { violations: out };
    }
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, &dp) in e.vertex_map.iter().enumerate() {
        if dp >= m {
            out.push(EmbeddingViolation::UnknownDoublePoint { vertex: tree.id(v), double_point: dp });
        } else if let Some(&u) = owner.get(&dp) {
            out.push(EmbeddingViolation::NotInjective { double_point: dp, vertices: (tree.id(u), tree.id(v)) });
        } else {
            owner.insert(dp, v);
        }
    }
    for (i, a) in e.edge_map.iter().enumerate() {
        if a.sides.iter().any(|&s| s > 1) {
            out.push(EmbeddingViolation::BadSide { edge: i });
        }
        if a.carrier >= e.target.component_count() {
            out.push(EmbeddingViolation::UnknownCarrier { edge: i, carrier: a.carrier });
        }
    }
    if !out.is_empty() {
        return EmbeddingReport { violations: out };
    }
    let tree_report = validate_lbtree(&e.tree);
    if !tree_report.is_ok() {
        out.push(EmbeddingViolation::InvalidTree { detail: tree_report.to_string() });
    }

    for v in 0..k {
        let inc = tree.incident(v);
        for (i, &f) in inc.iter().enumerate() {
            for &g in &inc[i + 1..] {
                let same_part = e.tree.part_of(v, f) == e.tree.part_of(v, g);
                let same_slot = e.side_at(f, v) == e.side_at(g, v);
                if same_part && !same_slot {
                    out.push(EmbeddingViolation::SamePartDifferentSlots { vertex: tree.id(v), edges: (f, g) });
                } else if !same_part && same_slot {
                    out.push(EmbeddingViolation::DifferentPartsSameSlot { vertex: tree.id(v), edges: (f, g) });
                }
            }
        }
    }
    for f in 0..tree.edge_count() {
        let (a, b) = tree.endpoints(f);
        let carrier = e.edge_map[f].carrier;
        for v in [a, b] {
            let component = e.slot(v, e.side_at(f, v)).component;
            if component != carrier {
                out.push(EmbeddingViolation::CarrierMismatch { edge: f, vertex: tree.id(v), component, carrier });
            }
        }
    }
    let mut lift = UnionFind::new(2 * k);
    for f in 0..tree.edge_count() {
        let (a, b) = tree.endpoints(f);
        let sides = e.edge_map[f].sides;
        if !lift.union(2 * a + sides[0] as usize, 2 * b + sides[1] as usize) {
            out.push(EmbeddingViolation::LiftCycle { edge: f });
        }
    }

    if e.target.kind == SurfaceKind::Plumbing {
        if k != m {
            out.push(EmbeddingViolation::Uncovered { mapped: k, double_points: m });
        }
        for c in 0..e.target.component_count() {
            let on_c: Vec<usize> = (0..k)
                .filter(|&v| e.target.double_points[e.vertex_map[v]].slots.iter().any(|s| s.component == c))
                .collect();
            let carried: Vec<EdgeId> = (0..tree.edge_count()).filter(|&f| e.edge_map[f].carrier == c).collect();
            let mut uf = UnionFind::new(k);
            for &f in &carried {
                let (a, b) = tree.endpoints(f);
                uf.union(a, b);
            }
            let connected = on_c.windows(2).all(|w| uf.same(w[0], w[1]));
            if on_c.is_empty() || carried.len() + 1 != on_c.len() || !connected {
                out.push(EmbeddingViolation::NotContractible {
                    component: c,
                    double_points: on_c.len(),
                    edges: carried.len(),
                });
            }
        }
    }
    EmbeddingReport { violations: out }
}

/// Preimage of the embedded tree in the domain: one node per slot of a
/// mapped double point (node `2v + side`), one link per tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftForest {
    pub nodes: usize,
    pub links: Vec<(usize, usize)>,
    /// Node sets of the connected components, ordered by smallest node.
    pub components: Vec<Vec<usize>>,
}

impl LiftForest {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_acyclic(&self) -> bool {
        self.links.len() + self.components.len() == self.nodes
    }
}

pub fn lift_forest(e: &SuitableEmbedding) -> LiftForest {
    let tree = e.tree.tree();
    let nodes = 2 * tree.vertex_count();
    let mut uf = UnionFind::new(nodes);
    let mut links = Vec::with_capacity(tree.edge_count());
    for f in 0..tree.edge_count() {
        let (a, b) = tree.endpoints(f);
        let s = e.edge_map[f].sides;
        let link = (2 * a + s[0] as usize, 2 * b + s[1] as usize);
        uf.union(link.0, link.1);
        links.push(link);
    }
    LiftForest { nodes, links, components: uf.groups() }
}

/// One component of the lift with the domain component it lies on and
/// the link component it bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftComponent {
    pub nodes: Vec<usize>,
    pub carrier: usize,
    pub origins: BTreeSet<String>,
    pub link_component: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedLink {
    pub link: LinkDiagram,
    pub lift: LiftForest,
    pub pieces: Vec<LiftComponent>,
}

/// The link on the boundary of a neighbourhood of the embedded tree: the
/// associated link of the tree, with every lift component matched to the
/// link component whose origin slots it contains.
pub fn link_of_embedding(e: &SuitableEmbedding) -> Result<EmbeddedLink, SurfaceError> {
    let report = verify_embedding(e);
    if !report.is_ok() {
        return Err(SurfaceError::Unverified(report));
    }
    let link = associated_link(&e.tree);
    let lift = lift_forest(e);
    let tree = e.tree.tree();
    let mut pieces = Vec::with_capacity(lift.component_count());
    for nodes in &lift.components {
        let origins: BTreeSet<String> =
            nodes.iter().map(|&n| slot_label(tree.id(n / 2), e.part_of_side(n / 2, (n % 2) as u8))).collect();
        let comp = link
            .components()
            .iter()
            .find(|c| c.origins == origins)
            .ok_or_else(|| SurfaceError::LinkMismatch(origins.iter().cloned().collect::<Vec<_>>().join(",")))?;
        pieces.push(LiftComponent {
            carrier: e.slot(nodes[0] / 2, (nodes[0] % 2) as u8).component,
            nodes: nodes.clone(),
            origins,
            link_component: comp.label.clone(),
        });
    }
    Ok(EmbeddedLink { link, lift, pieces })
}

/// The tree and embedding of the lemma on plumbings: strip leaf surfaces
/// lowest index first; in reverse, each new double point is joined to the
/// lowest double point already on the surface it attaches to, along that
/// surface. Parts at a double point separate edges by carrying surface.
pub fn embed_in_plumbing(s: &ImmersedSurface) -> Result<(LBTree, SuitableEmbedding), SurfaceError> {
    let graph = s
        .plumbing_graph()
        .ok_or_else(|| SurfaceError::NotAPlumbing("double points do not form a tree between components".into()))?;
    if s.domain.components.iter().any(|c| c.boundary > 0) {
        return Err(SurfaceError::NotAPlumbing("plumbed surfaces must be closed".into()));
    }
    let n = graph.vertex_count();
    if n == 1 {
        return Err(SurfaceError::NoDoublePoints);
    }
    let (steps, _) = leaf_strip_order(&graph);
    let mut on: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut carriers: Vec<usize> = Vec::new();
    for step in steps.iter().rev() {
        let d = step.edge;
        if let Some(&lowest) = on[step.neighbour].first() {
            edges.push((lowest as VertexId, d as VertexId));
            carriers.push(step.neighbour);
        }
        on[step.neighbour].insert(d);
        on[step.leaf].insert(d);
    }
    let tree = Tree::new(0..(n - 1) as VertexId, edges)?;
    let side = |dp: usize, carrier: usize| -> u8 {
        let slots = s.double_points[dp].slots;
        if slots[0].component == carrier {
            0
        } else {
            1
        }
    };
    let parts: Vec<Bipartition> = (0..tree.vertex_count())
        .map(|v| {
            let inc = tree.incident(v);
            Bipartition::new(
                inc.iter().copied().filter(|&f| side(v, carriers[f]) == 0),
                inc.iter().copied().filter(|&f| side(v, carriers[f]) == 1),
            )
        })
        .collect();
    let lb = LBTree::new(tree, parts)?;
    let edge_map = (0..lb.tree().edge_count())
        .map(|f| {
            let (a, b) = lb.tree().endpoints(f);
            EdgeAssignment { sides: [side(a, carriers[f]), side(b, carriers[f])], carrier: carriers[f] }
        })
        .collect();
    let emb = SuitableEmbedding { target: s.clone(), tree: lb.clone(), vertex_map: (0..n - 1).collect(), edge_map };
    let report = verify_embedding(&emb);
    if !report.is_ok() {
        return Err(SurfaceError::Unverified(report));
    }
    Ok((lb, emb))
}

/// Embeds `t` into a surface with connected domain, following the leaf
/// induction: the last surviving vertex goes to double point 0, then each
/// leaf in reverse stripping order takes the lowest free double point,
/// leaving it on slot 0; at the inner endpoint the edge uses the slot
/// already fixed for its part, else the slot opposite the other part's,
/// else slot 0.
pub fn embed_in_connected(s: &ImmersedSurface, t: &LBTree) -> Result<SuitableEmbedding, SurfaceError> {
    if s.component_count() != 1 {
        return Err(SurfaceError::Disconnected(s.component_count()));
    }
    let tree = t.tree();
    let l = tree.vertex_count();
    if l > s.double_point_count() {
        return Err(SurfaceError::TooManyVertices { vertices: l, double_points: s.double_point_count() });
    }
    let (steps, root) = leaf_strip_order(tree);
    let mut vertex_map = vec![usize::MAX; l];
    vertex_map[root] = 0;
    let mut next_free = 1;
    let idx = |p: Part| match p {
        Part::A => 0,
        Part::B => 1,
    };
    let mut part_side: Vec<[Option<u8>; 2]> = vec![[None, None]; l];
    let mut edge_map = vec![EdgeAssignment { sides: [0, 0], carrier: 0 }; tree.edge_count()];
    for step in steps.iter().rev() {
        let (v, w, e) = (step.leaf, step.neighbour, step.edge);
        vertex_map[v] = next_free;
        next_free += 1;
        let pv = idx(t.part_of(v, e).expect("valid tree"));
        part_side[v][pv] = Some(0);
        let pw = idx(t.part_of(w, e).expect("valid tree"));
        let sw = part_side[w][pw].or(part_side[w][1 - pw].map(|s| 1 - s)).unwrap_or(0);
        part_side[w][pw] = Some(sw);
        let (a, _) = tree.endpoints(e);
        edge_map[e].sides = if a == v { [0, sw] } else { [sw, 0] };
    }
    let emb = SuitableEmbedding { target: s.clone(), tree: t.clone(), vertex_map, edge_map };
    let report = verify_embedding(&emb);
    if !report.is_ok() {
        return Err(SurfaceError::Unverified(report));
    }
    Ok(emb)
}
