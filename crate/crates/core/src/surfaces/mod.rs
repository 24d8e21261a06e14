//! Combinatorial immersed surfaces: abstract domains, double points with
//! two sheet slots each, plumbing trees, and suitable embeddings of
//! locally bipartitioned trees.

mod embed;
mod plumbing_text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trees::{Tree, TreeError, VertexId};

pub use embed::{
    embed_in_connected, embed_in_plumbing, lift_forest, link_of_embedding, verify_embedding, EdgeAssignment,
    EmbeddedLink, EmbeddingReport, EmbeddingViolation, LiftForest, SuitableEmbedding,
};
pub use plumbing_text::{parse_plumbing_text, write_plumbing_text};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("plumbing has {0} genus entries for {1} vertices")]
    GenusCount(usize, usize),
    #[error("a plumbing of a single surface has no double points to embed a tree on")]
    NoDoublePoints,
    #[error("surface is not a plumbing tree: {0}")]
    NotAPlumbing(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("tree has {vertices} vertices but the surface only {double_points} double points")]
    TooManyVertices { vertices: usize, double_points: usize },
    #[error("domain has {0} components; a connected surface is required")]
    Disconnected(usize),
    #[error("embedding fails verification: {0}")]
    Unverified(EmbeddingReport),
    #[error("no link component has origins {0}")]
    LinkMismatch(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub genus: u32,
    pub boundary: u32,
    pub orientable: bool,
}

impl SurfaceComponent {
    pub fn closed(genus: u32) -> Self {
        Self { genus, boundary: 0, orientable: true }
    }

    pub fn disc() -> Self {
        Self { genus: 0, boundary: 1, orientable: true }
    }

    /// `2 - 2g - b` for orientable components, `2 - g - b` otherwise (with
    /// `g` the number of cross-caps).
    pub fn euler_characteristic(&self) -> i64 {
        let g = i64::from(self.genus);
        let b = i64::from(self.boundary);
        if self.orientable {
            2 - 2 * g - b
        } else {
            2 - g - b
        }
    }

    pub fn is_disc(&self) -> bool {
        *self == Self::disc()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractSurface {
    pub components: Vec<SurfaceComponent>,
}

impl AbstractSurface {
    pub fn new(components: Vec<SurfaceComponent>) -> Self {
        Self { components }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| c.euler_characteristic()).sum()
    }

    pub fn boundary_count(&self) -> u32 {
        self.components.iter().map(|c| c.boundary).sum()
    }
}

/// One local sheet at a double point: the domain component it lies on and
/// a slot id unique across the surface (`2i` and `2i + 1` for double point
/// `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub component: usize,
    pub id: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePoint {
    pub slots: [Slot; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    Plumbing,
    Disc,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersedSurface {
    pub kind: SurfaceKind,
    pub domain: AbstractSurface,
    pub double_points: Vec<DoublePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_knot: Option<String>,
}

impl ImmersedSurface {
    /// Builds a surface with double points given as component pairs; slot
    /// ids are assigned `2i`, `2i + 1`.
    pub fn new(
        kind: SurfaceKind,
        domain: AbstractSurface,
        double_points: &[(usize, usize)],
        boundary_knot: Option<String>,
    ) -> Result<Self, SurfaceError> {
        let s = Self {
            kind,
            domain,
            double_points: double_points
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| DoublePoint {
                    slots: [Slot { component: a, id: 2 * i }, Slot { component: b, id: 2 * i + 1 }],
                })
                .collect(),
            boundary_knot,
        };
        match s.violations().first() {
            None => Ok(s),
            Some(v) => Err(SurfaceError::InvalidSurface(v.clone())),
        }
    }

    pub fn double_point_count(&self) -> usize {
        self.double_points.len()
    }

    pub fn component_count(&self) -> usize {
        self.domain.components.len()
    }

    /// Slot ids repeated or pointing at missing components.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut ids = std::collections::BTreeSet::new();
        for (i, dp) in self.double_points.iter().enumerate() {
            for s in dp.slots {
                if s.component >= self.domain.components.len() {
                    out.push(format!("double point {i} has a slot on missing component {}", s.component));
                }
                if !ids.insert(s.id) {
                    out.push(format!("slot id {} repeated", s.id));
                }
            }
        }
        out
    }

    /// The intersection graph of a plumbing: components as vertices,
    /// double points as edges (edge `i` is double point `i`). `None` unless
    /// every double point joins two different components and the graph is
    /// a tree.
    pub fn plumbing_graph(&self) -> Option<Tree> {
        let n = self.domain.components.len();
        if n == 0 {
            return None;
        }
        let edges =
            self.double_points.iter().map(|dp| (dp.slots[0].component as VertexId, dp.slots[1].component as VertexId));
        Tree::new(0..n as VertexId, edges).ok()
    }
}

/// A plumbing tree of closed surfaces. Vectors are indexed by the dense
/// vertex index of `graph`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingTree {
    pub graph: Tree,
    pub genus: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub euler: Vec<Option<i64>>,
}

impl PlumbingTree {
    pub fn new(graph: Tree, genus: Vec<u32>, euler: Vec<Option<i64>>) -> Result<Self, SurfaceError> {
        if genus.len() != graph.vertex_count() {
            return Err(SurfaceError::GenusCount(genus.len(), graph.vertex_count()));
        }
        if !euler.is_empty() && euler.len() != graph.vertex_count() {
            return Err(SurfaceError::GenusCount(euler.len(), graph.vertex_count()));
        }
        let euler = if euler.iter().all(Option::is_none) { Vec::new() } else { euler };
        Ok(Self { graph, genus, euler })
    }

    /// All spheres, no Euler numbers.
    pub fn spheres(graph: Tree) -> Self {
        let n = graph.vertex_count();
        Self { graph, genus: vec![0; n], euler: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn euler_number(&self, v: usize) -> Option<i64> {
        self.euler.get(v).copied().flatten()
    }

    pub fn all_spheres(&self) -> bool {
        self.genus.iter().all(|&g| g == 0)
    }
}

impl fmt::Display for PlumbingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_plumbing_text(self))
    }
}

/// One closed component per vertex and one double point per edge, with
/// slot 0 on the first endpoint of the edge.
pub fn make_plumbing(p: &PlumbingTree) -> ImmersedSurface {
    let domain = AbstractSurface::new(p.genus.iter().map(|&g| SurfaceComponent::closed(g)).collect());
    let dps: Vec<(usize, usize)> = p.graph.edges().to_vec();
    ImmersedSurface::new(SurfaceKind::Plumbing, domain, &dps, None).expect("edges reference vertices")
}

/// A disc bounded by `K` with `m` double points, both slots of each on
/// the disc.
pub fn make_immersed_disc(m: usize) -> ImmersedSurface {
    make_immersed_disc_bounding(m, "K")
}

pub fn make_immersed_disc_bounding(m: usize, knot: &str) -> ImmersedSurface {
    let domain = AbstractSurface::new(vec![SurfaceComponent::disc()]);
    ImmersedSurface::new(SurfaceKind::Disc, domain, &vec![(0, 0); m], Some(knot.to_string())).expect("single component")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plumbing_counts() {
        let one = make_plumbing(&PlumbingTree::spheres(Tree::singleton(0)));
        assert_eq!((one.component_count(), one.double_point_count()), (1, 0));
        let path = make_plumbing(&PlumbingTree::spheres(Tree::path(3)));
        assert_eq!((path.component_count(), path.double_point_count()), (3, 2));
        assert_eq!(path.domain.euler_characteristic(), 6);
        assert!(path.plumbing_graph().is_some());
    }

    #[test]
    fn disc_euler_is_independent_of_double_points() {
        for m in [0, 1, 21] {
            let d = make_immersed_disc(m);
            assert_eq!(d.double_point_count(), m);
            assert_eq!(d.domain.euler_characteristic(), 1);
            assert_eq!(d.boundary_knot.as_deref(), Some("K"));
        }
        assert!(make_immersed_disc(3).plumbing_graph().is_none());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(SurfaceComponent::closed(0).euler_characteristic(), 2);
        assert_eq!(SurfaceComponent::disc().euler_characteristic(), 1);
        let c = SurfaceComponent { genus: 2, boundary: 1, orientable: true };
        assert_eq!(c.euler_characteristic(), -3);
    }

    #[test]
    fn rejects_slots_on_missing_components() {
        let r = ImmersedSurface::new(
            SurfaceKind::Custom,
            AbstractSurface::new(vec![SurfaceComponent::disc()]),
            &[(0, 1)],
            None,
        );
        assert!(matches!(r, Err(SurfaceError::InvalidSurface(_))));
    }
}
