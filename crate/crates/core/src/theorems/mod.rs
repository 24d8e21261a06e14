//! Manifold data, clasp-number bookkeeping and the certification
//! pipelines.

mod certify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knotdata::KnotRecord;
use crate::surfaces::{PlumbingTree, SurfaceError};
use crate::trees::{Tree, VertexId};
use crate::tubing::TubingError;

pub use certify::{
    certify, certify_norman, certify_slice_in_plumbing, norman_plumbing, verify_certificate, Certificate, CheckReport,
    PipelineRun, Procedure, Verdict, VerificationReport, CERTIFICATE_VERSION,
};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("E({0}) has no bound here: n must be at least 2 (every knot is slice in E(1))")]
    SmallN(u32),
    #[error("knot `{0}` carries no u, c4 or g4 bound")]
    EmptyRecord(String),
    #[error("sphere framing is {0}; parallel push-offs need a 0-framed sphere")]
    NonZeroFraming(i64),
    #[error("plumbing vertex {0} has positive genus; this theorem needs spheres")]
    NotSpheres(VertexId),
    #[error("manifold `{0}` has no {1} model")]
    WrongModel(String, &'static str),
    #[error("unknown manifold `{0}` (expected K3, E:n, zero-sphere:g, S2xS2 or CP2#-CP2)")]
    UnknownManifold(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Tubing(#[from] TubingError),
    #[error("certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// `11n - ceil(n/5)`: the clasp-number bound for sliceness in `E(n)`.
pub fn en_bound(n: u32) -> Result<u32, TheoremError> {
    if n <= 1 {
        return Err(TheoremError::SmallN(n));
    }
    Ok(11 * n - n.div_ceil(5))
}

/// Offset from an `Ẽ6` hub of the vertex the section meets: the far end
/// of the first leg, the multiplicity-one end of the fibre.
pub const SECTION_ATTACHMENT_OFFSET: VertexId = 2;

const E6_SIZE: VertexId = 7;

/// Edges of an `Ẽ6` fibre: hub `h` with legs `h+1 - h+2`, `h+3 - h+4`,
/// `h+5 - h+6`.
fn e6_edges(h: VertexId) -> Vec<(VertexId, VertexId)> {
    (0..3).flat_map(|j| [(h, h + 1 + 2 * j), (h + 1 + 2 * j, h + 2 + 2 * j)]).collect()
}

/// The `Ẽ6` shape on vertices 0..7 with hub 0.
pub fn e6_tilde() -> Tree {
    Tree::new(0..E6_SIZE, e6_edges(0)).expect("E6 is a tree")
}

/// 22 spheres in K3: section 0 meeting three `Ẽ6` fibres with hubs
/// 1, 8, 15. Every sphere has Euler number -2.
pub fn k3_plumbing() -> PlumbingTree {
    let mut edges = Vec::new();
    for f in 0..3 {
        let hub = 1 + E6_SIZE * f;
        edges.push((0, hub + SECTION_ATTACHMENT_OFFSET));
        edges.extend(e6_edges(hub));
    }
    let graph = Tree::new(0..1 + 3 * E6_SIZE, edges).expect("K3 plumbing is a tree");
    let n = graph.vertex_count();
    PlumbingTree::new(graph, vec![0; n], vec![Some(-2); n]).expect("sizes agree")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ManifoldModel {
    Plumbing {
        plumbing: PlumbingTree,
        /// The tree has the right number of spheres but not the true
        /// shape.
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        synthetic: bool,
    },
    ZeroSphere {
        dual_genus: u32,
        framing: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifold {
    pub name: String,
    #[serde(flatten)]
    pub model: ManifoldModel,
}

impl Manifold {
    pub fn k3() -> Self {
        Self { name: "K3".into(), model: ManifoldModel::Plumbing { plumbing: k3_plumbing(), synthetic: false } }
    }

    /// `E(2)` is K3; for larger `n` a path of `en_bound(n) + 1` spheres
    /// stands in for the real plumbing and is flagged synthetic.
    pub fn elliptic(n: u32) -> Result<Self, TheoremError> {
        let bound = en_bound(n)?;
        if n == 2 {
            return Ok(Self { name: "E(2)".into(), ..Self::k3() });
        }
        let spheres = Tree::path(bound as usize + 1);
        Ok(Self {
            name: format!("E({n})"),
            model: ManifoldModel::Plumbing { plumbing: PlumbingTree::spheres(spheres), synthetic: true },
        })
    }

    pub fn zero_sphere(dual_genus: u32, framing: i64) -> Self {
        Self { name: format!("zero-sphere:{dual_genus}"), model: ManifoldModel::ZeroSphere { dual_genus, framing } }
    }

    pub fn s2_x_s2() -> Self {
        Self { name: "S2xS2".into(), ..Self::zero_sphere(0, 0) }
    }

    pub fn cp2_cp2bar() -> Self {
        Self { name: "CP2#-CP2".into(), ..Self::zero_sphere(0, 0) }
    }

    pub fn custom(name: impl Into<String>, plumbing: PlumbingTree) -> Self {
        Self { name: name.into(), model: ManifoldModel::Plumbing { plumbing, synthetic: false } }
    }

    pub fn sphere_count(&self) -> Option<usize> {
        match &self.model {
            ManifoldModel::Plumbing { plumbing, .. } => Some(plumbing.vertex_count()),
            ManifoldModel::ZeroSphere { .. } => None,
        }
    }
}

impl FromStr for Manifold {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || TheoremError::UnknownManifold(s.to_string());
        match s.trim() {
            "K3" => Ok(Self::k3()),
            "S2xS2" => Ok(Self::s2_x_s2()),
            "CP2#-CP2" => Ok(Self::cp2_cp2bar()),
            t => {
                if let Some(n) = t.strip_prefix("E:") {
                    Self::elliptic(n.parse().map_err(|_| unknown())?)
                } else if let Some(g) = t.strip_prefix("zero-sphere:") {
                    Ok(Self::zero_sphere(g.parse().map_err(|_| unknown())?, 0))
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Upper bounds after pushing them down `g4 <= c4 <= u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaspBounds {
    pub u_upper: Option<u32>,
    pub c4_upper: Option<u32>,
    pub g4_upper: Option<u32>,
    pub slice_in_b4: bool,
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub fn clasp_chain(k: &KnotRecord) -> Result<ClaspBounds, TheoremError> {
    if k.u_upper.is_none() && k.c4_upper.is_none() && k.g4_upper.is_none() {
        return Err(TheoremError::EmptyRecord(k.name.clone()));
    }
    let c4 = min_opt(k.c4_upper, k.u_upper);
    let g4 = min_opt(k.g4_upper, c4);
    Ok(ClaspBounds { u_upper: k.u_upper, c4_upper: c4, g4_upper: g4, slice_in_b4: c4 == Some(0) || g4 == Some(0) })
}
