//! Tubing two surfaces together along the links of one tree embedded in
//! each: excise a neighbourhood of each embedded tree, then glue one
//! annulus per link component. All bookkeeping is at the level of Euler
//! characteristic, boundary circles and connected components.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::links::LinkDiagram;
use crate::surfaces::{
    link_of_embedding, AbstractSurface, DoublePoint, ImmersedSurface, SuitableEmbedding, SurfaceComponent, SurfaceError,
};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TubingError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("embedding targets a different surface")]
    TargetMismatch,
    #[error("unpaired link components: left [{}], right [{}]", .left.join("; "), .right.join("; "))]
    Unpaired { left: Vec<String>, right: Vec<String> },
    #[error("links are not mirror images of each other")]
    LinkMismatch,
    #[error("surface or circle orientations missing")]
    Unoriented,
    #[error("expected {expected} circle orientations, got {found}")]
    OrientationCount { expected: usize, found: usize },
    #[error("orientation conflict across the tube at circles {0}")]
    OrientationConflict(String),
    #[error("non-orientable surfaces are not supported here")]
    NonOrientable,
    #[error("inconsistent bookkeeping: {0}")]
    Inconsistent(String),
}

/// A boundary circle created by excision, bounding the lift component
/// whose slot labels are `origins`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCircle {
    pub component: usize,
    pub origins: BTreeSet<String>,
    pub link_component: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcisedSurface {
    pub surface: AbstractSurface,
    /// Double points not covered by the tree.
    pub double_points: Vec<DoublePoint>,
    pub link: LinkDiagram,
    pub circles: Vec<BoundaryCircle>,
    /// Euler characteristic of the domain before excision.
    pub chi_before: i64,
}

/// Removes one disc around every component of the lift of `e`.
pub fn excise(s: &ImmersedSurface, e: &SuitableEmbedding) -> Result<ExcisedSurface, TubingError> {
    if e.target != *s {
        return Err(TubingError::TargetMismatch);
    }
    let embedded = link_of_embedding(e)?;
    let mut surface = s.domain.clone();
    let mut circles = Vec::with_capacity(embedded.pieces.len());
    for piece in &embedded.pieces {
        surface.components[piece.carrier].boundary += 1;
        circles.push(BoundaryCircle {
            component: piece.carrier,
            origins: piece.origins.clone(),
            link_component: piece.link_component.clone(),
        });
    }
    let used: BTreeSet<usize> = e.vertex_map.iter().copied().collect();
    let double_points =
        s.double_points.iter().enumerate().filter(|(i, _)| !used.contains(i)).map(|(_, d)| *d).collect();
    Ok(ExcisedSurface {
        surface,
        double_points,
        link: embedded.link,
        circles,
        chi_before: s.domain.euler_characteristic(),
    })
}

/// One annulus: circle `left` of the first surface glued to circle
/// `right` of the second. Pieces number the first surface's components
/// first, then the second's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annulus {
    pub left: usize,
    pub right: usize,
    pub left_piece: usize,
    pub right_piece: usize,
    pub origins: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubingResult {
    pub surface: AbstractSurface,
    pub double_points: usize,
    pub annuli_count: usize,
    pub orientation_consistent: bool,
    /// Euler characteristic of the union before excision.
    pub chi_before: i64,
    /// Euler characteristic of the union after excision, before gluing.
    pub chi_excised: i64,
    pub annuli: Vec<Annulus>,
    pub left_circles: usize,
    pub right_circles: usize,
    /// Resulting component of each piece.
    pub piece_component: Vec<usize>,
    /// `+1`/`-1` per piece once [`orient_result`] succeeds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub piece_orientation: Vec<i8>,
    pub log: Vec<String>,
}

impl TubingResult {
    /// A single disc without double points.
    pub fn is_disc(&self) -> bool {
        self.double_points == 0 && self.surface.components.len() == 1 && self.surface.components[0].is_disc()
    }
}

fn labels(circles: &[&BoundaryCircle]) -> Vec<String> {
    circles.iter().map(|c| c.origins.iter().cloned().collect::<Vec<_>>().join(",")).collect()
}

/// Glues `a` and `b` along their excision circles, pairing circles with
/// equal origin labels. The two links must agree as PD codes up to
/// relabelling, possibly after mirroring one of them.
pub fn tube(a: &ExcisedSurface, b: &ExcisedSurface) -> Result<TubingResult, TubingError> {
    let mut annuli = Vec::new();
    let mut unpaired_left = Vec::new();
    let mut matched_right = vec![false; b.circles.len()];
    let na = a.surface.components.len();
    for (i, c) in a.circles.iter().enumerate() {
        match b.circles.iter().position(|d| d.origins == c.origins) {
            Some(j) if !matched_right[j] => {
                matched_right[j] = true;
                annuli.push(Annulus {
                    left: i,
                    right: j,
                    left_piece: c.component,
                    right_piece: na + b.circles[j].component,
                    origins: c.origins.iter().cloned().collect(),
                });
            }
            _ => unpaired_left.push(c),
        }
    }
    let unpaired_right: Vec<&BoundaryCircle> =
        b.circles.iter().zip(&matched_right).filter(|(_, &m)| !m).map(|(c, _)| c).collect();
    if !unpaired_left.is_empty() || !unpaired_right.is_empty() {
        return Err(TubingError::Unpaired { left: labels(&unpaired_left), right: labels(&unpaired_right) });
    }
    let pa = a.link.canonical_pd();
    if pa != b.link.canonical_pd() && pa != b.link.mirror().canonical_pd() {
        return Err(TubingError::LinkMismatch);
    }

    let pieces: Vec<SurfaceComponent> = a.surface.components.iter().chain(&b.surface.components).copied().collect();
    let mut uf = UnionFind::new(pieces.len());
    let mut log = Vec::with_capacity(annuli.len());
    for t in &annuli {
        uf.union(t.left_piece, t.right_piece);
        log.push(format!(
            "annulus {}: left circle {} (piece {}) to right circle {} (piece {})",
            t.origins.join(","),
            t.left,
            t.left_piece,
            t.right,
            t.right_piece
        ));
    }
    let groups = uf.groups();
    let mut piece_component = vec![0; pieces.len()];
    let mut components = Vec::with_capacity(groups.len());
    for (gi, group) in groups.iter().enumerate() {
        for &p in group {
            piece_component[p] = gi;
        }
        let tubes = annuli.iter().filter(|t| piece_component[t.left_piece] == gi).count() as i64;
        let chi: i64 = group.iter().map(|&p| pieces[p].euler_characteristic()).sum();
        let boundary: i64 = group.iter().map(|&p| i64::from(pieces[p].boundary)).sum::<i64>() - 2 * tubes;
        let orientable = group.iter().all(|&p| pieces[p].orientable);
        components.push(component_from_euler(chi, boundary, orientable)?);
    }
    let chi_excised = a.surface.euler_characteristic() + b.surface.euler_characteristic();
    let surface = AbstractSurface::new(components);
    if surface.euler_characteristic() != chi_excised {
        return Err(TubingError::Inconsistent("annuli changed the Euler characteristic".into()));
    }
    Ok(TubingResult {
        surface,
        double_points: a.double_points.len() + b.double_points.len(),
        annuli_count: annuli.len(),
        orientation_consistent: false,
        chi_before: a.chi_before + b.chi_before,
        chi_excised,
        annuli,
        left_circles: a.circles.len(),
        right_circles: b.circles.len(),
        piece_component,
        piece_orientation: Vec::new(),
        log,
    })
}

fn component_from_euler(chi: i64, boundary: i64, orientable: bool) -> Result<SurfaceComponent, TubingError> {
    let deficit = 2 - chi - boundary;
    if boundary < 0 || deficit < 0 || (orientable && deficit % 2 != 0) {
        return Err(TubingError::Inconsistent(format!("no surface has chi {chi} and {boundary} boundary circles")));
    }
    let genus = if orientable { deficit / 2 } else { deficit };
    Ok(SurfaceComponent { genus: genus as u32, boundary: boundary as u32, orientable })
}

/// Chooses an orientation `o` of every piece so that across each annulus
/// `o_left * e_left = -(o_right * e_right)`, where `e` gives the sign of
/// each circle's link orientation relative to the boundary orientation of
/// its positively oriented piece.
pub fn orient_result(r: &TubingResult, left: Option<&[i8]>, right: Option<&[i8]>) -> Result<TubingResult, TubingError> {
    let (Some(left), Some(right)) = (left, right) else {
        return Err(TubingError::Unoriented);
    };
    if r.surface.components.iter().any(|c| !c.orientable) {
        return Err(TubingError::Unoriented);
    }
    for (signs, expected) in [(left, r.left_circles), (right, r.right_circles)] {
        if signs.len() != expected {
            return Err(TubingError::OrientationCount { expected, found: signs.len() });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(TubingError::Unoriented);
        }
    }
    let n = r.piece_component.len();
    let mut adjacent: Vec<Vec<(usize, i8, &Annulus)>> = vec![Vec::new(); n];
    for t in &r.annuli {
        let rel = -left[t.left] * right[t.right];
        adjacent[t.left_piece].push((t.right_piece, rel, t));
        adjacent[t.right_piece].push((t.left_piece, rel, t));
    }
    let mut o = vec![0i8; n];
    for start in 0..n {
        if o[start] != 0 {
            continue;
        }
        o[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for &(q, rel, t) in &adjacent[p] {
                let want = o[p] * rel;
                if o[q] == 0 {
                    o[q] = want;
                    queue.push_back(q);
                } else if o[q] != want {
                    return Err(TubingError::OrientationConflict(format!(
                        "left {} / right {} ({})",
                        t.left,
                        t.right,
                        t.origins.join(",")
                    )));
                }
            }
        }
    }
    let mut out = r.clone();
    out.orientation_consistent = true;
    out.piece_orientation = o;
    Ok(out)
}

pub fn euler_characteristic(s: &AbstractSurface) -> Result<i64, TubingError> {
    if s.components.iter().any(|c| !c.orientable) {
        return Err(TubingError::NonOrientable);
    }
    Ok(s.euler_characteristic())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub genus: u32,
    pub boundary: u32,
    pub components: usize,
}

/// Total genus, boundary count and number of components, each component's
/// genus recovered from its Euler characteristic and boundary.
pub fn classify(s: &AbstractSurface) -> Result<Classification, TubingError> {
    let mut genus = 0;
    for c in &s.components {
        if !c.orientable {
            return Err(TubingError::NonOrientable);
        }
        genus += component_from_euler(c.euler_characteristic(), i64::from(c.boundary), true)?.genus;
    }
    Ok(Classification { genus, boundary: s.boundary_count(), components: s.components.len() })
}
