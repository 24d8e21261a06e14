//! Link diagrams as planar-diagram (PD) codes.
//!
//! # Conventions
//!
//! A crossing is a 4-tuple of arc ids listed counterclockwise starting from
//! an under-strand end, so positions 0 and 2 form the under-strand and 1
//! and 3 the over-strand. In an oriented diagram position 0 is the incoming
//! under-strand and the crossing carries its sign: positive exactly when
//! the over-strand enters at position 3 and leaves at position 1. In an
//! unoriented diagram the tuple is only defined up to rotation by two, and
//! is stored in whichever of the two rotations is lexicographically
//! smaller.
//!
//! Worked example, the right-handed trefoil with arcs 1..6 numbered along
//! the orientation:
//!
//! ```text
//! X+(1,5,2,4)  X+(3,1,4,6)  X+(5,3,6,2)
//! ```
//!
//! Arc 1 enters the first crossing underneath and leaves as arc 2; the
//! over-strand there runs 4 -> 5, entering at position 3, so the crossing
//! is positive. Mirroring rotates each tuple so that the incoming
//! over-strand becomes the incoming under-strand, which flips every sign:
//! the first crossing becomes `X-(4,1,5,2)`.
//!
//! Crossingless unknotted components are explicit loops (`O(a)` in text).

mod bracket;
mod construct;
mod pd_text;
mod poly;
mod svg;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::unionfind::UnionFind;

pub use bracket::{
    amphichiral_evidence, bracket_state_sum, jones, jones_with, kauffman_bracket, kauffman_bracket_with,
    AmphichiralReport, BracketOptions, CROSSING_CAP_ENV,
};
pub use construct::{associated_link, connected_sum, hopf_link, slot_label, unknot};
pub use pd_text::{parse_pd, write_pd};
pub use poly::LaurentPoly;
pub use svg::associated_link_svg;

pub type Arc = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("Hopf link components need distinct labels, got `{0}` twice")]
    EqualLabels(String),
    #[error("no component labelled `{0}`")]
    UnknownComponent(String),
    #[error("component label `{0}` would be used twice")]
    DuplicateLabel(String),
    #[error("operation needs an oriented diagram")]
    Unoriented,
    #[error("cannot combine an oriented and an unoriented diagram")]
    OrientationMismatch,
    #[error("expected {expected} orientation flags, got {found}")]
    FlipCount { expected: usize, found: usize },
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<DiagramViolation>),
    #[error("{crossings} crossings exceed the state-sum cap of {cap} and no connected-sum decomposition is recorded")]
    CrossingCap { crossings: usize, cap: usize },
    #[error("{components} components exceed the orientation-enumeration cap of {cap}")]
    ComponentCap { components: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [Arc; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
}

impl Crossing {
    pub fn unoriented(arcs: [Arc; 4]) -> Self {
        Self { arcs: normalize_unoriented(arcs), sign: None }
    }
}

fn rotate(arcs: [Arc; 4], r: usize) -> [Arc; 4] {
    [arcs[r % 4], arcs[(r + 1) % 4], arcs[(r + 2) % 4], arcs[(r + 3) % 4]]
}

fn normalize_unoriented(arcs: [Arc; 4]) -> [Arc; 4] {
    arcs.min(rotate(arcs, 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    /// Arc ids, ascending.
    pub arcs: Vec<Arc>,
    /// Labels of the original components merged into this one by
    /// connected sums (just `{label}` for a fresh component).
    pub origins: BTreeSet<String>,
}

impl Component {
    pub fn new(label: impl Into<String>, arcs: impl IntoIterator<Item = Arc>) -> Self {
        let label = label.into();
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        Self { origins: BTreeSet::from([label.clone()]), label, arcs }
    }
}

/// One connected sum recorded on a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Merge {
    pub left: String,
    pub right: String,
    pub result: String,
}

/// `(crossing index, position)`: one end of an arc.
pub type Endpoint = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramViolation {
    ArcMultiplicity { arc: Arc, count: usize },
    LoopOnCrossing { arc: Arc },
    ComponentMismatch { label: String },
    UnassignedArc { arc: Arc },
    DuplicateLabel { label: String },
    MissingSign { crossing: usize },
    UnexpectedSign { crossing: usize },
    OrientationBreak { arc: Arc },
    NonPlanar { genus: usize },
}

impl fmt::Display for DiagramViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ArcMultiplicity { arc, count } => write!(f, "arc {arc} appears {count} times (expected 2)"),
            Self::LoopOnCrossing { arc } => write!(f, "loop arc {arc} also appears at a crossing"),
            Self::ComponentMismatch { label } => {
                write!(f, "component `{label}` is not a union of strands through crossings")
            }
            Self::UnassignedArc { arc } => write!(f, "arc {arc} belongs to no component"),
            Self::DuplicateLabel { label } => write!(f, "component label `{label}` repeated"),
            Self::MissingSign { crossing } => write!(f, "crossing {crossing} has no sign in an oriented diagram"),
            Self::UnexpectedSign { crossing } => write!(f, "crossing {crossing} is signed in an unoriented diagram"),
            Self::OrientationBreak { arc } => write!(f, "arc {arc} does not run from an exit to an entry"),
            Self::NonPlanar { genus } => write!(f, "diagram surface has genus {genus}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    loops: Vec<Arc>,
    components: Vec<Component>,
    oriented: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    merges: Vec<Merge>,
    /// Factors of a recorded connected sum, each unoriented and
    /// factor-free. Empty when the diagram is not known to be a sum.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    summands: Vec<LinkDiagram>,
}

impl LinkDiagram {
    /// Checked constructor. Unoriented crossings are renormalised; oriented
    /// ones must carry a sign.
    pub fn new(
        crossings: Vec<Crossing>,
        loops: Vec<Arc>,
        components: Vec<Component>,
        oriented: bool,
    ) -> Result<Self, LinkError> {
        let crossings = crossings
            .into_iter()
            .map(|c| if oriented || c.sign.is_some() { c } else { Crossing::unoriented(c.arcs) })
            .collect();
        let d = Self { crossings, loops, components, oriented, merges: Vec::new(), summands: Vec::new() };
        let violations = d.violations();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(LinkError::Invalid(violations))
        }
    }

    /// Unoriented diagram from bare crossing tuples; components are
    /// computed and labelled `c0, c1, ...` by smallest arc.
    pub fn from_pd(tuples: &[[Arc; 4]]) -> Result<Self, LinkError> {
        let crossings: Vec<Crossing> = tuples.iter().map(|&t| Crossing::unoriented(t)).collect();
        let probe = Self {
            crossings: crossings.clone(),
            loops: Vec::new(),
            components: Vec::new(),
            oriented: false,
            merges: Vec::new(),
            summands: Vec::new(),
        };
        let components = probe
            .strand_classes()
            .into_iter()
            .enumerate()
            .map(|(i, arcs)| Component::new(format!("c{i}"), arcs))
            .collect();
        Self::new(crossings, Vec::new(), components, false)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> &[Arc] {
        &self.loops
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, label: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.label == label)
    }

    pub fn component_index(&self, label: &str) -> Option<usize> {
        self.components.iter().position(|c| c.label == label)
    }

    /// Component whose origin set contains `origin`.
    pub fn component_with_origin(&self, origin: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.origins.contains(origin))
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn summands(&self) -> &[LinkDiagram] {
        &self.summands
    }

    pub(crate) fn set_history(&mut self, merges: Vec<Merge>, summands: Vec<LinkDiagram>) {
        self.merges = merges;
        self.summands = summands;
    }

    /// Drops orientation and connected-sum history.
    pub fn unoriented(&self) -> Self {
        Self {
            crossings: self.crossings.iter().map(|c| Crossing::unoriented(c.arcs)).collect(),
            loops: self.loops.clone(),
            components: self.components.clone(),
            oriented: false,
            merges: Vec::new(),
            summands: Vec::new(),
        }
    }

    pub fn arcs(&self) -> BTreeSet<Arc> {
        self.crossings.iter().flat_map(|c| c.arcs).chain(self.loops.iter().copied()).collect()
    }

    pub fn max_arc(&self) -> Option<Arc> {
        self.arcs().into_iter().next_back()
    }

    /// Endpoints of every arc that meets a crossing, in scan order.
    pub fn occurrences(&self) -> BTreeMap<Arc, Vec<Endpoint>> {
        let mut occ: BTreeMap<Arc, Vec<Endpoint>> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for (p, &a) in c.arcs.iter().enumerate() {
                occ.entry(a).or_default().push((i, p));
            }
        }
        occ
    }

    /// Arc classes joined through crossings along strands (0-2 and 1-3),
    /// each sorted, ordered by smallest arc. Loops are not included.
    pub fn strand_classes(&self) -> Vec<Vec<Arc>> {
        let arcs: Vec<Arc> = self.crossings.iter().flat_map(|c| c.arcs).collect::<BTreeSet<_>>().into_iter().collect();
        let index = |a: Arc| arcs.binary_search(&a).expect("known arc");
        let mut uf = UnionFind::new(arcs.len());
        for c in &self.crossings {
            uf.union(index(c.arcs[0]), index(c.arcs[2]));
            uf.union(index(c.arcs[1]), index(c.arcs[3]));
        }
        uf.groups().into_iter().map(|g| g.into_iter().map(|i| arcs[i]).collect()).collect()
    }

    /// Number of link components, via union-find over arcs.
    pub fn component_count(&self) -> usize {
        self.strand_classes().len() + self.loops.len()
    }

    /// Genus of the closed surface obtained by capping the faces of each
    /// connected piece of the 4-valent diagram graph, summed over pieces.
    /// Zero exactly for planar diagrams.
    pub fn diagram_genus(&self) -> usize {
        let n = self.crossings.len();
        if n == 0 {
            return 0;
        }
        let occ = self.occurrences();
        let mut partner = vec![(0usize, 0usize); 4 * n];
        for ends in occ.values() {
            if ends.len() == 2 {
                let (a, b) = (ends[0], ends[1]);
                partner[4 * a.0 + a.1] = b;
                partner[4 * b.0 + b.1] = a;
            }
        }
        let mut pieces = UnionFind::new(n);
        for ends in occ.values() {
            if ends.len() == 2 {
                pieces.union(ends[0].0, ends[1].0);
            }
        }
        let mut faces = vec![0usize; n];
        let mut seen = vec![false; 4 * n];
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let (c, p) = partner[d];
                d = 4 * c + (p + 1) % 4;
            }
            let root = pieces.find(start / 4);
            faces[root] += 1;
        }
        let mut genus = 0;
        let mut vertices = vec![0usize; n];
        for c in 0..n {
            let r = pieces.find(c);
            vertices[r] += 1;
        }
        for r in 0..n {
            if vertices[r] > 0 {
                // V - E + F = 2 - 2g with E = 2V.
                let chi = faces[r] as i64 - vertices[r] as i64;
                genus += ((2 - chi) / 2) as usize;
            }
        }
        genus
    }

    pub fn violations(&self) -> Vec<DiagramViolation> {
        let mut out = Vec::new();
        let occ = self.occurrences();
        for (&arc, ends) in &occ {
            if ends.len() != 2 {
                out.push(DiagramViolation::ArcMultiplicity { arc, count: ends.len() });
            }
        }
        let mut loop_seen = BTreeSet::new();
        for &a in &self.loops {
            if occ.contains_key(&a) {
                out.push(DiagramViolation::LoopOnCrossing { arc: a });
            }
            if !loop_seen.insert(a) {
                out.push(DiagramViolation::ArcMultiplicity { arc: a, count: 2 });
            }
        }
        let mut owner: BTreeMap<Arc, usize> = BTreeMap::new();
        let mut labels = BTreeSet::new();
        for (i, c) in self.components.iter().enumerate() {
            if !labels.insert(c.label.as_str()) {
                out.push(DiagramViolation::DuplicateLabel { label: c.label.clone() });
            }
            for &a in &c.arcs {
                owner.insert(a, i);
            }
        }
        for a in self.arcs() {
            if !owner.contains_key(&a) {
                out.push(DiagramViolation::UnassignedArc { arc: a });
            }
        }
        let mut classes: Vec<Vec<Arc>> = self.strand_classes();
        classes.extend(self.loops.iter().map(|&a| vec![a]));
        let computed: BTreeSet<Vec<Arc>> = classes.into_iter().collect();
        for c in &self.components {
            if !computed.contains(&c.arcs) {
                out.push(DiagramViolation::ComponentMismatch { label: c.label.clone() });
            }
        }
        for (i, c) in self.crossings.iter().enumerate() {
            match (self.oriented, c.sign) {
                (true, None) => out.push(DiagramViolation::MissingSign { crossing: i }),
                (false, Some(_)) => out.push(DiagramViolation::UnexpectedSign { crossing: i }),
                _ => {}
            }
        }
        if self.oriented && out.is_empty() {
            let mut heads: BTreeMap<Arc, usize> = BTreeMap::new();
            for c in &self.crossings {
                for p in 0..4 {
                    if incoming(c, p) {
                        *heads.entry(c.arcs[p]).or_default() += 1;
                    }
                }
            }
            for &arc in occ.keys() {
                if heads.get(&arc).copied().unwrap_or(0) != 1 {
                    out.push(DiagramViolation::OrientationBreak { arc });
                }
            }
        }
        if out.iter().all(|v| !matches!(v, DiagramViolation::ArcMultiplicity { .. })) {
            let genus = self.diagram_genus();
            if genus > 0 {
                out.push(DiagramViolation::NonPlanar { genus });
            }
        }
        out
    }

    /// Incoming endpoint of every crossing arc; oriented diagrams only.
    fn heads(&self) -> BTreeMap<Arc, Endpoint> {
        let mut heads = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                if incoming(c, p) {
                    heads.insert(c.arcs[p], (i, p));
                }
            }
        }
        heads
    }

    /// Rebuilds oriented crossings from the incoming endpoint of every arc.
    fn with_heads(&self, heads: &BTreeMap<Arc, Endpoint>) -> Self {
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let r = if heads[&c.arcs[0]] == (i, 0) { 0 } else { 2 };
                let q = if heads[&c.arcs[1]] == (i, 1) { 1 } else { 3 };
                let sign = if (q + 4 - r) % 4 == 3 { Sign::Positive } else { Sign::Negative };
                Crossing { arcs: rotate(c.arcs, r), sign: Some(sign) }
            })
            .collect();
        Self {
            crossings,
            loops: self.loops.clone(),
            components: self.components.clone(),
            oriented: true,
            merges: self.merges.clone(),
            summands: self.summands.clone(),
        }
    }

    /// Orients every component by walking it from the first endpoint of its
    /// smallest arc; `flips[i]` reverses component `i`.
    pub fn orient(&self, flips: &[bool]) -> Result<Self, LinkError> {
        if flips.len() != self.components.len() {
            return Err(LinkError::FlipCount { expected: self.components.len(), found: flips.len() });
        }
        let occ = self.occurrences();
        let mut heads: BTreeMap<Arc, Endpoint> = BTreeMap::new();
        for (comp, &flip) in self.components.iter().zip(flips) {
            let Some(&start) = comp.arcs.iter().find(|a| occ.contains_key(a)) else { continue };
            let mut arc = start;
            let mut tail = occ[&start][0];
            loop {
                let ends = &occ[&arc];
                let head = if ends[0] == tail { ends[1] } else { ends[0] };
                heads.insert(arc, if flip { tail } else { head });
                let next = (head.0, (head.1 + 2) % 4);
                arc = self.crossings[next.0].arcs[next.1];
                tail = next;
                if arc == start && tail == occ[&start][0] {
                    break;
                }
            }
        }
        Ok(self.with_heads(&heads))
    }

    /// Reverses the orientation of one component.
    pub fn reverse_component(&self, label: &str) -> Result<Self, LinkError> {
        if !self.oriented {
            return Err(LinkError::Unoriented);
        }
        let comp = self.component(label).ok_or_else(|| LinkError::UnknownComponent(label.to_string()))?;
        let occ = self.occurrences();
        let mut heads = self.heads();
        for a in &comp.arcs {
            if let Some(ends) = occ.get(a) {
                let h = heads[a];
                heads.insert(*a, if ends[0] == h { ends[1] } else { ends[0] });
            }
        }
        Ok(self.with_heads(&heads))
    }

    /// Mirror image: every crossing rotated by one position so that the
    /// former over-strand passes under.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| match c.sign {
                None => Crossing::unoriented(rotate(c.arcs, 1)),
                Some(s) => {
                    let q = if incoming(c, 1) { 1 } else { 3 };
                    Crossing { arcs: rotate(c.arcs, q), sign: Some(s.flipped()) }
                }
            })
            .collect();
        Self {
            crossings,
            loops: self.loops.clone(),
            components: self.components.clone(),
            oriented: self.oriented,
            merges: self.merges.clone(),
            summands: self.summands.iter().map(|s| s.mirror()).collect(),
        }
    }

    pub fn writhe(&self) -> Result<i64, LinkError> {
        if !self.oriented {
            return Err(LinkError::Unoriented);
        }
        Ok(self.crossings.iter().map(|c| c.sign.expect("oriented").value()).sum())
    }

    /// Linking numbers between components (in stored order); the diagonal
    /// is zero.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>, LinkError> {
        if !self.oriented {
            return Err(LinkError::Unoriented);
        }
        let mut owner: BTreeMap<Arc, usize> = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for &a in &c.arcs {
                owner.insert(a, i);
            }
        }
        let k = self.components.len();
        let mut twice = vec![vec![0i64; k]; k];
        for c in &self.crossings {
            let (i, j) = (owner[&c.arcs[0]], owner[&c.arcs[1]]);
            if i != j {
                let s = c.sign.expect("oriented").value();
                twice[i][j] += s;
                twice[j][i] += s;
            }
        }
        Ok(twice
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        assert!(x % 2 == 0, "odd inter-component crossing count");
                        x / 2
                    })
                    .collect()
            })
            .collect())
    }

    /// The PD code with arcs renumbered from 1 in order of first
    /// appearance; unoriented tuples take whichever rotation by two gives
    /// the smaller renumbered tuple. Labels are ignored, so two diagrams
    /// agree here iff they coincide up to arc relabelling (crossing order
    /// fixed).
    pub fn canonical_pd(&self) -> CanonicalPd {
        let mut map: BTreeMap<Arc, Arc> = BTreeMap::new();
        let mut next: Arc = 1;
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let rotations: Vec<[Arc; 4]> =
                if c.sign.is_some() { vec![c.arcs] } else { vec![c.arcs, rotate(c.arcs, 2)] };
            let best = rotations
                .into_iter()
                .map(|arcs| {
                    let mut local = map.clone();
                    let mut n = next;
                    let renamed = arcs.map(|a| {
                        *local.entry(a).or_insert_with(|| {
                            n += 1;
                            n - 1
                        })
                    });
                    (renamed, local, n)
                })
                .min_by(|x, y| x.0.cmp(&y.0))
                .expect("at least one rotation");
            crossings.push((best.0, c.sign));
            map = best.1;
            next = best.2;
        }
        let mut loops = Vec::new();
        for &a in &self.loops {
            map.insert(a, next);
            loops.push(next);
            next += 1;
        }
        let mut components: Vec<Vec<Arc>> = self
            .components
            .iter()
            .map(|c| {
                let mut arcs: Vec<Arc> = c.arcs.iter().map(|a| map[a]).collect();
                arcs.sort_unstable();
                arcs
            })
            .collect();
        components.sort();
        CanonicalPd { crossings, loops, components }
    }
}

/// Whether position `p` of crossing `c` is an entry, in an oriented diagram.
fn incoming(c: &Crossing, p: usize) -> bool {
    match (p, c.sign) {
        (0, _) => true,
        (2, _) => false,
        (1, Some(Sign::Negative)) | (3, Some(Sign::Positive)) => true,
        _ => false,
    }
}

/// Output of [`LinkDiagram::canonical_pd`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalPd {
    pub crossings: Vec<([Arc; 4], Option<Sign>)>,
    pub loops: Vec<Arc>,
    pub components: Vec<Vec<Arc>>,
}

impl fmt::Display for CanonicalPd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (arcs, sign) in &self.crossings {
            let s = match sign {
                None => "",
                Some(Sign::Positive) => "+",
                Some(Sign::Negative) => "-",
            };
            writeln!(f, "X{s}({},{},{},{})", arcs[0], arcs[1], arcs[2], arcs[3])?;
        }
        for a in &self.loops {
            writeln!(f, "O({a})")?;
        }
        Ok(())
    }
}
