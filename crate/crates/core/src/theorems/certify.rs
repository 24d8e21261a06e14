//! Certificates: the full record of one pipeline run, and an independent
//! re-check from the serialized form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{clasp_chain, ClaspBounds, Manifold, ManifoldModel, TheoremError};
use crate::knotdata::KnotRecord;
use crate::links::{associated_link, LinkDiagram};
use crate::surfaces::{
    embed_in_connected, embed_in_plumbing, make_immersed_disc_bounding, make_plumbing, verify_embedding,
    EdgeAssignment, ImmersedSurface, PlumbingTree, SuitableEmbedding,
};
use crate::trees::{canonical_hex, validate_lbtree, LBTree, Tree};
use crate::tubing::{classify, excise, orient_result, tube, TubingResult};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Procedure {
    SliceInPlumbing,
    Norman,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Slice,
    GenusBound {
        genus: u32,
    },
    NotCertified,
    /// A check inside the pipeline failed. This is a bug, not a statement
    /// about the knot.
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Slice => f.write_str("slice"),
            Verdict::GenusBound { genus } => write!(f, "genus-bound {genus}"),
            Verdict::NotCertified => f.write_str("not-certified"),
            Verdict::Failed => f.write_str("failed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckReport {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRun {
    /// Double points of the immersed disc bounded by the knot.
    pub double_points: usize,
    /// Extra double points added beyond the knot's clasp bound.
    pub padding: usize,
    pub tree: LBTree,
    pub tree_code: String,
    pub surface_embedding: SuitableEmbedding,
    pub disc_embedding: SuitableEmbedding,
    pub link: LinkDiagram,
    pub tubing: TubingResult,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub procedure: Procedure,
    pub category: String,
    pub knot: KnotRecord,
    pub bounds: ClaspBounds,
    pub manifold: Manifold,
    pub verdict: Verdict,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub run: Option<PipelineRun>,
}

impl Certificate {
    fn declined(procedure: Procedure, knot: &KnotRecord, bounds: ClaspBounds, m: &Manifold, reason: String) -> Self {
        Self {
            schema_version: CERTIFICATE_VERSION,
            procedure,
            category: "smooth".into(),
            knot: knot.clone(),
            bounds,
            manifold: m.clone(),
            verdict: Verdict::NotCertified,
            reason,
            run: None,
        }
    }

    /// Pretty JSON with a trailing newline; the exact bytes
    /// [`verify_certificate`] expects.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, TheoremError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn reports_pass(&self) -> bool {
        self.run.as_ref().is_none_or(|r| r.reports.iter().all(|c| c.passed))
    }
}

/// Dispatches on the manifold model.
pub fn certify(k: &KnotRecord, m: &Manifold) -> Result<Certificate, TheoremError> {
    match m.model {
        ManifoldModel::Plumbing { .. } => certify_slice_in_plumbing(k, m),
        ManifoldModel::ZeroSphere { .. } => certify_norman(k, m),
    }
}

struct Pipeline {
    plumbing: ImmersedSurface,
    tree: LBTree,
    surface_embedding: SuitableEmbedding,
    disc_embedding: SuitableEmbedding,
    oriented: bool,
}

/// Excises both embeddings, tubes them and records every check.
fn run_pipeline(p: Pipeline, double_points: usize, padding: usize) -> Result<PipelineRun, String> {
    let mut reports = Vec::new();
    for (name, e) in [("surface embedding", &p.surface_embedding), ("disc embedding", &p.disc_embedding)] {
        let r = verify_embedding(e);
        reports.push(CheckReport::new(name, r.is_ok(), if r.is_ok() { String::new() } else { r.to_string() }));
    }
    let disc = &p.disc_embedding.target;
    let ex_disc = excise(disc, &p.disc_embedding).map_err(|e| format!("excise disc: {e}"))?;
    let ex_surface = excise(&p.plumbing, &p.surface_embedding).map_err(|e| format!("excise surface: {e}"))?;
    let link = associated_link(&p.tree);
    let want = link.canonical_pd();
    for (name, l) in [("disc link", &ex_disc.link), ("surface link", &ex_surface.link)] {
        let ok = l.canonical_pd() == want;
        reports.push(CheckReport::new(name, ok, if ok { "" } else { "differs from the associated link" }));
    }
    let mut tubing = tube(&ex_disc, &ex_surface).map_err(|e| format!("tube: {e}"))?;
    let chi = tubing.surface.euler_characteristic();
    let expected = tubing.chi_before - 2 * link.component_count() as i64;
    reports.push(CheckReport::new(
        "euler characteristic",
        chi == expected && tubing.annuli_count == link.component_count(),
        format!("chi {chi}, expected {expected}"),
    ));
    reports.push(CheckReport::new(
        "double points removed",
        tubing.double_points == 0,
        format!("{} left", tubing.double_points),
    ));
    if p.oriented {
        let left = vec![1; tubing.left_circles];
        let right = vec![1; tubing.right_circles];
        match orient_result(&tubing, Some(&left), Some(&right)) {
            Ok(o) => {
                tubing = o;
                reports.push(CheckReport::new("orientation", true, ""));
            }
            Err(e) => reports.push(CheckReport::new("orientation", false, e.to_string())),
        }
    }
    Ok(PipelineRun {
        double_points,
        padding,
        tree_code: canonical_hex(&p.tree),
        tree: p.tree,
        surface_embedding: p.surface_embedding,
        disc_embedding: p.disc_embedding,
        link,
        tubing,
        reports,
    })
}

fn finish(
    mut cert: Certificate,
    run: Result<PipelineRun, String>,
    verdict: impl FnOnce(&PipelineRun) -> Result<Verdict, String>,
) -> Certificate {
    match run {
        Err(reason) => {
            cert.verdict = Verdict::Failed;
            cert.reason = reason;
        }
        Ok(mut run) => {
            match verdict(&run) {
                Ok(v) if run.reports.iter().all(|c| c.passed) => cert.verdict = v,
                Ok(_) => {
                    cert.verdict = Verdict::Failed;
                    let bad: Vec<&str> = run.reports.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                    cert.reason = format!("failed checks: {}", bad.join(", "));
                }
                Err(reason) => {
                    run.reports.push(CheckReport::new("result surface", false, reason.clone()));
                    cert.verdict = Verdict::Failed;
                    cert.reason = reason;
                }
            }
            cert.run = Some(run);
        }
    }
    cert
}

/// Slice in a plumbing of `n` spheres whenever `c4 <= n - 1`: tube an
/// immersed disc with `n - 1` double points (padded if the bound is
/// smaller) against the plumbing along the tree of the plumbing lemma.
pub fn certify_slice_in_plumbing(k: &KnotRecord, m: &Manifold) -> Result<Certificate, TheoremError> {
    let bounds = clasp_chain(k)?;
    let ManifoldModel::Plumbing { plumbing, .. } = &m.model else {
        return Err(TheoremError::WrongModel(m.name.clone(), "plumbing"));
    };
    if let Some(v) = plumbing.genus.iter().position(|&g| g > 0) {
        return Err(TheoremError::NotSpheres(plumbing.graph.id(v)));
    }
    let n = plumbing.vertex_count();
    let mut cert = Certificate::declined(Procedure::SliceInPlumbing, k, bounds, m, String::new());
    let c4 = match bounds.c4_upper {
        Some(c) if (c as usize) < n => c as usize,
        Some(c) => {
            cert.reason = format!("c4 bound {c} exceeds {} double points of the plumbing", n - 1);
            return Ok(cert);
        }
        None => {
            cert.reason = "no upper bound on c4".into();
            return Ok(cert);
        }
    };
    let surface = make_plumbing(plumbing);
    let (tree, surface_embedding) = embed_in_plumbing(&surface)?;
    let disc = make_immersed_disc_bounding(n - 1, &k.name);
    let run = embed_in_connected(&disc, &tree).map_err(|e| format!("embed in disc: {e}")).and_then(|disc_embedding| {
        run_pipeline(
            Pipeline { plumbing: surface, tree, surface_embedding, disc_embedding, oriented: false },
            n - 1,
            n - 1 - c4,
        )
    });
    cert.reason = format!("c4 <= {c4} <= {}", n - 1);
    Ok(finish(cert, run, |r| {
        if r.tubing.is_disc() {
            Ok(Verdict::Slice)
        } else {
            Err(format!("tubing result is not a disc: {:?}", r.tubing.surface.components))
        }
    }))
}

/// `n` parallel spheres each meeting the dual surface `S*` (vertex 0,
/// genus `g`) once.
pub fn norman_plumbing(dual_genus: u32, n: usize) -> PlumbingTree {
    let mut genus = vec![0; n + 1];
    genus[0] = dual_genus;
    let mut euler = vec![Some(0); n + 1];
    euler[0] = None;
    PlumbingTree::new(Tree::star(n + 1), genus, euler).expect("sizes agree")
}

/// The uniformly coloured path on the `n` double points of the Norman
/// plumbing, every edge running along `S*`.
fn norman_embedding(s: &ImmersedSurface, n: usize) -> SuitableEmbedding {
    let tree = LBTree::uniform(Tree::path(n));
    let edge_map = vec![EdgeAssignment { sides: [0, 0], carrier: 0 }; n.saturating_sub(1)];
    SuitableEmbedding { target: s.clone(), tree, vertex_map: (0..n).collect(), edge_map }
}

/// Genus bound `g(S*)` in a manifold with a 0-framed sphere whose dual has
/// genus `g`; `g = 0` is sliceness.
pub fn certify_norman(k: &KnotRecord, m: &Manifold) -> Result<Certificate, TheoremError> {
    let bounds = clasp_chain(k)?;
    let ManifoldModel::ZeroSphere { dual_genus, framing } = m.model else {
        return Err(TheoremError::WrongModel(m.name.clone(), "0-framed sphere"));
    };
    if framing != 0 {
        return Err(TheoremError::NonZeroFraming(framing));
    }
    let mut cert = Certificate::declined(Procedure::Norman, k, bounds, m, String::new());
    let Some(c4) = bounds.c4_upper else {
        cert.reason = "no upper bound on u or c4".into();
        return Ok(cert);
    };
    let n = (c4 as usize).max(1);
    let surface = make_plumbing(&norman_plumbing(dual_genus, n));
    let surface_embedding = norman_embedding(&surface, n);
    let tree = surface_embedding.tree.clone();
    let disc = make_immersed_disc_bounding(n, &k.name);
    let run = embed_in_connected(&disc, &tree).map_err(|e| format!("embed in disc: {e}")).and_then(|disc_embedding| {
        run_pipeline(
            Pipeline { plumbing: surface, tree, surface_embedding, disc_embedding, oriented: true },
            n,
            n - c4 as usize,
        )
    });
    cert.reason = format!("{n} parallel copies of the 0-framed sphere tubed to a disc with {n} double points");
    Ok(finish(cert, run, |r| {
        let c = classify(&r.tubing.surface).map_err(|e| e.to_string())?;
        if c.components != 1 || c.boundary != 1 || c.genus != dual_genus || r.tubing.double_points != 0 {
            return Err(format!("result has genus {}, {} boundary, {} components", c.genus, c.boundary, c.components));
        }
        Ok(if dual_genus == 0 { Verdict::Slice } else { Verdict::GenusBound { genus: dual_genus } })
    }))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckReport::new(name, passed, detail));
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Re-checks a serialized certificate: exact bytes, re-derivation from the
/// recorded inputs, and an independent pass over the recorded embeddings
/// and tubing. JSON that does not parse is an error.
pub fn verify_certificate(json: &str) -> Result<VerificationReport, TheoremError> {
    let cert = Certificate::from_json(json)?;
    let mut out = VerificationReport::default();
    out.check(
        "schema version",
        cert.schema_version == CERTIFICATE_VERSION,
        format!("found {}, expected {CERTIFICATE_VERSION}", cert.schema_version),
    );
    out.check("canonical bytes", cert.to_json() == json, "");
    match clasp_chain(&cert.knot) {
        Ok(b) => out.check("bounds", b == cert.bounds, ""),
        Err(e) => out.check("bounds", false, e.to_string()),
    }
    match certify(&cert.knot, &cert.manifold) {
        Ok(again) => out.check("re-derivation", again == cert, ""),
        Err(e) => out.check("re-derivation", false, e.to_string()),
    }
    out.check("recorded checks", cert.reports_pass(), "");
    if let Some(run) = &cert.run {
        recheck_run(&cert, run, &mut out);
    } else {
        out.check("verdict", cert.verdict == Verdict::NotCertified, cert.verdict.to_string());
    }
    Ok(out)
}

fn recheck_run(cert: &Certificate, run: &PipelineRun, out: &mut VerificationReport) {
    out.check("tree", validate_lbtree(&run.tree).is_ok() && canonical_hex(&run.tree) == run.tree_code, "");
    let expected_surface = match &cert.manifold.model {
        ManifoldModel::Plumbing { plumbing, .. } => make_plumbing(plumbing),
        ManifoldModel::ZeroSphere { dual_genus, .. } => make_plumbing(&norman_plumbing(*dual_genus, run.double_points)),
    };
    let se = &run.surface_embedding;
    let de = &run.disc_embedding;
    out.check("surface target", se.target == expected_surface, "");
    out.check("disc target", de.target == make_immersed_disc_bounding(run.double_points, &cert.knot.name), "");
    out.check("same tree", se.tree == run.tree && de.tree == run.tree, "");
    for (name, e) in [("surface embedding", se), ("disc embedding", de)] {
        let r = verify_embedding(e);
        out.check(name, r.is_ok(), if r.is_ok() { String::new() } else { r.to_string() });
    }
    out.check("link", associated_link(&run.tree) == run.link, "");
    let tubing =
        excise(&de.target, de).and_then(|a| excise(&se.target, se).map(|b| (a, b))).and_then(|(a, b)| tube(&a, &b));
    let tubing = match tubing {
        Ok(t) => t,
        Err(e) => {
            out.check("tubing", false, e.to_string());
            return;
        }
    };
    let mut recorded = run.tubing.clone();
    recorded.piece_orientation.clear();
    recorded.orientation_consistent = false;
    out.check("tubing", tubing == recorded, "");
    let chi = tubing.surface.euler_characteristic();
    out.check(
        "euler characteristic",
        chi == tubing.chi_before - 2 * run.link.component_count() as i64,
        format!("chi {chi} from {}", tubing.chi_before),
    );
    if cert.procedure == Procedure::Norman {
        let consistent = !run.tubing.piece_orientation.is_empty()
            && orient_result(&tubing, Some(&vec![1; tubing.left_circles]), Some(&vec![1; tubing.right_circles]))
                .is_ok_and(|o| o.piece_orientation == run.tubing.piece_orientation);
        out.check("orientation", consistent, "");
    }
    let verdict_ok = match cert.verdict {
        Verdict::Slice => tubing.is_disc(),
        Verdict::GenusBound { genus } => classify(&tubing.surface)
            .is_ok_and(|c| c.genus == genus && c.boundary == 1 && c.components == 1 && tubing.double_points == 0),
        Verdict::NotCertified | Verdict::Failed => false,
    };
    out.check("verdict", verdict_ok, cert.verdict.to_string());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(u: Option<u32>, c4: Option<u32>) -> KnotRecord {
        KnotRecord::new("K", u, c4, None)
    }

    #[test]
    fn k3_headline() {
        let c = certify_slice_in_plumbing(&knot(Some(21), None), &Manifold::k3()).unwrap();
        assert_eq!(c.verdict, Verdict::Slice);
        let run = c.run.as_ref().unwrap();
        assert_eq!(run.double_points, 21);
        assert_eq!(run.padding, 0);
        assert!(run.tubing.is_disc());
        assert!(verify_certificate(&c.to_json()).unwrap().passed());
    }

    #[test]
    fn k3_declines_large_bounds() {
        let c = certify_slice_in_plumbing(&knot(None, Some(30)), &Manifold::k3()).unwrap();
        assert_eq!(c.verdict, Verdict::NotCertified);
        assert!(c.run.is_none());
        assert!(verify_certificate(&c.to_json()).unwrap().passed());
    }

    #[test]
    fn padding_counts_extra_double_points() {
        let c = certify_slice_in_plumbing(&knot(Some(4), None), &Manifold::elliptic(5).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Slice);
        assert_eq!(c.run.unwrap().padding, 50);
    }

    #[test]
    fn norman_genus() {
        let c = certify_norman(&knot(Some(3), None), &Manifold::zero_sphere(2, 0)).unwrap();
        assert_eq!(c.verdict, Verdict::GenusBound { genus: 2 });
        let run = c.run.as_ref().unwrap();
        assert_eq!(run.tubing.surface.euler_characteristic(), 1 - 2 * 2);
        assert!(run.tubing.orientation_consistent);
        assert!(verify_certificate(&c.to_json()).unwrap().passed());
        let s = certify_norman(&knot(Some(5), None), &Manifold::s2_x_s2()).unwrap();
        assert_eq!(s.verdict, Verdict::Slice);
    }

    #[test]
    fn norman_needs_zero_framing() {
        let r = certify_norman(&knot(Some(1), None), &Manifold::zero_sphere(0, 1));
        assert!(matches!(r, Err(TheoremError::NonZeroFraming(1))));
    }

    #[test]
    fn tampering_is_caught() {
        let c = certify_slice_in_plumbing(
            &knot(Some(2), None),
            &Manifold::custom("P", PlumbingTree::spheres(Tree::path(4))),
        )
        .unwrap();
        let mut t = c.clone();
        t.run.as_mut().unwrap().tubing.annuli_count += 1;
        assert!(!verify_certificate(&t.to_json()).unwrap().passed());
        let json = c.to_json().replace('\n', "\r\n");
        assert!(!verify_certificate(&json).unwrap().passed());
        assert!(verify_certificate("{").is_err());
    }
}
