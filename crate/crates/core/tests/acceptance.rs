//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always print; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use plumbline::links::{
    amphichiral_evidence, associated_link, bracket_state_sum, kauffman_bracket_with, BracketOptions, LinkDiagram,
};
use plumbline::surfaces::{
    embed_in_connected, embed_in_plumbing, lift_forest, make_immersed_disc, make_plumbing, verify_embedding,
    ImmersedSurface, PlumbingTree, SuitableEmbedding,
};
use plumbline::theorems::{
    certify, certify_norman, e6_tilde, en_bound, k3_plumbing, verify_certificate, Manifold, Verdict,
};
use plumbline::trees::random::{random_lbtree, random_tree};
use plumbline::trees::{canonical_code, enumerate_lbtrees, LBTree, Tree, VertexId};
use plumbline::tubing::{classify, excise, tube};
use plumbline::unionfind::UnionFind;
use plumbline::KnotRecord;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k3_headline() -> Outcome {
    let cert = certify(&KnotRecord::new("synthetic", Some(21), None, None), &"K3".parse().unwrap())
        .map_err(|e| e.to_string())?;
    ensure(cert.verdict == Verdict::Slice, || format!("verdict {}", cert.verdict))?;
    let run = cert.run.as_ref().ok_or("no run recorded")?;
    let c = classify(&run.tubing.surface).map_err(|e| e.to_string())?;
    let got = (c.genus, c.boundary, c.components, run.tubing.double_points);
    ensure(got == (0, 1, 1, 0), || format!("(genus, boundary, components, double points) = {got:?}"))?;
    let report = verify_certificate(&cert.to_json()).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_string())?;
    Ok("u = 21: slice, result (0, 1, 1, 0)".into())
}

fn en_table() -> Outcome {
    for n in 2..=25u32 {
        let want = 11 * n - n.div_ceil(5);
        let got = en_bound(n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("en_bound({n}) = {got}, expected {want}"))?;
        let spheres = Manifold::elliptic(n).map_err(|e| e.to_string())?.sphere_count();
        ensure(spheres == Some(want as usize + 1), || format!("E({n}) has {spheres:?} spheres"))?;
    }
    ensure(en_bound(2).unwrap() == 21, || "en_bound(2) != 21".into())?;
    Ok("n = 2..25, en_bound(2) = 21".into())
}

fn k3_plumbing_shape() -> Outcome {
    let p = k3_plumbing();
    let g = &p.graph;
    ensure(g.vertex_count() == 22 && g.edge_count() == 21, || {
        format!("{} vertices, {} edges", g.vertex_count(), g.edge_count())
    })?;
    ensure(g.structural_violations().is_empty(), || "not a tree".into())?;
    let section = 0;
    let mut uf = UnionFind::new(22);
    for &(a, b) in g.edges() {
        if a != section && b != section {
            uf.union(a, b);
        }
    }
    let groups: Vec<Vec<usize>> = uf.groups().into_iter().filter(|c| !c.contains(&section)).collect();
    ensure(groups.len() == 3, || format!("{} components after deleting the section", groups.len()))?;
    let e6 = canonical_code(&LBTree::uniform(e6_tilde()));
    for comp in &groups {
        let ids: Vec<VertexId> = comp.iter().map(|&v| g.id(v)).collect();
        let edges: Vec<(VertexId, VertexId)> = g
            .edges()
            .iter()
            .filter(|(a, b)| comp.contains(a) && comp.contains(b))
            .map(|&(a, b)| (g.id(a), g.id(b)))
            .collect();
        let sub = Tree::new(ids, edges).map_err(|e| e.to_string())?;
        ensure(canonical_code(&LBTree::uniform(sub)) == e6, || format!("component {comp:?} is not E6"))?;
    }
    ensure(p.euler.iter().all(|&e| e == Some(-2)), || "Euler labels".into())?;
    Ok("22 vertices, 21 edges, three E6 fibres".into())
}

fn pipeline_chi(rng: &mut StdRng) -> Result<(), String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let (disc, disc_e, surf, surf_e, links) = if rng.gen_bool(0.7) {
        let n = rng.gen_range(2..=40);
        let s = make_plumbing(&PlumbingTree::spheres(random_tree(rng, n)));
        let (t, se) = embed_in_plumbing(&s).map_err(|e| err(&e))?;
        let d = make_immersed_disc(n - 1 + rng.gen_range(0..3));
        let de = embed_in_connected(&d, &t).map_err(|e| err(&e))?;
        (d, de, s, se, n)
    } else {
        let g = rng.gen_range(0..=10);
        let u = rng.gen_range(1..=30);
        let cert = certify_norman(&KnotRecord::new("K", Some(u), None, None), &Manifold::zero_sphere(g, 0))
            .map_err(|e| err(&e))?;
        let run = cert.run.ok_or("no run")?;
        let (d, s) = (run.disc_embedding.target.clone(), run.surface_embedding.target.clone());
        (d, run.disc_embedding, s, run.surface_embedding, u as usize + 1)
    };
    let a = excise(&disc, &disc_e).map_err(|e| err(&e))?;
    let b = excise(&surf, &surf_e).map_err(|e| err(&e))?;
    ensure(a.link.component_count() == links, || format!("|L| = {}, expected {links}", a.link.component_count()))?;
    let r = tube(&a, &b).map_err(|e| err(&e))?;
    let union = disc.domain.euler_characteristic() + surf.domain.euler_characteristic();
    let chi = r.surface.euler_characteristic();
    ensure(chi == union - 2 * links as i64, || format!("chi {chi}, union {union}, |L| {links}"))
}

fn chi_law() -> Outcome {
    let mut rng = StdRng::seed_from_u64(500);
    for i in 0..500 {
        pipeline_chi(&mut rng).map_err(|e| format!("pipeline {i}: {e}"))?;
    }
    Ok("500 pipelines".into())
}

fn uf_components(l: &LinkDiagram) -> usize {
    let max = l.max_arc().unwrap_or(0) as usize;
    let mut uf = UnionFind::new(max + 1);
    let mut used = BTreeSet::new();
    for c in l.crossings() {
        let a = c.arcs.map(|x| x as usize);
        used.extend(a);
        uf.union(a[0], a[2]);
        uf.union(a[1], a[3]);
    }
    let roots: BTreeSet<usize> = used.iter().map(|&x| uf.find(x)).collect();
    roots.len() + l.loops().len()
}

fn component_check(t: &LBTree) -> Result<(), String> {
    let k = t.vertex_count();
    let l = associated_link(t);
    let oracle = uf_components(&l);
    let e = embed_in_connected(&make_immersed_disc(k), t).map_err(|e| e.to_string())?;
    let lift = lift_forest(&e).component_count();
    ensure(l.component_count() == k + 1 && oracle == k + 1 && lift == k + 1, || {
        format!("k = {k}: link {}, oracle {oracle}, lift {lift}", l.component_count())
    })
}

fn component_law() -> Outcome {
    let mut exhaustive = 0;
    for k in 1..=7 {
        for t in enumerate_lbtrees(k) {
            component_check(&t)?;
            exhaustive += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(1000);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=40);
        component_check(&random_lbtree(&mut rng, k))?;
    }
    Ok(format!("{exhaustive} canonical trees + 1000 random"))
}

fn mirror_evidence() -> Outcome {
    let opts = BracketOptions::default();
    let trees: Vec<LBTree> = (1..=6).flat_map(enumerate_lbtrees).collect();
    let count = trees.len();
    trees.par_iter().try_for_each(|t| -> Result<(), String> {
        let l = associated_link(t);
        let fast = kauffman_bracket_with(&l, &opts).map_err(|e| e.to_string())?;
        let naive = bracket_state_sum(&l, l.crossing_count()).map_err(|e| e.to_string())?;
        ensure(fast == naive, || format!("fast {fast} != naive {naive}"))?;
        let r = amphichiral_evidence(&l, &opts).map_err(|e| e.to_string())?;
        ensure(r.passes && r.orientations == 1 << l.component_count(), || format!("evidence fails on {t:?}"))
    })?;
    Ok(format!("{count} trees, all orientations"))
}

fn norman_genus() -> Outcome {
    let cases: Vec<(u32, u32)> = (0..=10).flat_map(|g| (0..=30).map(move |u| (g, u))).collect();
    cases.par_iter().try_for_each(|&(g, u)| -> Result<(), String> {
        let cert = certify_norman(&KnotRecord::new("K", Some(u), None, None), &Manifold::zero_sphere(g, 0))
            .map_err(|e| e.to_string())?;
        let want = if g == 0 { Verdict::Slice } else { Verdict::GenusBound { genus: g } };
        ensure(cert.verdict == want, || format!("g {g}, u {u}: {}", cert.verdict))?;
        let run = cert.run.as_ref().ok_or("no run")?;
        let c = classify(&run.tubing.surface).map_err(|e| e.to_string())?;
        ensure(c.genus == g && c.boundary == 1 && c.components == 1, || format!("g {g}, u {u}: {c:?}"))?;
        ensure(run.tubing.orientation_consistent, || format!("g {g}, u {u}: orientation"))
    })?;
    Ok(format!("{} (g, u) pairs", cases.len()))
}

fn contractible(s: &ImmersedSurface, e: &SuitableEmbedding) -> bool {
    let dps = s.double_point_count();
    (0..s.component_count()).all(|c| {
        let on: Vec<usize> = (0..dps).filter(|&d| s.double_points[d].slots.iter().any(|x| x.component == c)).collect();
        let mut uf = UnionFind::new(dps);
        let mut carried = 0;
        for (f, a) in e.edge_map.iter().enumerate() {
            if a.carrier == c {
                let (x, y) = e.tree.tree().endpoints(f);
                if !uf.union(e.vertex_map[x], e.vertex_map[y]) {
                    return false;
                }
                carried += 1;
            }
        }
        carried + 1 == on.len() && on.iter().all(|&d| uf.same(d, on[0]))
    })
}

fn embedding_lemmas() -> Outcome {
    let mut rng = StdRng::seed_from_u64(40);
    for i in 0..1000 {
        let n = rng.gen_range(2..=40);
        let s = make_plumbing(&PlumbingTree::spheres(random_tree(&mut rng, n)));
        let (t, e) = embed_in_plumbing(&s).map_err(|e| format!("plumbing {i}: {e}"))?;
        ensure(t.vertex_count() == n - 1, || format!("plumbing {i}: {} vertices", t.vertex_count()))?;
        ensure(verify_embedding(&e).is_ok(), || format!("plumbing {i}: unverified"))?;
        ensure(contractible(&s, &e), || format!("plumbing {i}: not contractible"))?;
    }
    let mut pairs = 0;
    for l in 1..=6 {
        for t in enumerate_lbtrees(l) {
            for m in l..=8 {
                let e = embed_in_connected(&make_immersed_disc(m), &t).map_err(|e| format!("l {l}, m {m}: {e}"))?;
                ensure(verify_embedding(&e).is_ok(), || format!("l {l}, m {m}: unverified"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("1000 plumbings, {pairs} (tree, disc) pairs"))
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters from the harness are not supported
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria = [
        Criterion { name: "K3 headline", limit: Duration::from_secs(1), run: k3_headline },
        Criterion { name: "E(n) bound table", limit: Duration::from_secs(1), run: en_table },
        Criterion { name: "K3 plumbing shape", limit: Duration::MAX, run: k3_plumbing_shape },
        Criterion { name: "chi law", limit: Duration::from_secs(30), run: chi_law },
        Criterion { name: "component-count law", limit: Duration::from_secs(60), run: component_law },
        Criterion { name: "mirror evidence", limit: Duration::from_secs(300), run: mirror_evidence },
        Criterion { name: "Norman genus", limit: Duration::from_secs(30), run: norman_genus },
        Criterion { name: "embedding lemmas", limit: Duration::from_secs(120), run: embedding_lemmas },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= c.limit => format!("PASS {} ({detail}; {:.2}s)", c.name, elapsed.as_secs_f64()),
            Ok(detail) => format!(
                "FAIL {} (over time: {:.2}s > {:.0}s; {detail})",
                c.name,
                elapsed.as_secs_f64(),
                c.limit.as_secs_f64()
            ),
            Err(e) => format!("FAIL {} ({e}; {:.2}s)", c.name, elapsed.as_secs_f64()),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
