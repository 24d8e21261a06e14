use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use plumbline::links::{
    associated_link, associated_link_svg, bracket_state_sum, jones_with, kauffman_bracket_with, parse_pd, write_pd,
    BracketOptions, LaurentPoly,
};
use plumbline::surfaces::{embed_in_plumbing, make_plumbing, parse_plumbing_text, PlumbingTree};
use plumbline::theorems::{certify, verify_certificate, Certificate, Manifold, Verdict};
use plumbline::trees::{compatible_bicolouring, parse_tree_text, write_tree_text, LBTree, Tree};
use plumbline::{load_knot_csv, KnotRecord};

const EXIT_DECLINED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Tubing constructions and sliceness certificates for knots in plumbings.
#[derive(Parser)]
#[command(name = "plumbline", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Associated link of a locally bipartitioned tree, as PD code.
    AssocLink {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the PD code here instead of stdout.
        #[arg(long)]
        pd: Option<PathBuf>,
    },
    /// A bicolouring compatible with the tree's bipartitions.
    Bicolour {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Tree and suitable embedding of a sphere plumbing, as JSON.
    Embed {
        #[arg(long)]
        plumbing: PathBuf,
    },
    /// One certificate per knot table row.
    Certify {
        #[arg(long)]
        knots: PathBuf,
        /// K3, E:n, zero-sphere:g, S2xS2 or CP2#-CP2.
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a certificate from its JSON alone.
    VerifyCertificate { file: PathBuf },
    /// Kauffman bracket and Jones polynomial of a PD code.
    Invariants {
        #[arg(long)]
        pd: PathBuf,
        #[arg(long)]
        jones: bool,
        #[arg(long)]
        bracket: bool,
    },
    /// Timing table for state sums and pipelines.
    Bench {
        /// bracket, pipelines or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// An error carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure { code: EXIT_INPUT, error: e.into() }
}

fn internal<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure { code: EXIT_INTERNAL, error: e.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(input)
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display())).map_err(input)
}

fn read_tree(path: &Path) -> Result<LBTree, Failure> {
    parse_tree_text(&read(path)?).with_context(|| path.display().to_string()).map_err(input)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::AssocLink { tree, svg, pd } => {
            let t = read_tree(&tree)?;
            let text = write_pd(&associated_link(&t));
            match pd {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            if let Some(p) = svg {
                write(&p, &associated_link_svg(&t))?;
            }
            Ok(0)
        }
        Command::Bicolour { tree } => {
            let t = read_tree(&tree)?;
            print!("{}", write_tree_text(t.tree(), &compatible_bicolouring(&t)));
            Ok(0)
        }
        Command::Embed { plumbing } => {
            let p = parse_plumbing_text(&read(&plumbing)?).map_err(input)?;
            let (tree, embedding) = embed_in_plumbing(&make_plumbing(&p)).map_err(input)?;
            let out = serde_json::json!({ "tree": tree, "embedding": embedding });
            println!("{}", serde_json::to_string_pretty(&out).map_err(internal)?);
            Ok(0)
        }
        Command::Certify { knots, manifold, out } => certify_table(&knots, &manifold, &out),
        Command::VerifyCertificate { file } => {
            let json = read(&file)?;
            let report = verify_certificate(&json).map_err(input)?;
            print!("{report}");
            if report.passed() {
                println!("certificate OK");
                Ok(0)
            } else {
                println!("certificate FAILED");
                Ok(EXIT_INTERNAL)
            }
        }
        Command::Invariants { pd, jones, bracket } => {
            let l = parse_pd(&read(&pd)?).with_context(|| pd.display().to_string()).map_err(input)?;
            let opts = BracketOptions::from_env();
            let (jones, bracket) = if jones || bracket { (jones, bracket) } else { (l.is_oriented(), true) };
            if bracket {
                println!("bracket: {}", kauffman_bracket_with(&l, &opts).map_err(input)?.format_in_a());
            }
            if jones {
                println!("jones: {}", format_jones(&jones_with(&l, &opts).map_err(input)?));
            }
            Ok(0)
        }
        Command::Bench { suite } => bench(&suite),
    }
}

fn format_jones(p: &LaurentPoly) -> String {
    p.format_in_t().unwrap_or_else(|| p.format_in_a())
}

/// Certificate file name: the knot name with anything outside
/// `[A-Za-z0-9._-]` replaced, prefixed by the row index to keep names
/// distinct.
fn certificate_name(i: usize, k: &KnotRecord) -> String {
    let name: String =
        k.name.chars().map(|c| if c.is_ascii_alphanumeric() || "._-".contains(c) { c } else { '_' }).collect();
    format!("{i:04}_{name}.json")
}

fn certify_table(knots: &Path, manifold: &str, out: &Path) -> Result<u8, Failure> {
    let m: Manifold = manifold.parse().map_err(input)?;
    let table = load_knot_csv(knots).map_err(input)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display())).map_err(input)?;
    for r in &table.rejects {
        eprintln!("rejected {}: {}", r.source, r.reason);
    }
    let results: Vec<Result<(String, Certificate), String>> = table
        .records
        .par_iter()
        .enumerate()
        .map(|(i, k)| {
            let cert = certify(k, &m).map_err(|e| format!("{}: {e}", k.source))?;
            let name = certificate_name(i, k);
            fs::write(out.join(&name), cert.to_json()).map_err(|e| format!("{name}: {e}"))?;
            Ok((name, cert))
        })
        .collect();
    let mut code = 0;
    if !table.rejects.is_empty() {
        code = EXIT_INPUT;
    }
    for r in &results {
        match r {
            Ok((name, cert)) => {
                println!("{name}\t{}\t{}", cert.knot.name, cert.verdict);
                code = code.max(match cert.verdict {
                    Verdict::Slice | Verdict::GenusBound { .. } => 0,
                    Verdict::NotCertified => EXIT_DECLINED,
                    Verdict::Failed => EXIT_INTERNAL,
                });
            }
            Err(e) => {
                eprintln!("error: {e}");
                code = code.max(EXIT_INPUT);
            }
        }
    }
    Ok(code)
}

fn bench(suite: &str) -> Result<u8, Failure> {
    let (brackets, pipelines) = match suite {
        "bracket" => (true, false),
        "pipelines" => (false, true),
        "all" => (true, true),
        other => return Err(input(anyhow::anyhow!("unknown suite `{other}` (bracket, pipelines, all)"))),
    };
    println!("{:<28} {:>10} {:>12}", "case", "size", "millis");
    if brackets {
        for k in [2usize, 4, 6, 8] {
            let l = associated_link(&LBTree::uniform(Tree::path(k)));
            let size = l.crossing_count();
            let t = Instant::now();
            bracket_state_sum(&l, size).map_err(internal)?;
            row("bracket naive (path)", size, t);
            let t = Instant::now();
            kauffman_bracket_with(&l, &BracketOptions::default()).map_err(internal)?;
            row("bracket factored (path)", size, t);
        }
    }
    if pipelines {
        let knot = KnotRecord::new("bench", Some(0), None, None);
        let mut cases: Vec<(&str, Manifold)> = vec![("K3", Manifold::k3())];
        for n in [10usize, 40] {
            cases.push(("path plumbing", Manifold::custom("path", PlumbingTree::spheres(Tree::path(n)))));
            cases.push(("star plumbing", Manifold::custom("star", PlumbingTree::spheres(Tree::star(n)))));
        }
        for n in [3, 10] {
            cases.push(("E(n)", Manifold::elliptic(n).map_err(internal)?));
        }
        for (label, m) in &cases {
            let t = Instant::now();
            certify(&knot, m).map_err(internal)?;
            row(label, m.sphere_count().unwrap_or(0), t);
        }
        for g in [0u32, 10] {
            let t = Instant::now();
            certify(&KnotRecord::new("bench", Some(30), None, None), &Manifold::zero_sphere(g, 0)).map_err(internal)?;
            row(&format!("norman g={g}"), 30, t);
        }
    }
    Ok(0)
}

fn row(label: &str, size: usize, t: Instant) {
    println!("{label:<28} {size:>10} {:>12.3}", t.elapsed().as_secs_f64() * 1e3);
}
