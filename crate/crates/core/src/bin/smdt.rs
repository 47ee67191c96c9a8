use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semimatroid_dt::broken_circuit::{bc_complex, critical_nbc, f_polynomial, NbcOrder};
use semimatroid_dt::collapse::{collapse_to_bc, CollapseSequence};
use semimatroid_dt::complex::Complex;
use semimatroid_dt::error::Error;
use semimatroid_dt::generators::{
    bipartite_complex, random_semimatroid, semimatroid_from_arrangement, Arrangement, Graph, RandomKind,
};
use semimatroid_dt::homology::{poincare_from_homology, reduced_betti};
use semimatroid_dt::io::{self, JsonFormat};
use semimatroid_dt::semimatroid::{Semimatroid, Strategy, Target};
use semimatroid_dt::suite::run_suite;
use semimatroid_dt::tree::evasive_polynomial;

#[derive(Parser)]
#[command(name = "smdt", version, about = "Decision trees, Tutte polynomials and collapses for semimatroids")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Sum,
    Recurrence,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Closed,
    Homology,
    Tree,
}

#[derive(Subcommand)]
enum Command {
    /// Tutte polynomial of a semimatroid file.
    Tutte {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "sum")]
        method: Method,
        #[arg(long, default_value = "any")]
        strategy: Strategy,
    },
    /// Build the decision tree for the rank, nullity or constant map.
    Dectree {
        file: PathBuf,
        #[arg(long)]
        target: Target,
        #[arg(long, default_value = "any")]
        strategy: Strategy,
        /// Write the tree here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Poincaré polynomial in q and x.
    Poincare {
        file: PathBuf,
        #[arg(long)]
        target: Target,
        #[arg(long, value_enum, default_value = "closed")]
        via: Via,
        /// Compute all three ways and fail unless they agree.
        #[arg(long)]
        check_all: bool,
    },
    /// Broken circuit complex, its f-polynomial and critical nbc sets.
    Bc {
        file: PathBuf,
        /// Element labels from smallest to largest, comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Collapse the complex onto its broken circuit complex.
    Collapse {
        file: PathBuf,
        /// Write the collapse sequence here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the residual complex here.
        #[arg(long)]
        residual: Option<PathBuf>,
    },
    /// Replay a collapse sequence on a complex, checking every step.
    VerifyCollapse { complex: PathBuf, sequence: PathBuf },
    /// Reduced integral homology of a complex file.
    Homology { complex: PathBuf },
    /// Semimatroid of an affine hyperplane arrangement.
    FromArrangement {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Semimatroid of a graph: its graphic matroid, or the bipartite-subgraph complex.
    FromGraph {
        file: PathBuf,
        #[arg(long)]
        bipartite: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every check on a semimatroid file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trees per target for the Morse inequalities.
        #[arg(long, default_value_t = 20)]
        trees: usize,
    },
    /// Seeded random semimatroid.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "arrangement")]
        kind: RandomKind,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Result of one subcommand: text for people, JSON for machines, and whether every check held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json, ok: true }
    }
}

enum Failure {
    /// Bad input: exit 2 with a message on stderr.
    Input(Error),
    /// A violated invariant: exit 1 with a JSON witness on stdout.
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::Schedule(_) | Error::Precondition(_) => {
                Failure::Check(json!({ "error": kind(&e), "message": e.to_string() }))
            }
            other => Failure::Input(other),
        }
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Invariant(_) => "invariant",
        Error::Schedule(_) => "schedule",
        Error::Precondition(_) => "precondition",
        _ => "input",
    }
}

type Run = Result<Outcome, Failure>;

fn load_semimatroid(path: &Path) -> Result<Semimatroid, Failure> {
    let s: Semimatroid = io::read_file(path)?;
    let violations = s.check_axioms();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().take(10).map(|v| v.to_string()).collect();
        return Err(Failure::Check(json!({ "error": "axioms", "violations": violations.len(), "first": list })));
    }
    Ok(s)
}

fn write_or_embed<T: JsonFormat>(path: &Option<PathBuf>, x: &T, key: &str, out: &mut Value) -> Result<(), Failure> {
    match path {
        Some(p) => {
            io::write_file(p, x)?;
            out[key] = json!(p.display().to_string());
        }
        None => out[key] = x.to_json(),
    }
    Ok(())
}

fn faces(c: &Complex) -> Vec<String> {
    c.facets().into_iter().map(|f| c.ground().format_face(f)).collect()
}

fn tutte(file: &Path, method: Method, strategy: Strategy) -> Run {
    let s = load_semimatroid(file)?;
    let t = match method {
        Method::Sum => s.tutte_sum(),
        Method::Recurrence => s.tutte_recurrence(strategy),
    };
    Ok(Outcome::ok(t.to_string(), json!({ "tutte": t.to_string() })))
}

fn dectree(file: &Path, target: Target, strategy: Strategy, output: &Option<PathBuf>) -> Run {
    let s = load_semimatroid(file)?;
    let t = s.build_tree(target, strategy);
    let ev = evasive_polynomial(&t, &s.target_map(target))?;
    let mut j = json!({ "evasive_polynomial": ev.to_string(), "depth": t.depth(), "nodes": t.node_count() });
    write_or_embed(output, &t, "tree", &mut j)?;
    let mut text = format!("evasive polynomial: {ev}\ndepth {}, {} nodes", t.depth(), t.node_count());
    match output {
        Some(p) => text += &format!("\ntree written to {}", p.display()),
        None => text += &format!("\n{}", io::to_string_pretty(&t)),
    }
    Ok(Outcome::ok(text, j))
}

fn poincare(file: &Path, target: Target, via: Via, check_all: bool) -> Run {
    let s = load_semimatroid(file)?;
    let f = s.target_map(target);
    let closed = || s.poincare_closed(target);
    let homology = || poincare_from_homology(&f).map(|h| h.polynomial);
    let tree = || evasive_polynomial(&s.build_tree(target, Strategy::Any), &f);
    if check_all {
        let (c, h, t) = (closed()?, homology()?, tree()?);
        let j = json!({ "closed": c.to_string(), "homology": h.to_string(), "tree": t.to_string() });
        if c != h || c != t {
            return Err(Failure::Check(json!({ "error": "poincare mismatch", "values": j })));
        }
        return Ok(Outcome::ok(c.to_string(), json!({ "poincare": c.to_string(), "agree": true })));
    }
    let p = match via {
        Via::Closed => closed()?,
        Via::Homology => homology()?,
        Via::Tree => tree()?,
    };
    Ok(Outcome::ok(p.to_string(), json!({ "poincare": p.to_string() })))
}

fn bc(file: &Path, order: &Option<Vec<String>>, output: &Option<PathBuf>) -> Run {
    let s = load_semimatroid(file)?;
    let order = match order {
        None => NbcOrder::natural(&s),
        Some(labels) => {
            let seq = labels
                .iter()
                .map(|l| s.ground().index_of(l.trim()).ok_or_else(|| Error::Argument(format!("unknown element {l:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            NbcOrder::new(&s, seq)?
        }
    };
    let b = bc_complex(&s, &order);
    let fp = f_polynomial(&b.complex);
    let critical = critical_nbc(&s, &order);
    let mut j = json!({
        "f_polynomial": fp.to_string(),
        "critical_nbc": critical.len(),
        "void": b.complex.is_void(),
    });
    write_or_embed(output, &b.complex, "complex", &mut j)?;
    let facets = if b.complex.is_void() { "void".to_string() } else { faces(&b.complex).join(" ") };
    let text = format!("facets: {facets}\nf-polynomial: {fp}\ncritical nbc sets: {}", critical.len());
    Ok(Outcome::ok(text, j))
}

fn collapse(file: &Path, output: &Option<PathBuf>, residual: &Option<PathBuf>) -> Run {
    let s = load_semimatroid(file)?;
    let (seq, bc) = collapse_to_bc(&s)?;
    let rest = seq.replay(s.complex())?;
    let mut j = json!({ "steps": seq.len(), "bc_void": bc.complex.is_void() });
    write_or_embed(output, &seq, "sequence", &mut j)?;
    write_or_embed(residual, &rest, "residual", &mut j)?;
    let text = format!("{} elementary collapses\nresidual facets: {}", seq.len(), faces(&rest).join(" "));
    Ok(Outcome::ok(text, j))
}

fn verify_collapse(complex: &Path, sequence: &Path) -> Run {
    let c: Complex = io::read_file(complex)?;
    let seq: CollapseSequence = io::read_file(sequence)?;
    let rest = seq.replay(&c)?;
    let text = format!("{} steps replayed\nresidual facets: {}", seq.len(), faces(&rest).join(" "));
    Ok(Outcome::ok(text, json!({ "valid": true, "steps": seq.len(), "residual": rest.to_json() })))
}

fn homology(complex: &Path) -> Run {
    let c: Complex = io::read_file(complex)?;
    let b = reduced_betti(&c)?;
    let mut lines = Vec::new();
    for (d, x) in &b.betti {
        let torsion = &b.torsion[d];
        if *x > 0 || !torsion.is_empty() {
            lines.push(format!("degree {d}: rank {x} torsion {torsion:?}"));
        }
    }
    if lines.is_empty() {
        lines.push("acyclic".into());
    }
    Ok(Outcome::ok(lines.join("\n"), b.to_json()))
}

fn emit_semimatroid(s: &Semimatroid, output: &Option<PathBuf>) -> Run {
    match output {
        Some(p) => {
            io::write_file(p, s)?;
            let text = format!(
                "wrote {} ({} elements, {} faces, rank {})",
                p.display(),
                s.elements().len(),
                s.complex().len(),
                s.rank()
            );
            Ok(Outcome::ok(text, json!({ "written": p.display().to_string() })))
        }
        None => Ok(Outcome::ok(io::to_string_pretty(s), s.to_json())),
    }
}

fn from_graph(file: &Path, bipartite: bool, output: &Option<PathBuf>) -> Run {
    let g: Graph = io::read_file(file)?;
    let s = if bipartite {
        bipartite_complex(&g)?.1
    } else {
        let m = semimatroid_dt::generators::matroid_make(&semimatroid_dt::generators::MatroidKind::Graphic(g))?;
        m.as_semimatroid()
    };
    emit_semimatroid(&s, output)
}

fn verify(file: &Path, seed: u64, trees: usize) -> Run {
    let s: Semimatroid = io::read_file(file)?;
    let report = run_suite(&s, seed, trees);
    let mut lines: Vec<String> =
        report.checks.iter().map(|c| format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)).collect();
    for c in report.failures() {
        lines.push(format!("{}: {}", c.name, c.detail));
    }
    for n in &report.notes {
        lines.push(format!("note: {n}"));
    }
    Ok(Outcome { text: lines.join("\n"), json: report.to_json(), ok: report.passed() })
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.command {
        Command::Tutte { file, method, strategy } => tutte(file, *method, *strategy),
        Command::Dectree { file, target, strategy, output } => dectree(file, *target, *strategy, output),
        Command::Poincare { file, target, via, check_all } => poincare(file, *target, *via, *check_all),
        Command::Bc { file, order, output } => bc(file, order, output),
        Command::Collapse { file, output, residual } => collapse(file, output, residual),
        Command::VerifyCollapse { complex, sequence } => verify_collapse(complex, sequence),
        Command::Homology { complex } => homology(complex),
        Command::FromArrangement { file, output } => {
            let a: Arrangement = io::read_file(file)?;
            emit_semimatroid(&semimatroid_from_arrangement(&a)?, output)
        }
        Command::FromGraph { file, bipartite, output } => from_graph(file, *bipartite, output),
        Command::Verify { file, seed, trees } => verify(file, *seed, *trees),
        Command::Random { seed, kind, n, output } => emit_semimatroid(&random_semimatroid(*seed, *kind, *n)?, output),
    }
}

// A closed pipe on stdout is not an error worth reporting.
fn print(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_json(v: &Value) {
    print(&serde_json::to_string_pretty(v).expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                print_json(&out.json);
            } else {
                print(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(witness)) => {
            print_json(&witness);
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
