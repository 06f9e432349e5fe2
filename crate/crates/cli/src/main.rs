use clap::{Args, Parser, Subcommand};
use pseudovis::corpus::{run_corpus, CorpusConfig, CorpusError};
use pseudovis::geometry::{
    check_lemma1, check_lemma2, check_lemma3, random_simple_polygon, GeometryError, LemmaReport,
    Oracle,
};
use pseudovis::recognizer::{find_assignment_with, SearchConfig, DEFAULT_BUDGET};
use pseudovis::vertex_edge::{build_ve, check_theorem1, Theorem1Instance};
use pseudovis::{
    all_candidates, verify, AssignmentFile, BlockerAssignment, GraphFile, PolygonFile, Verdict,
    VerdictFile, VisGraph,
};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pseudovis",
    version,
    about = "Pseudo-polygon visibility graph recognition"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search for a blocker assignment satisfying every necessary condition.
    Recognize {
        graph: PathBuf,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Ground truth computed from a straight-line polygon.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Generate random simple polygons.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of polygons, with seeds `seed, seed + 1, ...`. With more
        /// than one, `--out` names a directory.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run every property check over a random polygon corpus.
    Corpus {
        #[arg(long, default_value_t = 500)]
        count: usize,
        /// Polygon sizes as `min..max`, both inclusive.
        #[arg(long = "n-range", visible_alias = "n", default_value = "5..12", value_parser = parse_range)]
        n_range: (usize, usize),
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Verify an assignment against a graph.
    Check {
        graph: PathBuf,
        /// Assignment file, or a verdict file from `recognize`.
        assignment: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Render a graph in DOT: cycle edges solid, chords dashed.
    ExportDot {
        graph: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Visibility graph.
    Visgraph {
        polygon: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Designated blocker of every invisible pair.
    Blockers {
        polygon: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Vertex-edge visibility.
    Ve {
        polygon: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Structural property checks.
    Lemmas {
        polygon: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected min..max, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

/// Failure carrying its exit code.
struct Fail(u8, String);

type Res = Result<u8, Fail>;

fn input<E: std::fmt::Display>(e: E) -> Fail {
    Fail(INPUT_ERROR, e.to_string())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Fail> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<VisGraph, Fail> {
    read_json::<GraphFile>(path)?
        .to_graph()
        .map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_polygon(path: &Path) -> Result<pseudovis::Polygon, Fail> {
    read_json::<PolygonFile>(path)?
        .to_polygon()
        .map_err(|e| input(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AssignmentInput {
    Plain(AssignmentFile),
    Verdict { assignment: AssignmentFile },
}

fn read_assignment(path: &Path) -> Result<BlockerAssignment, Fail> {
    Ok(match read_json::<AssignmentInput>(path)? {
        AssignmentInput::Plain(f) | AssignmentInput::Verdict { assignment: f } => f.to_assignment(),
    })
}

fn emit(out: &Output, text: &str) -> Result<(), Fail> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.out {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: &Output, value: &T) -> Result<(), Fail> {
    emit(out, &serde_json::to_string(value).expect("serializable"))
}

#[derive(Serialize)]
struct Theorem1Summary {
    passed: bool,
    instances: usize,
    failures: Vec<Theorem1Instance>,
}

#[derive(Serialize)]
struct RecognizeOutput {
    #[serde(flatten)]
    verdict: VerdictFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem1: Option<Theorem1Summary>,
}

#[derive(Serialize)]
struct Indeterminate {
    verdict: &'static str,
    budget: u64,
}

fn recognize(graph: &Path, budget: u64, out: &Output) -> Res {
    let g = read_graph(graph)?;
    let cfg = SearchConfig {
        budget: Some(budget),
        ..SearchConfig::default()
    };
    let verdict = match find_assignment_with(&g, &cfg) {
        Ok((v, _)) => v,
        Err(_) => {
            emit_json(
                out,
                &Indeterminate {
                    verdict: "budget_exceeded",
                    budget,
                },
            )?;
            return Ok(BUDGET);
        }
    };
    let theorem1 = match &verdict {
        Verdict::Accepted { assignment } => {
            let ve = build_ve(&g, assignment).expect("accepted assignments verify");
            let r = check_theorem1(&ve, &g, &all_candidates(&g));
            Some(Theorem1Summary {
                passed: r.passed(),
                instances: r.instances.len(),
                failures: r.failures().cloned().collect(),
            })
        }
        Verdict::Rejected { .. } => None,
    };
    let code = match (&verdict, &theorem1) {
        (Verdict::Accepted { .. }, Some(t)) if t.passed => ACCEPT,
        _ => REJECT,
    };
    emit_json(
        out,
        &RecognizeOutput {
            verdict: verdict.to_file(),
            theorem1,
        },
    )?;
    Ok(code)
}

#[derive(Serialize)]
struct LemmaOutput {
    passed: bool,
    lemma1: LemmaReport,
    lemma2: LemmaReport,
    lemma3: LemmaReport,
}

fn oracle(what: &OracleCmd) -> Res {
    let (OracleCmd::Visgraph { polygon, out }
    | OracleCmd::Blockers { polygon, out }
    | OracleCmd::Ve { polygon, out }
    | OracleCmd::Lemmas { polygon, out }) = what;
    let p = read_polygon(polygon)?;
    let o = Oracle::new(&p);
    match what {
        OracleCmd::Visgraph { .. } => emit_json(out, &o.graph().to_file())?,
        OracleCmd::Blockers { .. } => {
            let a = o.blockers().map_err(|e| Fail(REJECT, e.to_string()))?;
            emit_json(out, &a.to_file())?;
        }
        OracleCmd::Ve { .. } => emit_json(out, &o.ve_graph().to_file())?,
        OracleCmd::Lemmas { .. } => {
            let (lemma1, lemma2, lemma3) = (check_lemma1(&o), check_lemma2(&o), check_lemma3(&o));
            let passed = lemma1.passed() && lemma2.passed() && lemma3.passed();
            emit_json(
                out,
                &LemmaOutput {
                    passed,
                    lemma1,
                    lemma2,
                    lemma3,
                },
            )?;
            return Ok(if passed { ACCEPT } else { REJECT });
        }
    }
    Ok(ACCEPT)
}

fn gen_err(e: GeometryError) -> Fail {
    match e {
        GeometryError::GenerationBudgetExceeded { .. } => Fail(BUDGET, e.to_string()),
        e => input(e),
    }
}

fn gen(n: usize, seed: u64, count: u64, out: &Output) -> Res {
    if count <= 1 {
        let p = random_simple_polygon(n, seed).map_err(gen_err)?;
        emit_json(out, &p.to_file())?;
        return Ok(ACCEPT);
    }
    match &out.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
            for s in seed..seed + count {
                let p = random_simple_polygon(n, s).map_err(gen_err)?;
                let text = serde_json::to_string(&p.to_file()).expect("serializable") + "\n";
                let path = dir.join(format!("polygon-n{n}-seed{s}.json"));
                fs::write(&path, text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            }
        }
        None => {
            for s in seed..seed + count {
                let p = random_simple_polygon(n, s).map_err(gen_err)?;
                println!(
                    "{}",
                    serde_json::to_string(&p.to_file()).expect("serializable")
                );
            }
        }
    }
    Ok(ACCEPT)
}

fn corpus(
    count: usize,
    (n_min, n_max): (usize, usize),
    seed: u64,
    budget: u64,
    out: &Output,
) -> Res {
    let cfg = CorpusConfig {
        count,
        n_min,
        n_max,
        seed,
        budget: Some(budget),
    };
    let report = run_corpus(&cfg).map_err(|e| match e {
        CorpusError::BadRange(..) => input(e),
        CorpusError::Generation(g) => gen_err(g),
    })?;
    emit(out, &report.to_json())?;
    Ok(if report.passed() { ACCEPT } else { REJECT })
}

fn check(graph: &Path, assignment: &Path, out: &Output) -> Res {
    let g = read_graph(graph)?;
    let a = read_assignment(assignment)?;
    let report = verify(&g, &a);
    if let Some(e) = &report.entry_error {
        return Err(input(e));
    }
    emit_json(out, &report)?;
    Ok(if report.valid { ACCEPT } else { REJECT })
}

fn dot(g: &VisGraph) -> String {
    let mut s = String::from("graph G {\n    node [shape=circle];\n");
    for v in 0..g.n() {
        s += &format!("    {v} [label=\"p{v}\"];\n");
    }
    for (a, b) in g.edges() {
        let style = if g.is_cycle_edge(a, b) {
            ""
        } else {
            " [style=dashed]"
        };
        s += &format!("    {a} -- {b}{style};\n");
    }
    s + "}\n"
}

fn run(cli: Cli) -> Res {
    match &cli.cmd {
        Cmd::Recognize { graph, budget, out } => recognize(graph, *budget, out),
        Cmd::Oracle { what } => oracle(what),
        Cmd::Gen {
            n,
            seed,
            count,
            out,
        } => gen(*n, *seed, *count, out),
        Cmd::Corpus {
            count,
            n_range,
            seed,
            budget,
            out,
        } => corpus(*count, *n_range, *seed, *budget, out),
        Cmd::Check {
            graph,
            assignment,
            out,
        } => check(graph, assignment, out),
        Cmd::ExportDot { graph, out } => {
            let g = read_graph(graph)?;
            emit(out, &dot(&g))?;
            Ok(ACCEPT)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { ACCEPT });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
