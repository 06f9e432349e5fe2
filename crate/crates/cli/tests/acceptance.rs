//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use common::{assignment_space, brute_force_accepts, enumerate_all};
use pseudovis::corpus::{corpus_seeds, run_corpus, CorpusConfig};
use pseudovis::fixtures::{chordless, dent5_graph, quad4};
use pseudovis::geometry::{check_lemma1, check_lemma2, random_simple_polygon, Oracle};
use pseudovis::recognizer::DEFAULT_BUDGET;
use pseudovis::vertex_edge::{build_ve_unchecked, check_theorem1_graph};
use pseudovis::*;
use std::process::Command;
use std::time::{Duration, Instant};

const COUNT: usize = 500;
const N_MIN: usize = 5;
const N_MAX: usize = 12;
const SEED: u64 = 7;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Sample {
    index: usize,
    n: usize,
    seed: u64,
    poly: Polygon,
}

impl Sample {
    fn tag(&self) -> String {
        format!("polygon #{} (n={}, seed={})", self.index, self.n, self.seed)
    }
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn config() -> CorpusConfig {
    CorpusConfig {
        count: COUNT,
        n_min: N_MIN,
        n_max: N_MAX,
        seed: SEED,
        budget: Some(DEFAULT_BUDGET),
    }
}

fn corpus() -> Vec<Sample> {
    corpus_seeds(&config())
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(index, (n, seed))| Sample {
            index,
            n,
            seed,
            poly: random_simple_polygon(n, seed).unwrap(),
        })
        .collect()
}

/// Counts samples for which `f` reports a problem and describes the first.
fn sweep(samples: &[Sample], what: &str, mut f: impl FnMut(&Sample) -> Option<String>) -> Outcome {
    let mut bad = 0;
    let mut first = None;
    for s in samples {
        if let Some(why) = f(s) {
            bad += 1;
            first.get_or_insert_with(|| format!("{}: {why}", s.tag()));
        }
    }
    match first {
        None => Ok(format!("{} polygons, {what}", samples.len())),
        Some(f) => Err(format!(
            "{bad} of {} polygons fail; first: {f}",
            samples.len()
        )),
    }
}

fn criterion1(samples: &[Sample]) -> Outcome {
    let start = Instant::now();
    let report = run_corpus(&config()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut pairs = 0;
    let unique = sweep(samples, "", |s| {
        let o = Oracle::new(&s.poly);
        let g = o.graph();
        let cands = all_candidates(g);
        for p in g.invisible_pairs() {
            pairs += 1;
            let by_rays = o.designated_by_rays(p);
            if by_rays.len() != 1 {
                return Some(format!("{p:?} has designated blockers {by_rays:?}"));
            }
            if !cands.is_candidate(p, by_rays[0]) {
                return Some(format!("{p:?} blocker p{} is not a candidate", by_rays[0]));
            }
            if o.designated_blocker(p) != Ok(by_rays[0]) {
                return Some(format!("{p:?} seen-edge and ray definitions disagree"));
            }
        }
        None
    });
    let tally = &report.checks["lemma3"];
    if tally.failed > 0 {
        return Err(format!(
            "corpus lemma3 check fails on {} polygons",
            tally.failed
        ));
    }
    if elapsed >= TIME_LIMIT {
        return Err(format!("corpus took {elapsed:.1?}, limit {TIME_LIMIT:?}"));
    }
    unique.map(|_| format!("{pairs} invisible pairs each with one designated candidate blocker; corpus run {elapsed:.1?}"))
}

fn criterion2(samples: &[Sample]) -> Outcome {
    let mut by_condition = std::collections::BTreeMap::<String, usize>::new();
    let out = sweep(samples, "ground-truth blockers satisfy NC1-NC5", |s| {
        let o = Oracle::new(&s.poly);
        let a = match o.blockers() {
            Ok(a) => a,
            Err(e) => return Some(e.to_string()),
        };
        let vs = check_conditions(o.graph(), &a)
            .map_err(|e| e.to_string())
            .ok()?;
        for v in &vs {
            *by_condition
                .entry(format!("{:?}", v.condition))
                .or_default() += 1;
        }
        vs.first().map(|v| v.narrative.clone())
    });
    out.map_err(|e| format!("{e}; violations by condition {by_condition:?}"))
}

fn criterion3(samples: &[Sample]) -> Outcome {
    let mut bits = 0;
    sweep(samples, "", |s| {
        let o = Oracle::new(&s.poly);
        let a = o.blockers().ok()?;
        let derived = build_ve_unchecked(s.n, &a);
        bits += s.n * s.n;
        let diff = derived.diff(&o.ve_graph());
        (!diff.is_empty()).then(|| format!("differs at (vertex, edge) {diff:?}"))
    })
    .map(|_| format!("{bits} vertex-edge relations equal bit for bit"))
}

fn criterion4(samples: &[Sample]) -> Outcome {
    let (mut geo, mut rec, mut accepted) = (0, 0, 0);
    sweep(samples, "", |s| {
        let o = Oracle::new(&s.poly);
        let g = o.graph();
        let r = check_theorem1_graph(&o.ve_graph(), g);
        geo += r.instances.len();
        if let Some(t) = r.failures().next() {
            return Some(format!("geometric relation fails {t:?}"));
        }
        match find_assignment(g) {
            Ok(Verdict::Accepted { assignment }) => {
                accepted += 1;
                let ve = build_ve(g, &assignment).map_err(|e| e.to_string()).ok()?;
                let r = check_theorem1_graph(&ve, g);
                rec += r.instances.len();
                let first = r
                    .failures()
                    .next()
                    .map(|t| format!("recognized relation fails {t:?}"));
                first
            }
            _ => None,
        }
    })
    .map(|_| {
        format!("{geo} geometric instances; {rec} instances over {accepted} accepted assignments")
    })
}

fn criterion5(samples: &[Sample]) -> Outcome {
    let (mut l1, mut l2) = (0, 0);
    sweep(samples, "", |s| {
        let o = Oracle::new(&s.poly);
        let (r1, r2) = (check_lemma1(&o), check_lemma2(&o));
        l1 += r1.checked;
        l2 += r2.checked;
        r1.failures
            .iter()
            .chain(&r2.failures)
            .next()
            .map(|f| format!("{}: {}", f.check, f.detail))
    })
    .map(|_| format!("{l1} lemma 1 and {l2} lemma 2 instances hold"))
}

fn fixtures() -> Vec<(String, VisGraph, bool)> {
    let mut v: Vec<_> = (4..=8)
        .map(|n| (format!("K{n}"), VisGraph::complete(n), true))
        .collect();
    v.push(("QUAD4".into(), quad4(), true));
    v.push(("DENT5".into(), dent5_graph(), true));
    v.extend((4..=6).map(|n| (format!("C{n}"), chordless(n), false)));
    v
}

fn criterion6() -> Outcome {
    let mut lines = Vec::new();
    for (name, g, expect) in fixtures() {
        let space = assignment_space(&g);
        let brute = enumerate_all(&g).is_some();
        let verdict = find_assignment(&g).map_err(|e| format!("{name}: {e}"))?;
        if brute != expect || verdict.is_accepted() != expect {
            return Err(format!(
                "{name}: expected {expect}, brute force {brute}, recognizer {verdict:?}"
            ));
        }
        match &verdict {
            Verdict::Accepted { assignment } => {
                if name.starts_with('K') && !assignment.is_empty() {
                    return Err(format!("{name}: non-empty assignment"));
                }
                if !verify(&g, assignment).valid {
                    return Err(format!("{name}: assignment does not verify"));
                }
            }
            Verdict::Rejected { .. } => {}
        }
        lines.push(format!(
            "{name}:{}/{space}",
            if expect { "acc" } else { "rej" }
        ));
    }
    Ok(format!("verdict/space {}", lines.join(" ")))
}

fn criterion7(samples: &[Sample]) -> Outcome {
    let small: Vec<_> = samples.iter().filter(|s| s.n <= 8).collect();
    let mut accepted = 0;
    for s in &small {
        let g = pseudovis::geometry::visibility_graph(&s.poly);
        let rec = find_assignment(&g)
            .map_err(|e| format!("{}: {e}", s.tag()))?
            .is_accepted();
        let brute = brute_force_accepts(&g);
        if rec != brute {
            return Err(format!(
                "{}: recognizer {rec}, brute force {brute}",
                s.tag()
            ));
        }
        accepted += rec as usize;
    }
    for (name, g, _) in fixtures() {
        let rec = find_assignment(&g)
            .map_err(|e| format!("{name}: {e}"))?
            .is_accepted();
        if rec != brute_force_accepts(&g) {
            return Err(format!("{name}: recognizer and brute force disagree"));
        }
    }
    Ok(format!(
        "{} corpus polygons with n <= 8 ({accepted} accepted) and {} fixtures agree",
        small.len(),
        fixtures().len()
    ))
}

fn criterion8(samples: &[Sample]) -> Outcome {
    let args = [
        "corpus",
        "--count",
        &COUNT.to_string(),
        "--n",
        &format!("{N_MIN}..{N_MAX}"),
        "--seed",
        &SEED.to_string(),
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_pseudovis"))
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.stdout.is_empty() || a.stdout != b.stdout {
        return Err("corpus reports differ between runs".into());
    }
    for s in samples {
        let again = random_simple_polygon(s.n, s.seed).map_err(|e| e.to_string())?;
        if again != s.poly {
            return Err(format!("{} regenerates differently", s.tag()));
        }
    }
    Ok(format!(
        "two corpus runs byte-identical ({} bytes); {} polygons regenerate identically",
        a.stdout.len(),
        samples.len()
    ))
}

fn main() {
    let samples = corpus();
    let criteria: [Criterion; 8] = [
        (
            "designated blocker uniqueness",
            Box::new(|| criterion1(&samples)),
        ),
        (
            "NC soundness on ground truth",
            Box::new(|| criterion2(&samples)),
        ),
        (
            "vertex-edge derivation equals geometry",
            Box::new(|| criterion3(&samples)),
        ),
        (
            "vertex-edge characterization",
            Box::new(|| criterion4(&samples)),
        ),
        (
            "lemma 1 and lemma 2 properties",
            Box::new(|| criterion5(&samples)),
        ),
        ("recognizer fixtures", Box::new(criterion6)),
        (
            "recognizer vs brute force",
            Box::new(|| criterion7(&samples)),
        ),
        ("determinism", Box::new(|| criterion8(&samples))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {} [{name}]: {status} ({:.1?}) {detail}",
            i + 1,
            start.elapsed()
        );
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
