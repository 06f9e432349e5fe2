//! Property sweep over random polygons, with a deterministic report.

use crate::blockers::all_candidates;
use crate::conditions::check_conditions;
use crate::geometry::{
    check_lemma1, check_lemma2, check_lemma3, random_simple_polygon, GeometryError, Oracle, Polygon,
};
use crate::graph::BoundaryInterval;
use crate::recognizer::{find_assignment_with, SearchConfig, Verdict};
use crate::vertex_edge::{
    build_ve_unchecked, check_theorem1, incidence_articulation, is_articulation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Names of the per-polygon checks, in report order.
pub const CHECKS: [&str; 9] = [
    "generated",
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "nc_soundness",
    "recognizer_accepts",
    "theorem1_geometric",
    "theorem1_recognized",
];

/// Failures listed individually in a report; the rest are only counted.
const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("polygon sizes must satisfy 3 <= min <= max, got {0}..{1}")]
    BadRange(usize, usize),
    #[error(transparent)]
    Generation(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub budget: Option<u64>,
}

/// The `(n, seed)` of every corpus polygon, in order. Feed either into
/// [`random_simple_polygon`] to rebuild it.
pub fn corpus_seeds(cfg: &CorpusConfig) -> Result<Vec<(usize, u64)>, CorpusError> {
    if cfg.n_min < 3 || cfg.n_min > cfg.n_max {
        return Err(CorpusError::BadRange(cfg.n_min, cfg.n_max));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok((0..cfg.count)
        .map(|_| (rng.gen_range(cfg.n_min..=cfg.n_max), rng.gen()))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    /// `None` when the check passed or did not apply.
    pub failure: Option<String>,
}

/// Agreement between the candidate characterization of separating
/// vertices and a cut-vertex test on the interval's incidence structure,
/// over the intervals the characterization check visits. The two notions
/// are not expected to coincide, so this is reported rather than enforced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ArticulationAgreement {
    pub compared: usize,
    pub disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonOutcome {
    pub checks: Vec<CheckOutcome>,
    pub articulation: ArticulationAgreement,
}

/// Runs every property on one polygon.
pub fn check_polygon(poly: &Polygon, budget: Option<u64>) -> PolygonOutcome {
    let mut out = Vec::new();
    let mut agreement = ArticulationAgreement::default();
    let mut record = |check: &'static str, failure: Option<String>| {
        out.push(CheckOutcome { check, failure });
    };
    let o = Oracle::new(poly);
    let g = o.graph();
    let cands = all_candidates(g);

    let first = |r: crate::geometry::LemmaReport| {
        r.failures
            .first()
            .map(|f| format!("{}: {}", f.check, f.detail))
    };
    record("lemma1", first(check_lemma1(&o)));
    record("lemma2", first(check_lemma2(&o)));
    record("lemma3", first(check_lemma3(&o)));

    let blockers = o.blockers();
    let ve_geo = o.ve_graph();
    match &blockers {
        Err(e) => {
            record("nc_soundness", Some(e.to_string()));
            record("lemma4", Some(e.to_string()));
        }
        Ok(a) => {
            let nc = match check_conditions(g, a) {
                Err(e) => Some(e.to_string()),
                Ok(vs) => vs.first().map(|v| v.narrative.clone()),
            };
            record("nc_soundness", nc);
            let derived = build_ve_unchecked(g.n(), a);
            let diff = derived.diff(&ve_geo);
            record(
                "lemma4",
                (!diff.is_empty()).then(|| format!("relations differ at (vertex, edge) {diff:?}")),
            );
        }
    }

    let t1 = check_theorem1(&ve_geo, g, &cands);
    record(
        "theorem1_geometric",
        t1.failures().next().map(|t| format!("{t:?}")),
    );

    for t in &t1.instances {
        let n = g.n();
        let i1 = (t.ei + 1) % n;
        for (iv, v) in [
            (BoundaryInterval::new(n, t.k, t.ej), i1),
            (BoundaryInterval::new(n, i1, t.k), t.ej),
        ] {
            let a = is_articulation(g, &cands, iv, v).expect("interior vertex");
            agreement.compared += 1;
            agreement.disagreements += (a != incidence_articulation(&ve_geo, iv, v)) as usize;
        }
    }

    let cfg = SearchConfig {
        budget,
        log_limit: 0,
    };
    match find_assignment_with(g, &cfg) {
        Err(e) => {
            record("recognizer_accepts", Some(e.to_string()));
            record("theorem1_recognized", None);
        }
        Ok((Verdict::Rejected { .. }, _)) => {
            record("recognizer_accepts", Some("rejected".into()));
            record("theorem1_recognized", None);
        }
        Ok((Verdict::Accepted { assignment }, _)) => {
            record("recognizer_accepts", None);
            let ve = build_ve_unchecked(g.n(), &assignment);
            let r = check_theorem1(&ve, g, &cands);
            record(
                "theorem1_recognized",
                r.failures().next().map(|t| format!("{t:?}")),
            );
        }
    }
    PolygonOutcome {
        checks: out,
        articulation: agreement,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub checked: usize,
    pub failed: usize,
    pub first_failing_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub index: usize,
    pub n: usize,
    pub seed: u64,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub count: usize,
    pub n_range: [usize; 2],
    pub seed: u64,
    pub checks: BTreeMap<&'static str, CheckTally>,
    pub failures: Vec<FailureRecord>,
    pub articulation_agreement: ArticulationAgreement,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|t| t.failed == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn run_corpus(cfg: &CorpusConfig) -> Result<CorpusReport, CorpusError> {
    let seeds = corpus_seeds(cfg)?;
    let mut checks: BTreeMap<&'static str, CheckTally> =
        CHECKS.iter().map(|&c| (c, CheckTally::default())).collect();
    let mut failures = Vec::new();
    let mut agreement = ArticulationAgreement::default();
    for (index, &(n, seed)) in seeds.iter().enumerate() {
        let mut outcomes = vec![];
        match random_simple_polygon(n, seed) {
            Ok(p) => {
                outcomes.push(CheckOutcome {
                    check: "generated",
                    failure: None,
                });
                let o = check_polygon(&p, cfg.budget);
                outcomes.extend(o.checks);
                agreement.compared += o.articulation.compared;
                agreement.disagreements += o.articulation.disagreements;
            }
            Err(e @ GeometryError::GenerationBudgetExceeded { .. }) => return Err(e.into()),
            Err(e) => outcomes.push(CheckOutcome {
                check: "generated",
                failure: Some(e.to_string()),
            }),
        }
        for o in outcomes {
            let tally = checks.get_mut(o.check).expect("known check");
            tally.checked += 1;
            if let Some(detail) = o.failure {
                tally.failed += 1;
                tally.first_failing_seed.get_or_insert(seed);
                if failures.len() < MAX_LISTED {
                    failures.push(FailureRecord {
                        index,
                        n,
                        seed,
                        check: o.check,
                        detail,
                    });
                }
            }
        }
    }
    Ok(CorpusReport {
        count: cfg.count,
        n_range: [cfg.n_min, cfg.n_max],
        seed: cfg.seed,
        checks,
        failures,
        articulation_agreement: agreement,
    })
}
