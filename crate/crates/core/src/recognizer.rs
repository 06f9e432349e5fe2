//! Decides whether a graph admits a blocker assignment satisfying every
//! necessary condition, by backtracking over the candidate sets.
//!
//! Variables are the ordered invisible pairs, ordered fail-first (fewest
//! candidates, then lexicographically); values are tried clockwise-side
//! first. After each decision the forced entries of NC1–NC3 are propagated
//! to a fixpoint and the partial assignment is checked; since violations
//! only accumulate as an assignment grows, any violation prunes the branch.

use crate::blockers::{all_candidates, AssignmentFile, BlockerAssignment, CandidateTable};
use crate::conditions::{check_with, Checker, Dense, Outcome, Rule, Violation};
use crate::graph::{Pair, VisGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default node budget of [`find_assignment`].
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
}

/// Dead end of the search: the violation found at a given decision depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictEntry {
    pub depth: usize,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Some invisible pair has no candidate blocker at all.
    EmptyCandidateSet { pair: Pair },
    /// Every branch failed. `conflict_log` holds the first `log_limit`
    /// dead ends in search order; `conflicts` counts all of them.
    ExhaustedSearch {
        conflict_log: Vec<ConflictEntry>,
        conflicts: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted { assignment: BlockerAssignment },
    Rejected { certificate: Certificate },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }

    pub fn to_file(&self) -> VerdictFile {
        match self {
            Verdict::Accepted { assignment } => VerdictFile {
                verdict: "accepted".into(),
                assignment: Some(assignment.to_file()),
                certificate: None,
            },
            Verdict::Rejected { certificate } => VerdictFile {
                verdict: "rejected".into(),
                assignment: None,
                certificate: Some(match certificate {
                    Certificate::EmptyCandidateSet { pair } => CertificateFile {
                        kind: "empty_candidate_set".into(),
                        pair: Some(*pair),
                        conflicts: None,
                        conflict_log: None,
                    },
                    Certificate::ExhaustedSearch {
                        conflict_log,
                        conflicts,
                    } => CertificateFile {
                        kind: "exhausted_search".into(),
                        pair: None,
                        conflicts: Some(*conflicts),
                        conflict_log: Some(conflict_log.clone()),
                    },
                }),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conflicts: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conflict_log: Option<Vec<ConflictEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictFile {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<AssignmentFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes; `None` is unbounded.
    pub budget: Option<u64>,
    /// Maximum number of conflicts kept in a rejection certificate.
    pub log_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: Some(DEFAULT_BUDGET),
            log_limit: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub conflicts: u64,
}

pub fn find_assignment(g: &VisGraph) -> Result<Verdict, RecognizeError> {
    find_assignment_with(g, &SearchConfig::default()).map(|(v, _)| v)
}

pub fn find_assignment_with(
    g: &VisGraph,
    cfg: &SearchConfig,
) -> Result<(Verdict, SearchStats), RecognizeError> {
    let cands = all_candidates(g);
    if let Some(&pair) = cands.empty_pairs().first() {
        let v = Verdict::Rejected {
            certificate: Certificate::EmptyCandidateSet { pair },
        };
        return Ok((v, SearchStats::default()));
    }
    let mut order: Vec<Pair> = cands.pairs().to_vec();
    order.sort_by_key(|&p| (cands.get(p).unwrap().len(), p));
    let mut s = Search {
        chk: Checker::new(g, &cands),
        cands: &cands,
        order,
        cfg: *cfg,
        stats: SearchStats::default(),
        log: Vec::new(),
        rules: Vec::new(),
    };
    let found = s.dfs(Dense::new(g.n()), 0)?;
    let verdict = match found {
        Some(d) => {
            let assignment = d.to_assignment();
            debug_assert!(verify(g, &assignment).valid);
            Verdict::Accepted { assignment }
        }
        None => Verdict::Rejected {
            certificate: Certificate::ExhaustedSearch {
                conflict_log: s.log,
                conflicts: s.stats.conflicts,
            },
        },
    };
    Ok((verdict, s.stats))
}

struct Search<'a> {
    chk: Checker<'a>,
    cands: &'a CandidateTable,
    order: Vec<Pair>,
    cfg: SearchConfig,
    stats: SearchStats,
    log: Vec<ConflictEntry>,
    rules: Vec<Rule>,
}

impl Search<'_> {
    fn dfs(&mut self, mut a: Dense, depth: usize) -> Result<Option<Dense>, RecognizeError> {
        self.stats.nodes += 1;
        if let Some(budget) = self.cfg.budget {
            if self.stats.nodes > budget {
                return Err(RecognizeError::BudgetExceeded { budget });
            }
        }
        if let Some(violation) = self.propagate(&mut a) {
            self.stats.conflicts += 1;
            if self.log.len() < self.cfg.log_limit {
                self.log.push(ConflictEntry { depth, violation });
            }
            return Ok(None);
        }
        let Some(&var) = self.order.iter().find(|&&p| a.get(p).is_none()) else {
            return Ok(Some(a));
        };
        let values: Vec<usize> = self.cands.get(var).unwrap().iter().collect();
        for v in values {
            let mut b = a.clone();
            b.set(var, v);
            if let Some(done) = self.dfs(b, depth + 1)? {
                return Ok(Some(done));
            }
        }
        Ok(None)
    }

    /// Applies forced entries until nothing changes; returns the first
    /// violation if the result is inconsistent.
    fn propagate(&mut self, a: &mut Dense) -> Option<Violation> {
        loop {
            let mut rules = std::mem::take(&mut self.rules);
            self.chk.rules(a, &mut rules);
            let mut changed = false;
            let mut failed = None;
            for r in &rules {
                match r.evaluate(self.chk.g, self.cands, a) {
                    Outcome::Holds => {}
                    Outcome::Pending(p, v) => {
                        a.set(p, v);
                        changed = true;
                    }
                    Outcome::Fails(v) => {
                        failed = Some(v);
                        break;
                    }
                }
            }
            self.rules = rules;
            if failed.is_some() {
                return failed;
            }
            if !changed {
                break;
            }
        }
        self.chk.violations(a, true).into_iter().next()
    }
}

/// Result of checking a claimed assignment.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// Invisible pairs left without a blocker.
    pub missing: Vec<Pair>,
    /// Entry that is not an invisible pair or not a candidate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry_error: Option<String>,
    pub violations: Vec<Violation>,
}

/// Total, drawn from candidate sets, and free of violations.
pub fn verify(g: &VisGraph, a: &BlockerAssignment) -> VerifyReport {
    let cands = all_candidates(g);
    let missing: Vec<Pair> = cands
        .pairs()
        .iter()
        .copied()
        .filter(|&p| a.get(p).is_none())
        .collect();
    match check_with(g, &cands, a) {
        Err(e) => VerifyReport {
            valid: false,
            missing,
            entry_error: Some(e.to_string()),
            violations: vec![],
        },
        Ok(violations) => VerifyReport {
            valid: missing.is_empty() && violations.is_empty(),
            missing,
            entry_error: None,
            violations,
        },
    }
}
