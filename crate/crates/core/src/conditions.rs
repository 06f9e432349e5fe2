//! Necessary conditions on blocker assignments.
//!
//! Every condition is phrased for an entry `(i, j) -> k`. The conditions are
//! written for a blocker in `∂(i, j)`; for a blocker in `∂(j, i)` the same
//! rule is applied with the walking direction reversed, which swaps the two
//! interval arguments and turns `k - 1` into `k + 1`.
//!
//! NC1(1), NC2 and NC3 have the shape "these entries force that pair to be
//! assigned that blocker". They are produced as [`Rule`]s so the checker and
//! the search's propagation share one source. NC1(2) is a prohibition; NC4
//! and NC5 relate two or four entries and are checked separately.
//!
//! Partial assignments are supported: a rule whose premises are not all
//! assigned is not produced, and a demand on an unassigned pair only fails
//! when the demanded blocker is not a candidate of that pair. Hence the set
//! of violations only grows as the assignment is extended.

use crate::blockers::{BlockerAssignment, CandidateTable, Side};
use crate::graph::{dist, step, walk, Dir, Pair, VisGraph};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("{0} is not an invisible pair of the graph")]
    UnknownPair(Pair),
    #[error("p{blocker} is not a candidate blocker of {pair}")]
    NotACandidate { pair: Pair, blocker: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    NC1a,
    NC1b,
    NC2,
    NC3case1,
    NC3case2,
    NC4,
    NC5,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::NC1a => "NC1a",
            Condition::NC1b => "NC1b",
            Condition::NC2 => "NC2",
            Condition::NC3case1 => "NC3case1",
            Condition::NC3case2 => "NC3case2",
            Condition::NC4 => "NC4",
            Condition::NC5 => "NC5",
        }
    }
}

/// A failed condition. `pairs[i]` is assigned `vertices[i]`; together they
/// are the entries that trigger the failure, so rechecking them alone
/// reproduces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub pairs: Vec<Pair>,
    pub vertices: Vec<usize>,
    pub narrative: String,
}

impl Violation {
    pub fn entries(&self) -> impl Iterator<Item = (Pair, usize)> + '_ {
        self.pairs
            .iter()
            .copied()
            .zip(self.vertices.iter().copied())
    }

    /// Re-evaluates the conditions on the cited entries alone.
    pub fn recheck(&self, g: &VisGraph, cands: &CandidateTable) -> bool {
        let sub: BlockerAssignment = self.entries().collect();
        match check_with(g, cands, &sub) {
            Ok(vs) => vs.contains(self),
            Err(_) => false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

/// Two invisible pairs that share the candidate blocker `blocker`, one lying
/// entirely in a boundary arc that runs from `blocker` to the nearer end of
/// the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeparablePair {
    pub blocker: usize,
    pub pair_a: Pair,
    pub pair_b: Pair,
}

/// `i, j, s, t` in counterclockwise order with `(j, m) -> i` and `(s, m) -> t`
/// for some `m` in `∂(t, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PinchedQuadruple {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub t: usize,
    pub m: usize,
}

const UNSET: u32 = u32::MAX;

/// Dense `n x n` blocker table used by the checker and the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Dense {
    n: usize,
    cells: Vec<u32>,
}

impl Dense {
    pub(crate) fn new(n: usize) -> Self {
        Dense {
            n,
            cells: vec![UNSET; n * n],
        }
    }

    pub(crate) fn from_assignment(n: usize, a: &BlockerAssignment) -> Self {
        let mut d = Dense::new(n);
        for (p, k) in a.iter() {
            d.set(p, k);
        }
        d
    }

    #[inline]
    pub(crate) fn get(&self, p: Pair) -> Option<usize> {
        let v = self.cells[p.from * self.n + p.to];
        (v != UNSET).then_some(v as usize)
    }

    #[inline]
    pub(crate) fn set(&mut self, p: Pair, k: usize) {
        self.cells[p.from * self.n + p.to] = k as u32;
    }

    pub(crate) fn to_assignment(&self) -> BlockerAssignment {
        let n = self.n;
        (0..n * n)
            .filter(|&c| self.cells[c] != UNSET)
            .map(|c| (Pair::new(c / n, c % n), self.cells[c] as usize))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Demand {
    Assign(Pair, usize),
    Forbid(Pair, usize),
}

/// "The `premises` entries demand `demand`."
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rule {
    pub condition: Condition,
    pub premises: Vec<(Pair, usize)>,
    pub demand: Demand,
}

pub(crate) enum Outcome {
    Holds,
    /// Demanded assignment on a pair that is still unassigned.
    Pending(Pair, usize),
    Fails(Violation),
}

impl Rule {
    pub(crate) fn evaluate(&self, g: &VisGraph, cands: &CandidateTable, a: &Dense) -> Outcome {
        match self.demand {
            Demand::Assign(p, v) => {
                if !g.is_invisible(p) {
                    return Outcome::Fails(self.violation(None, "it is not an invisible pair"));
                }
                match a.get(p) {
                    Some(x) if x == v => Outcome::Holds,
                    Some(x) => Outcome::Fails(
                        self.violation(Some((p, x)), &format!("it is assigned p{x}")),
                    ),
                    None if !cands.is_candidate(p, v) => Outcome::Fails(
                        self.violation(None, &format!("p{v} is not one of its candidate blockers")),
                    ),
                    None => Outcome::Pending(p, v),
                }
            }
            Demand::Forbid(p, v) => match a.get(p) {
                Some(x) if x == v => {
                    Outcome::Fails(self.violation(Some((p, x)), "it is assigned exactly that"))
                }
                _ => Outcome::Holds,
            },
        }
    }

    fn violation(&self, target: Option<(Pair, usize)>, reason: &str) -> Violation {
        let mut pairs: Vec<Pair> = self.premises.iter().map(|e| e.0).collect();
        let mut vertices: Vec<usize> = self.premises.iter().map(|e| e.1).collect();
        if let Some((p, x)) = target {
            pairs.push(p);
            vertices.push(x);
        }
        let mut narrative = format!("{}: ", self.condition.name());
        for (idx, (p, k)) in self.premises.iter().enumerate() {
            if idx > 0 {
                narrative.push_str(" and ");
            }
            let _ = write!(narrative, "{p} -> p{k}");
        }
        let (verb, p, v) = match self.demand {
            Demand::Assign(p, v) => ("require", p, v),
            Demand::Forbid(p, v) => ("forbid", p, v),
        };
        let _ = write!(narrative, " {verb} {p} -> p{v}, but {reason}");
        Violation {
            condition: self.condition,
            pairs,
            vertices,
            narrative,
        }
    }
}

/// Blockers `x` with `(k, x) -> i`, i.e. the `t` of NC3's last clause.
fn targets_blocked_by(n: usize, a: &Dense, k: usize, i: usize) -> impl Iterator<Item = usize> + '_ {
    (0..n).filter(move |&t| t != k && a.get(Pair::new(k, t)) == Some(i))
}

/// All NC1–NC3 rules triggered by the assigned entry `(i, j) -> k`.
pub(crate) fn rules_for(
    g: &VisGraph,
    a: &Dense,
    pair: Pair,
    k: usize,
    side: Side,
    out: &mut Vec<Rule>,
) {
    let n = g.n();
    let (i, j) = (pair.from, pair.to);
    let d: Dir = side.toward();
    let back = d.reverse();
    let entry = (pair, k);

    // NC1(1): k blocks i from everything past k up to j.
    for t in walk(n, step(n, k, d), j, d).filter(|&t| t != j) {
        out.push(Rule {
            condition: Condition::NC1a,
            premises: vec![entry],
            demand: Demand::Assign(Pair::new(i, t), k),
        });
    }
    // NC1(2)
    if g.is_invisible(Pair::new(k, j)) {
        out.push(Rule {
            condition: Condition::NC1b,
            premises: vec![entry],
            demand: Demand::Forbid(Pair::new(k, j), i),
        });
    }
    // NC2: viewers strictly between i and k.
    if k != step(n, i, d) {
        for s in walk(n, step(n, i, d), step(n, k, back), d) {
            if g.visible(s, k) {
                out.push(Rule {
                    condition: Condition::NC2,
                    premises: vec![entry],
                    demand: Demand::Assign(Pair::new(s, j), k),
                });
            } else if let Some(t) = a.get(Pair::new(s, k)) {
                out.push(Rule {
                    condition: Condition::NC2,
                    premises: vec![entry, (Pair::new(s, k), t)],
                    demand: Demand::Assign(Pair::new(s, j), t),
                });
            }
        }
    }
    // NC3: constraints on what blocks j.
    if g.visible(j, k) {
        for s in walk(n, i, step(n, k, back), d) {
            out.push(Rule {
                condition: Condition::NC3case1,
                premises: vec![entry],
                demand: Demand::Assign(Pair::new(j, s), k),
            });
        }
        for t in targets_blocked_by(n, a, k, i) {
            out.push(Rule {
                condition: Condition::NC3case1,
                premises: vec![entry, (Pair::new(k, t), i)],
                demand: Demand::Assign(Pair::new(j, t), k),
            });
        }
    } else if let Some(q) = a.get(Pair::new(j, k)) {
        let via = (Pair::new(j, k), q);
        out.push(Rule {
            condition: Condition::NC3case2,
            premises: vec![entry, via],
            demand: Demand::Assign(Pair::new(i, q), k),
        });
        for s in walk(n, i, k, d).filter(|&s| s != k) {
            out.push(Rule {
                condition: Condition::NC3case2,
                premises: vec![entry, via],
                demand: Demand::Assign(Pair::new(j, s), q),
            });
        }
        for t in targets_blocked_by(n, a, k, i) {
            out.push(Rule {
                condition: Condition::NC3case2,
                premises: vec![entry, via, (Pair::new(k, t), i)],
                demand: Demand::Assign(Pair::new(j, t), q),
            });
        }
    }
}

/// Validates every entry against the graph and its candidate table.
pub(crate) fn validate(
    g: &VisGraph,
    cands: &CandidateTable,
    a: &BlockerAssignment,
) -> Result<(), ConditionError> {
    for (p, k) in a.iter() {
        let c = cands
            .get(p)
            .filter(|_| g.is_invisible(p))
            .ok_or(ConditionError::UnknownPair(p))?;
        if !c.contains(k) {
            return Err(ConditionError::NotACandidate {
                pair: p,
                blocker: k,
            });
        }
    }
    Ok(())
}

/// Every separable pair of the candidate table, each unordered combination
/// once with `pair_a < pair_b`.
pub fn separable_pairs(g: &VisGraph, cands: &CandidateTable) -> Vec<SeparablePair> {
    let n = g.n();
    let mut by_blocker: Vec<Vec<Pair>> = vec![Vec::new(); n];
    for (p, c) in cands.iter() {
        for k in c.iter() {
            by_blocker[k].push(p);
        }
    }
    let mut found = BTreeSet::new();
    for (k, pairs) in by_blocker.iter().enumerate() {
        for &a in pairs {
            // arcs from k to the nearer end of `a`, one per direction
            let arcs = [Dir::Ccw, Dir::Cw].map(|dir| {
                let end = if dist(n, k, a.from, dir) < dist(n, k, a.to, dir) {
                    a.from
                } else {
                    a.to
                };
                (end, dir)
            });
            for &b in pairs {
                if b == a {
                    continue;
                }
                let inside = arcs.iter().any(|&(end, dir)| {
                    let lim = dist(n, k, end, dir);
                    dist(n, k, b.from, dir) <= lim && dist(n, k, b.to, dir) <= lim
                });
                if inside {
                    let (x, y) = if a < b { (a, b) } else { (b, a) };
                    found.insert(SeparablePair {
                        blocker: k,
                        pair_a: x,
                        pair_b: y,
                    });
                }
            }
        }
    }
    found.into_iter().collect()
}

fn ccw_ordered(n: usize, vs: [usize; 4]) -> bool {
    let d = |v| dist(n, vs[0], v, Dir::Ccw);
    0 < d(vs[1]) && d(vs[1]) < d(vs[2]) && d(vs[2]) < d(vs[3])
}

fn pinched_dense(n: usize, a: &Dense) -> Vec<PinchedQuadruple> {
    let mut out = Vec::new();
    for m in 0..n {
        let into_m: Vec<(usize, usize)> = (0..n)
            .filter_map(|v| a.get(Pair::new(v, m)).map(|b| (v, b)))
            .collect();
        for &(j, i) in &into_m {
            for &(s, t) in &into_m {
                if ccw_ordered(n, [i, j, s, t]) && dist(n, i, m, Dir::Ccw) > dist(n, i, t, Dir::Ccw)
                {
                    out.push(PinchedQuadruple { i, j, s, t, m });
                }
            }
        }
    }
    out.sort();
    out
}

pub fn pinched_quadruples(g: &VisGraph, a: &BlockerAssignment) -> Vec<PinchedQuadruple> {
    pinched_dense(g.n(), &Dense::from_assignment(g.n(), a))
}

/// Precomputed per-graph data for repeated checks.
pub(crate) struct Checker<'a> {
    pub g: &'a VisGraph,
    pub cands: &'a CandidateTable,
    separable: Vec<SeparablePair>,
}

impl<'a> Checker<'a> {
    pub(crate) fn new(g: &'a VisGraph, cands: &'a CandidateTable) -> Self {
        Checker {
            g,
            cands,
            separable: separable_pairs(g, cands),
        }
    }

    pub(crate) fn side(&self, p: Pair, k: usize) -> Side {
        self.cands
            .get(p)
            .and_then(|c| c.side_of(k))
            .expect("entry draws from candidates")
    }

    pub(crate) fn rules(&self, a: &Dense, out: &mut Vec<Rule>) {
        out.clear();
        for &p in self.cands.pairs() {
            if let Some(k) = a.get(p) {
                rules_for(self.g, a, p, k, self.side(p, k), out);
            }
        }
    }

    /// All violations, or only the first when `first_only`.
    pub(crate) fn violations(&self, a: &Dense, first_only: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut rules = Vec::new();
        for &p in self.cands.pairs() {
            let Some(k) = a.get(p) else { continue };
            rules.clear();
            rules_for(self.g, a, p, k, self.side(p, k), &mut rules);
            for r in &rules {
                if let Outcome::Fails(v) = r.evaluate(self.g, self.cands, a) {
                    out.push(v);
                    if first_only {
                        return out;
                    }
                }
            }
        }
        for sp in &self.separable {
            if a.get(sp.pair_a) == Some(sp.blocker) && a.get(sp.pair_b) == Some(sp.blocker) {
                out.push(Violation {
                    condition: Condition::NC4,
                    pairs: vec![sp.pair_a, sp.pair_b],
                    vertices: vec![sp.blocker, sp.blocker],
                    narrative: format!(
                        "NC4: p{k} is assigned to both {} and {}, which it separates",
                        sp.pair_a,
                        sp.pair_b,
                        k = sp.blocker
                    ),
                });
                if first_only {
                    return out;
                }
            }
        }
        nc5_violations(self.g.n(), a, first_only, &mut out);
        out
    }
}

fn nc5_violations(n: usize, a: &Dense, first_only: bool, out: &mut Vec<Violation>) {
    let quads = pinched_dense(n, a);
    let mut by_base: BTreeMap<[usize; 4], Vec<usize>> = BTreeMap::new();
    for q in &quads {
        by_base.entry([q.i, q.j, q.s, q.t]).or_default().push(q.m);
    }
    for (&[i, j, s, t], ms) in &by_base {
        if i > s {
            continue;
        }
        let Some(others) = by_base.get(&[s, t, i, j]) else {
            continue;
        };
        for &m in ms {
            for &m2 in others {
                out.push(Violation {
                    condition: Condition::NC5,
                    pairs: vec![
                        Pair::new(j, m),
                        Pair::new(s, m),
                        Pair::new(t, m2),
                        Pair::new(i, m2),
                    ],
                    vertices: vec![i, t, s, j],
                    narrative: format!(
                        "NC5: p{i}, p{j}, p{s}, p{t} are {{p{i}, p{t}}}-pinched at p{m} \
                             and {{p{j}, p{s}}}-pinched at p{m2}"
                    ),
                });
                if first_only {
                    return;
                }
            }
        }
    }
}

pub(crate) fn check_with(
    g: &VisGraph,
    cands: &CandidateTable,
    a: &BlockerAssignment,
) -> Result<Vec<Violation>, ConditionError> {
    validate(g, cands, a)?;
    let dense = Dense::from_assignment(g.n(), a);
    Ok(Checker::new(g, cands).violations(&dense, false))
}

/// All violations of NC1–NC5 in a (possibly partial) assignment.
pub fn check_conditions(
    g: &VisGraph,
    a: &BlockerAssignment,
) -> Result<Vec<Violation>, ConditionError> {
    let cands = crate::blockers::all_candidates(g);
    check_with(g, &cands, a)
}
