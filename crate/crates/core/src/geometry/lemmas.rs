//! Structural facts every simple polygon satisfies, checked against the
//! oracle.

use super::oracle::Oracle;
use crate::graph::{dist, pred, succ, Dir};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub check: &'static str,
    pub detail: String,
}

/// `checked` counts instances whose premise fired.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub checked: usize,
    pub failures: Vec<LemmaFailure>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, check: &'static str, detail: String) {
        self.failures.push(LemmaFailure { check, detail });
    }
}

/// Seeing both edges at `p_j` means seeing `p_j`; seeing `p_j` means seeing
/// at least one of its edges.
pub fn check_lemma1(o: &Oracle) -> LemmaReport {
    let n = o.polygon().n();
    let mut r = LemmaReport::default();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (before, after) = (o.sees_edge(i, pred(n, j)), o.sees_edge(i, j));
            let vis = o.sees_vertex(i, j);
            if before && after {
                r.checked += 1;
                if !vis {
                    r.fail(
                        "both-edges",
                        format!("p{i} sees e{} and e{j} but not p{j}", pred(n, j)),
                    );
                }
            }
            if vis {
                r.checked += 1;
                if !before && !after {
                    r.fail(
                        "one-edge",
                        format!("p{i} sees p{j} but neither e{} nor e{j}", pred(n, j)),
                    );
                }
            }
        }
    }
    r
}

/// For `p_k` seeing non-adjacent `e_a`, `e_b` and nothing strictly between
/// them (counterclockwise from `e_a`), exactly one of the two mirrored
/// cases holds. `p_k` ranges over `∂(p_{b+1}, p_a)`.
pub fn check_lemma2(o: &Oracle) -> LemmaReport {
    let n = o.polygon().n();
    let mut r = LemmaReport::default();
    for k in 0..n {
        for a in 0..n {
            if !o.sees_edge(k, a) {
                continue;
            }
            // next seen edge counterclockwise after e_a
            let Some(b) = (1..n).map(|d| (a + d) % n).find(|&m| o.sees_edge(k, m)) else {
                continue;
            };
            if b == succ(n, a) || a == succ(n, b) || b == a {
                continue;
            }
            // k must lie in ∂(b+1, a)
            if dist(n, succ(n, b), k, Dir::Ccw) > dist(n, succ(n, b), a, Dir::Ccw) {
                continue;
            }
            r.checked += 1;
            // k lies outside ∂(a+1, b), so it differs from both p_{a+1} and p_b
            let a1 = succ(n, a);
            let case_a = o.sees_vertex(k, a1)
                && !o.sees_vertex(k, b)
                && o.is_witness(a1, k, b)
                && o.sees_edge(a1, b)
                && !o.sees_edge(b, a);
            let case_b = o.sees_vertex(k, b)
                && !o.sees_vertex(k, a1)
                && o.is_witness(b, k, a)
                && o.sees_edge(b, a)
                && !o.sees_edge(a1, b);
            if case_a == case_b {
                r.fail(
                    "exactly-one-case",
                    format!("p{k} with e{a}, e{b}: case A {case_a}, case B {case_b}"),
                );
            }
        }
    }
    r
}

/// Each invisible pair has exactly one vertex satisfying the
/// designated-blocker definition, found by both the seen-edge argument and
/// the direct ray test, and it is a candidate blocker.
pub fn check_lemma3(o: &Oracle) -> LemmaReport {
    let mut r = LemmaReport::default();
    for p in o.graph().invisible_pairs() {
        r.checked += 1;
        match o.designated_blocker(p) {
            Err(e) => r.fail("seen-edge", e.to_string()),
            Ok(b) => {
                let by_rays = o.designated_by_rays(p);
                if by_rays != [b] {
                    r.fail(
                        "rays",
                        format!("{p}: seen-edge gives p{b}, rays give {by_rays:?}"),
                    );
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{dent5_polygon, unit_square};

    #[test]
    fn unit_square_passes() {
        let sq = unit_square();
        let o = Oracle::new(&sq);
        assert!(check_lemma1(&o).passed());
        let l2 = check_lemma2(&o);
        assert!(l2.passed());
        assert_eq!(l2.checked, 0);
        assert_eq!(check_lemma3(&o).checked, 0);
    }

    #[test]
    fn dent5_passes() {
        let d = dent5_polygon();
        let o = Oracle::new(&d);
        assert!(check_lemma1(&o).passed());
        let l2 = check_lemma2(&o);
        assert!(l2.passed(), "{:?}", l2.failures);
        assert!(l2.checked >= 1);
        assert!(check_lemma3(&o).passed());
    }
}
