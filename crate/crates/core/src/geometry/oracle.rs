use super::predicates::{cross_properly, in_cone, sub};
use super::ray::ray_first_exit;
use super::Polygon;
use crate::blockers::{candidate_blockers, BlockerAssignment};
use crate::graph::{edge_in_interval, interval_edges, pred, succ, Pair, VisGraph};
use crate::vertex_edge::VEGraph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not an invisible pair")]
    NotInvisible(Pair),
    /// Cannot happen on a valid polygon; signals a bug in the oracle.
    #[error("oracle contradiction at {pair}: {reason}")]
    OracleContradiction { pair: Pair, reason: String },
}

/// Whether the open segment `p_i p_j` stays inside the polygon.
///
/// # Panics
/// If `i == j` or either index is out of range.
pub fn sees_vertex(poly: &Polygon, i: usize, j: usize) -> bool {
    let n = poly.n();
    assert!(
        i != j && i < n && j < n,
        "sees_vertex needs two distinct vertices"
    );
    if succ(n, i) == j || pred(n, i) == j {
        return true;
    }
    let (pi, pj) = (poly.point(i), poly.point(j));
    if !in_cone(
        poly.point(pred(n, i)),
        pi,
        poly.point(succ(n, i)),
        sub(pj, pi),
    ) {
        return false;
    }
    (0..n)
        .filter(|&m| m != i && m != j && succ(n, m) != i && succ(n, m) != j)
        .all(|m| {
            let (a, b) = poly.edge(m);
            !cross_properly(pi, pj, a, b)
        })
}

pub fn visibility_graph(poly: &Polygon) -> VisGraph {
    Oracle::new(poly).graph().clone()
}

/// Outcome of the witness count for one vertex-edge pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSight {
    pub sees: bool,
    pub witnesses: Vec<usize>,
}

pub fn sees_edge(poly: &Polygon, i: usize, m: usize) -> EdgeSight {
    Oracle::new(poly).edge_sight(i, m)
}

pub fn designated_blocker_geo(poly: &Polygon, pair: Pair) -> Result<usize, OracleError> {
    Oracle::new(poly).designated_blocker(pair)
}

pub fn geometric_blockers(poly: &Polygon) -> Result<BlockerAssignment, OracleError> {
    Oracle::new(poly).blockers()
}

pub fn ve_graph_geo(poly: &Polygon) -> VEGraph {
    Oracle::new(poly).ve_graph()
}

/// All pairwise visibility and ray exits of one polygon, computed once.
#[derive(Debug, Clone)]
pub struct Oracle<'p> {
    poly: &'p Polygon,
    graph: VisGraph,
    /// `exit[k * n + a]`: edge hit by the ray from `p_k` away from `p_a`,
    /// filled for visible pairs only.
    exit: Vec<Option<usize>>,
    ve: VEGraph,
}

impl<'p> Oracle<'p> {
    pub fn new(poly: &'p Polygon) -> Self {
        let n = poly.n();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if sees_vertex(poly, i, j) {
                    pairs.push((i, j));
                }
            }
        }
        let graph = VisGraph::new(n, &pairs).expect("polygon boundary is always visible");
        let mut exit = vec![None; n * n];
        for &(i, j) in &pairs {
            exit[j * n + i] = ray_first_exit(poly, j, i).edge();
            exit[i * n + j] = ray_first_exit(poly, i, j).edge();
        }
        let mut o = Oracle {
            poly,
            graph,
            exit,
            ve: VEGraph::new(n),
        };
        for i in 0..n {
            for m in 0..n {
                let s = o.witnesses(i, m).len() >= 2;
                o.ve.set(i, m, s);
            }
        }
        o
    }

    pub fn polygon(&self) -> &Polygon {
        self.poly
    }

    pub fn graph(&self) -> &VisGraph {
        &self.graph
    }

    pub fn sees_vertex(&self, i: usize, j: usize) -> bool {
        self.graph.visible(i, j)
    }

    /// Edge through which the sightline from `p_away` continues past `p_k`.
    pub fn exit_edge(&self, k: usize, away: usize) -> Option<usize> {
        self.exit[k * self.poly.n() + away]
    }

    /// Whether `p_j` is a witness for `(p_i, e_m)`.
    pub fn is_witness(&self, j: usize, i: usize, m: usize) -> bool {
        let n = self.poly.n();
        let ends = |v: usize| v == m || v == succ(n, m);
        if ends(i) {
            return ends(j);
        }
        j != i && self.graph.visible(i, j) && (ends(j) || self.exit_edge(j, i) == Some(m))
    }

    pub fn witnesses(&self, i: usize, m: usize) -> Vec<usize> {
        (0..self.poly.n())
            .filter(|&j| self.is_witness(j, i, m))
            .collect()
    }

    pub fn sees_edge(&self, i: usize, m: usize) -> bool {
        self.ve.sees(i, m)
    }

    pub fn edge_sight(&self, i: usize, m: usize) -> EdgeSight {
        EdgeSight {
            sees: self.sees_edge(i, m),
            witnesses: self.witnesses(i, m),
        }
    }

    pub fn ve_graph(&self) -> VEGraph {
        self.ve.clone()
    }

    /// Designated blocker via the unique seen edge between the two
    /// nearest visible vertices around `p_j`.
    pub fn designated_blocker(&self, pair: Pair) -> Result<usize, OracleError> {
        let n = self.poly.n();
        let (i, j) = (pair.from, pair.to);
        if !self.graph.is_invisible(pair) {
            return Err(OracleError::NotInvisible(pair));
        }
        let mut k = pred(n, j);
        while !self.graph.visible(i, k) {
            k = pred(n, k);
        }
        let mut k2 = succ(n, j);
        while !self.graph.visible(i, k2) {
            k2 = succ(n, k2);
        }
        let seen: Vec<usize> = interval_edges(n, k, k2)
            .into_iter()
            .filter(|&m| self.sees_edge(i, m))
            .collect();
        if seen.len() != 1 {
            return Err(OracleError::OracleContradiction {
                pair,
                reason: format!(
                    "p{i} sees {} edges between p{k} and p{k2}: {seen:?}",
                    seen.len()
                ),
            });
        }
        let b = if edge_in_interval(n, j, k2, seen[0]) {
            k
        } else {
            k2
        };
        let cands = candidate_blockers(&self.graph, pair).expect("pair is invisible");
        if !cands.contains(b) {
            return Err(OracleError::OracleContradiction {
                pair,
                reason: format!("designated blocker p{b} is not a candidate blocker"),
            });
        }
        Ok(b)
    }

    /// Every vertex satisfying the designated-blocker definition directly:
    /// `p_i` sees it and the sightline continues out through the boundary on
    /// the far side of `p_j` (for a blocker in `∂(i, j)` that is `∂(j, i)`,
    /// and mirrored for the other side).
    pub fn designated_by_rays(&self, pair: Pair) -> Vec<usize> {
        let n = self.poly.n();
        let (i, j) = (pair.from, pair.to);
        (0..n)
            .filter(|&v| v != i && v != j && self.graph.visible(i, v))
            .filter(|&v| {
                let Some(m) = self.exit_edge(v, i) else {
                    return false;
                };
                if crate::graph::in_interval(n, i, j, v) {
                    edge_in_interval(n, j, i, m)
                } else {
                    edge_in_interval(n, i, j, m)
                }
            })
            .collect()
    }

    pub fn blockers(&self) -> Result<BlockerAssignment, OracleError> {
        self.graph
            .invisible_pairs()
            .into_iter()
            .map(|p| self.designated_blocker(p).map(|b| (p, b)))
            .collect()
    }
}
