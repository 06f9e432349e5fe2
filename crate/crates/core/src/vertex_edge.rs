//! Vertex-edge visibility derived from a blocker assignment, and the
//! characterization of vertex-edge visibility graphs of pseudo-polygons.

use crate::blockers::{all_candidates, BlockerAssignment, CandidateTable};
use crate::graph::{dist, pred, succ, BoundaryInterval, Dir, Pair, VisGraph};
use crate::recognizer::verify;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VeError {
    #[error("assignment does not verify: {0}")]
    InvalidAssignment(String),
    #[error("p{v} is not strictly inside the interval ∂(p{start}, p{end})")]
    VertexOutsideInterval { v: usize, start: usize, end: usize },
}

/// Which boundary edges each vertex sees. `sees(i, m)` for edge `e_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VEGraph {
    n: usize,
    bits: Vec<bool>,
}

impl VEGraph {
    /// Nothing seen.
    pub fn new(n: usize) -> Self {
        VEGraph {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sees(&self, i: usize, m: usize) -> bool {
        self.bits[i * self.n + m]
    }

    pub fn set(&mut self, i: usize, m: usize, v: bool) {
        self.bits[i * self.n + m] = v;
    }

    /// Edges seen by `p_i`, ascending.
    pub fn row(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&m| self.sees(i, m)).collect()
    }

    /// Entries where the two relations differ.
    pub fn diff(&self, other: &VEGraph) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n)
            .filter(|&c| self.bits.get(c) != other.bits.get(c))
            .map(|c| (c / n, c % n))
            .collect()
    }

    pub fn to_file(&self) -> VEFile {
        let n = self.n;
        VEFile {
            n,
            sees: (0..n * n)
                .filter(|&c| self.bits[c])
                .map(|c| [c / n, c % n])
                .collect(),
        }
    }
}

/// On-disk format: true entries only, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VEFile {
    pub n: usize,
    pub sees: Vec<[usize; 2]>,
}

impl VEFile {
    pub fn to_ve(&self) -> Option<VEGraph> {
        let mut ve = VEGraph::new(self.n);
        for &[i, m] in &self.sees {
            if i >= self.n || m >= self.n {
                return None;
            }
            ve.set(i, m, true);
        }
        Some(ve)
    }
}

/// The vertex-edge relation an assignment induces.
pub fn build_ve(g: &VisGraph, a: &BlockerAssignment) -> Result<VEGraph, VeError> {
    let report = verify(g, a);
    if !report.valid {
        let why = if let Some(e) = report.entry_error {
            e
        } else if let Some(p) = report.missing.first() {
            format!("{p} has no blocker")
        } else {
            report.violations[0].narrative.clone()
        };
        return Err(VeError::InvalidAssignment(why));
    }
    Ok(build_ve_unchecked(g.n(), a))
}

/// [`build_ve`] without verifying the assignment first.
///
/// `p_i` sees its two incident edges. It misses `e_j` exactly when some
/// sightline from `p_i` is blocked with target and blocker on opposite sides
/// of `e_j`: one in `∂(p_{i+1}, p_j)`, the other in `∂(p_{j+1}, p_{i-1})`.
/// Both clauses include `p_j` on the near side, which keeps the rule
/// symmetric under reflection.
pub fn build_ve_unchecked(n: usize, a: &BlockerAssignment) -> VEGraph {
    let mut ve = VEGraph::new(n);
    for i in 0..n {
        // position along the counterclockwise walk from p_i
        let pos = |v: usize| dist(n, i, v, Dir::Ccw);
        for j in 0..n {
            if j == i || j == pred(n, i) {
                ve.set(i, j, true);
                continue;
            }
            let pj = pos(j);
            let hidden = (1..n).map(|d| (i + d) % n).any(|x| {
                let Some(k) = a.get(Pair::new(i, x)) else {
                    return false;
                };
                (pos(x) > pj) != (pos(k) > pj)
            });
            ve.set(i, j, !hidden);
        }
    }
    ve
}

/// Whether `v` separates the interval: it is a candidate blocker of some
/// invisible pair with one end on either side of it inside the interval.
pub fn is_articulation(
    g: &VisGraph,
    cands: &CandidateTable,
    interval: BoundaryInterval,
    v: usize,
) -> Result<bool, VeError> {
    let n = g.n();
    let (start, end) = (interval.start, interval.end);
    if !interval.contains_interior(v) {
        return Err(VeError::VertexOutsideInterval { v, start, end });
    }
    let left = BoundaryInterval::new(n, start, pred(n, v)).vertices();
    let right = BoundaryInterval::new(n, succ(n, v), end).vertices();
    Ok(left.iter().any(|&s| {
        right
            .iter()
            .any(|&t| cands.is_candidate(Pair::new(s, t), v))
    }))
}

/// Cut-vertex test on the incidence structure of an interval: nodes are its
/// vertices and edges, arcs join each edge to its endpoints and to every
/// interval vertex that sees it.
pub fn incidence_articulation(ve: &VEGraph, interval: BoundaryInterval, v: usize) -> bool {
    let n = ve.n();
    let verts = interval.vertices();
    let edges = interval.edges();
    // node ids: vertices 0..nv, edges nv..
    let nv = verts.len();
    let vid = |x: usize| verts.iter().position(|&y| y == x);
    let mut adj = vec![Vec::new(); nv + edges.len()];
    for (ei, &m) in edges.iter().enumerate() {
        let e = nv + ei;
        for (xi, &x) in verts.iter().enumerate() {
            if x == m || x == succ(n, m) || ve.sees(x, m) {
                adj[xi].push(e);
                adj[e].push(xi);
            }
        }
    }
    let Some(skip) = vid(v) else { return false };
    let live = adj.len() - 1;
    if live == 0 {
        return false;
    }
    let root = if skip == 0 { 1 } else { 0 };
    let mut seen = vec![false; adj.len()];
    seen[skip] = true;
    seen[root] = true;
    let mut stack = vec![root];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached < live
}

/// One firing of the characterization: `p_k` sees `e_i` and `e_j`,
/// non-adjacent, and nothing strictly between them counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Instance {
    pub k: usize,
    pub ei: usize,
    pub ej: usize,
    /// `p_{i+1}` sees `e_j` and separates `∂(p_k, p_j)`.
    pub branch1: bool,
    /// `p_j` sees `e_i` and separates `∂(p_{i+1}, p_k)`.
    pub branch2: bool,
}

impl Theorem1Instance {
    pub fn holds(&self) -> bool {
        self.branch1 != self.branch2
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub instances: Vec<Theorem1Instance>,
}

impl Theorem1Report {
    pub fn failures(&self) -> impl Iterator<Item = &Theorem1Instance> {
        self.instances.iter().filter(|t| !t.holds())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Checks every gap in every vertex's seen edges; each gap with `p_k` in
/// `∂(p_{j+1}, p_i)` must satisfy exactly one branch.
pub fn check_theorem1(ve: &VEGraph, g: &VisGraph, cands: &CandidateTable) -> Theorem1Report {
    let n = g.n();
    let mut instances = Vec::new();
    for k in 0..n {
        for i in 0..n {
            if !ve.sees(k, i) {
                continue;
            }
            let Some(j) = (1..n).map(|d| (i + d) % n).find(|&m| ve.sees(k, m)) else {
                continue;
            };
            if j == succ(n, i) || i == succ(n, j) || j == i {
                continue;
            }
            let i1 = succ(n, i);
            // k in ∂(j+1, i)
            if dist(n, succ(n, j), k, Dir::Ccw) > dist(n, succ(n, j), i, Dir::Ccw) {
                continue;
            }
            let art = |start: usize, end: usize, v: usize| {
                is_articulation(g, cands, BoundaryInterval::new(n, start, end), v)
                    .expect("vertex is interior by construction")
            };
            let branch1 = ve.sees(i1, j) && art(k, j, i1);
            let branch2 = ve.sees(j, i) && art(i1, k, j);
            instances.push(Theorem1Instance {
                k,
                ei: i,
                ej: j,
                branch1,
                branch2,
            });
        }
    }
    Theorem1Report { instances }
}

/// [`check_theorem1`] computing candidates itself.
pub fn check_theorem1_graph(ve: &VEGraph, g: &VisGraph) -> Theorem1Report {
    check_theorem1(ve, g, &all_candidates(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::dent5_graph;

    fn all2() -> BlockerAssignment {
        [(1, 3), (1, 4), (3, 1), (4, 1)]
            .into_iter()
            .map(|(i, j)| (Pair::new(i, j), 2))
            .collect()
    }

    #[test]
    fn complete_graph_sees_everything() {
        let g = VisGraph::complete(5);
        let ve = build_ve(&g, &BlockerAssignment::new()).unwrap();
        assert!((0..5).all(|i| ve.row(i).len() == 5));
        let r = check_theorem1_graph(&ve, &g);
        assert!(r.instances.is_empty());
    }

    #[test]
    fn dent5_rows() {
        let ve = build_ve(&dent5_graph(), &all2()).unwrap();
        assert_eq!(ve.row(1), vec![0, 1, 4]);
        assert_eq!(ve.row(3), vec![0, 2, 3, 4]);
    }

    #[test]
    fn invalid_assignment_is_rejected() {
        let mut a = all2();
        a.insert(Pair::new(1, 3), 0);
        assert!(matches!(
            build_ve(&dent5_graph(), &a),
            Err(VeError::InvalidAssignment(_))
        ));
    }

    #[test]
    fn articulation() {
        let g = dent5_graph();
        let c = all_candidates(&g);
        assert_eq!(
            is_articulation(&g, &c, BoundaryInterval::new(5, 1, 4), 2),
            Ok(true)
        );
        assert_eq!(
            is_articulation(&g, &c, BoundaryInterval::new(5, 1, 4), 1),
            Err(VeError::VertexOutsideInterval {
                v: 1,
                start: 1,
                end: 4
            })
        );
        let k5 = VisGraph::complete(5);
        let c5 = all_candidates(&k5);
        for s in 0..5 {
            for v in 1..4 {
                let iv = BoundaryInterval::new(5, s, (s + 4) % 5);
                assert_eq!(is_articulation(&k5, &c5, iv, (s + v) % 5), Ok(false));
            }
        }
    }

    #[test]
    fn dent5_theorem1() {
        let g = dent5_graph();
        let ve = build_ve(&g, &all2()).unwrap();
        let r = check_theorem1_graph(&ve, &g);
        assert!(r.passed(), "{:?}", r.instances);
        let first = r.instances.iter().find(|t| t.k == 1).unwrap();
        assert_eq!(
            (first.ei, first.ej, first.branch1, first.branch2),
            (1, 4, true, false)
        );

        let mut broken = ve.clone();
        broken.set(2, 4, false);
        let r = check_theorem1_graph(&broken, &g);
        let fails: Vec<_> = r.failures().map(|t| (t.k, t.ei, t.ej)).collect();
        assert!(fails.contains(&(1, 1, 4)), "{fails:?}");
    }

    #[test]
    fn ve_json() {
        let ve = build_ve(&dent5_graph(), &all2()).unwrap();
        let f = ve.to_file();
        assert_eq!(f.n, 5);
        assert!(f.sees.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(f.to_ve().unwrap(), ve);
    }
}
