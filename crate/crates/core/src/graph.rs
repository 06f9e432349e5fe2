//! Cyclically indexed graphs with a distinguished Hamiltonian cycle.
//!
//! Vertices are `0..n` and the cycle is `0, 1, ..., n-1, 0`. Increasing index
//! is the counterclockwise direction; decreasing index is clockwise.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("cycle edge {{{0}, {1}}} is missing")]
    MissingCycleEdge(usize, usize),
}

/// Walking direction along the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    /// Increasing index.
    Ccw,
    /// Decreasing index.
    Cw,
}

impl Dir {
    pub fn reverse(self) -> Dir {
        match self {
            Dir::Ccw => Dir::Cw,
            Dir::Cw => Dir::Ccw,
        }
    }
}

#[inline]
pub fn succ(n: usize, v: usize) -> usize {
    if v + 1 == n {
        0
    } else {
        v + 1
    }
}

#[inline]
pub fn pred(n: usize, v: usize) -> usize {
    if v == 0 {
        n - 1
    } else {
        v - 1
    }
}

#[inline]
pub fn step(n: usize, v: usize, dir: Dir) -> usize {
    match dir {
        Dir::Ccw => succ(n, v),
        Dir::Cw => pred(n, v),
    }
}

/// Number of steps from `a` to `b` walking in `dir`.
#[inline]
pub fn dist(n: usize, a: usize, b: usize, dir: Dir) -> usize {
    match dir {
        Dir::Ccw => (b + n - a) % n,
        Dir::Cw => (a + n - b) % n,
    }
}

/// Vertices met walking from `a` to `b` in `dir`, both ends included.
pub fn walk(n: usize, a: usize, b: usize, dir: Dir) -> impl Iterator<Item = usize> {
    let len = dist(n, a, b, dir) + 1;
    let mut v = a;
    (0..len).map(move |_| {
        let out = v;
        v = step(n, v, dir);
        out
    })
}

/// Whether `v` lies on the walk from `a` to `b` in `dir` (ends included).
#[inline]
pub fn on_walk(n: usize, a: usize, b: usize, v: usize, dir: Dir) -> bool {
    dist(n, a, v, dir) <= dist(n, a, b, dir)
}

/// Membership in the vertex set of the counterclockwise interval from `i` to `j`.
#[inline]
pub fn in_interval(n: usize, i: usize, j: usize, v: usize) -> bool {
    on_walk(n, i, j, v, Dir::Ccw)
}

/// The boundary interval walked counterclockwise from `start` to `end`.
///
/// When `start == end` the interval is the single vertex and has no edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryInterval {
    pub n: usize,
    pub start: usize,
    pub end: usize,
}

impl BoundaryInterval {
    pub fn new(n: usize, start: usize, end: usize) -> Self {
        BoundaryInterval { n, start, end }
    }

    pub fn vertices(&self) -> Vec<usize> {
        interval_vertices(self.n, self.start, self.end)
    }

    pub fn edges(&self) -> Vec<usize> {
        interval_edges(self.n, self.start, self.end)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        in_interval(self.n, self.start, self.end, v)
    }

    /// Edge `e_m` joins `m` and `m + 1`.
    pub fn contains_edge(&self, m: usize) -> bool {
        self.start != self.end && dist(self.n, self.start, m, Dir::Ccw) < self.len_edges()
    }

    /// Strictly between the two ends.
    pub fn contains_interior(&self, v: usize) -> bool {
        v != self.start && v != self.end && self.contains_vertex(v)
    }

    pub fn len_edges(&self) -> usize {
        dist(self.n, self.start, self.end, Dir::Ccw)
    }
}

pub fn interval_vertices(n: usize, i: usize, j: usize) -> Vec<usize> {
    walk(n, i, j, Dir::Ccw).collect()
}

pub fn interval_edges(n: usize, i: usize, j: usize) -> Vec<usize> {
    let len = dist(n, i, j, Dir::Ccw);
    walk(n, i, j, Dir::Ccw).take(len).collect()
}

/// Edge index `m` is in `edges(∂(i, j))`.
#[inline]
pub fn edge_in_interval(n: usize, i: usize, j: usize, m: usize) -> bool {
    i != j && dist(n, i, m, Dir::Ccw) < dist(n, i, j, Dir::Ccw)
}

/// An ordered pair of vertices. Invisible pairs are ordered: `(i, j)` and
/// `(j, i)` are distinct. Serialized as `[from, to]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Pair {
    pub from: usize,
    pub to: usize,
}

impl Pair {
    pub fn new(from: usize, to: usize) -> Self {
        Pair { from, to }
    }

    pub fn reversed(self) -> Pair {
        Pair::new(self.to, self.from)
    }
}

impl From<[usize; 2]> for Pair {
    fn from(a: [usize; 2]) -> Self {
        Pair::new(a[0], a[1])
    }
}

impl From<Pair> for [usize; 2] {
    fn from(p: Pair) -> Self {
        [p.from, p.to]
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p{}, p{})", self.from, self.to)
    }
}

/// A graph on `n >= 3` vertices whose edges include the cycle `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisGraph {
    n: usize,
    adj: Vec<bool>,
}

impl VisGraph {
    /// Builds the symmetric closure of `pairs`; every cycle edge must be listed.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices(n));
        }
        let mut adj = vec![false; n * n];
        for &(a, b) in pairs {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::IndexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        for i in 0..n {
            let j = succ(n, i);
            if !adj[i * n + j] {
                return Err(GraphError::MissingCycleEdge(i.min(j), i.max(j)));
            }
        }
        Ok(VisGraph { n, adj })
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        VisGraph::new(n, &pairs).expect("complete graph contains its cycle")
    }

    /// The bare cycle with no chords.
    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, succ(n, i))).collect();
        VisGraph::new(n, &pairs).expect("cycle contains its cycle")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn visible(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    #[inline]
    pub fn is_invisible(&self, p: Pair) -> bool {
        p.from != p.to && p.from < self.n && p.to < self.n && !self.visible(p.from, p.to)
    }

    /// Unordered visible pairs as `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.visible(i, j))
            .collect()
    }

    /// Both orders of every non-adjacent vertex pair, lexicographic.
    pub fn invisible_pairs(&self) -> Vec<Pair> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (0..n).map(move |j| Pair::new(i, j)))
            .filter(|&p| self.is_invisible(p))
            .collect()
    }

    pub fn is_cycle_edge(&self, i: usize, j: usize) -> bool {
        succ(self.n, i) == j || succ(self.n, j) == i
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

/// On-disk graph format: unordered pairs, cycle edges required.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<VisGraph, GraphError> {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        VisGraph::new(self.n, &pairs)
    }
}
