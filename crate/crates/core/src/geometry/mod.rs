//! Exact straight-line oracle.
//!
//! Simple polygons with integer coordinates in general position are
//! pseudo-polygons, so they provide ground truth for every combinatorial
//! check in the crate: visibility graphs, vertex-edge visibility and
//! designated blockers. No floating point is used anywhere; predicates are
//! signs of integer cross products and ray hits are exact rationals.

mod generate;
mod lemmas;
mod oracle;
pub mod predicates;
mod ray;

pub use generate::random_simple_polygon;
pub use lemmas::{check_lemma1, check_lemma2, check_lemma3, LemmaFailure, LemmaReport};
pub use oracle::{
    designated_blocker_geo, geometric_blockers, sees_edge, sees_vertex, ve_graph_geo,
    visibility_graph, EdgeSight, Oracle, OracleError,
};
pub use predicates::{Point, COORD_LIMIT};
pub use ray::{ray_first_exit, RayHit};

use predicates::{cross_properly, orient};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("coordinate of p{0} exceeds the supported bound")]
    CoordinateOutOfRange(usize),
    #[error("p{0} and p{1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("p{0}, p{1}, p{2} are collinear")]
    DegenerateInput(usize, usize, usize),
    #[error("edges e{0} and e{1} cross")]
    NotSimple(usize, usize),
    #[error("vertices are in clockwise order")]
    Clockwise,
    #[error(
        "no simple polygon with {n} vertices found for seed {seed} within the resampling budget"
    )]
    GenerationBudgetExceeded { n: usize, seed: u64 },
}

/// Simple polygon in general position, vertices counterclockwise.
///
/// Edge `e_m` joins `p_m` and `p_{m+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pts: Vec<Point>,
}

impl Polygon {
    pub fn new(pts: Vec<Point>) -> Result<Self, GeometryError> {
        let n = pts.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if let Some(i) = pts
            .iter()
            .position(|p| p.0.abs() > COORD_LIMIT || p.1.abs() > COORD_LIMIT)
        {
            return Err(GeometryError::CoordinateOutOfRange(i));
        }
        for a in 0..n {
            for b in a + 1..n {
                if pts[a] == pts[b] {
                    return Err(GeometryError::DuplicateVertex(a, b));
                }
            }
        }
        if let Some((a, b, c)) = collinear_triple(&pts) {
            return Err(GeometryError::DegenerateInput(a, b, c));
        }
        // Without collinear triples two edges can only meet by crossing.
        for a in 0..n {
            for b in a + 2..n {
                if a == 0 && b == n - 1 {
                    continue;
                }
                if cross_properly(pts[a], pts[(a + 1) % n], pts[b], pts[(b + 1) % n]) {
                    return Err(GeometryError::NotSimple(a, b));
                }
            }
        }
        if signed_area2(&pts) < 0 {
            return Err(GeometryError::Clockwise);
        }
        Ok(Polygon { pts })
    }

    pub fn n(&self) -> usize {
        self.pts.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.pts
    }

    pub fn point(&self, i: usize) -> Point {
        self.pts[i]
    }

    /// Endpoints of edge `e_m`.
    pub fn edge(&self, m: usize) -> (Point, Point) {
        (self.pts[m], self.pts[(m + 1) % self.n()])
    }

    /// Mirror image `(x, y) -> (-x, y)`, relabelled so it stays
    /// counterclockwise: vertex `i` of the result is vertex `-i mod n` here.
    pub fn reflected(&self) -> Polygon {
        let n = self.n();
        let pts = (0..n).map(|i| {
            let p = self.pts[(n - i) % n];
            (-p.0, p.1)
        });
        Polygon { pts: pts.collect() }
    }

    pub fn to_file(&self) -> PolygonFile {
        PolygonFile {
            vertices: self.pts.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }
}

pub fn signed_area2(pts: &[Point]) -> i128 {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
        })
        .sum()
}

pub(crate) fn collinear_triple(pts: &[Point]) -> Option<(usize, usize, usize)> {
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if orient(pts[a], pts[b], pts[c]) == 0 {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// On-disk polygon format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<[i64; 2]>,
}

impl PolygonFile {
    pub fn to_polygon(&self) -> Result<Polygon, GeometryError> {
        Polygon::new(self.vertices.iter().map(|&[x, y]| (x, y)).collect())
    }
}
