use super::predicates::{cross, in_cone, sub};
use super::Polygon;
use num_rational::Ratio;

/// Where the continuation of a sightline leaves the polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RayHit {
    /// The direction points out of the interior angle at the start vertex.
    ImmediateExit,
    /// First open edge crossed, with the exact crossing point.
    EdgeHit {
        edge: usize,
        point: (Ratio<i128>, Ratio<i128>),
    },
}

impl RayHit {
    pub fn edge(&self) -> Option<usize> {
        match self {
            RayHit::EdgeHit { edge, .. } => Some(*edge),
            RayHit::ImmediateExit => None,
        }
    }
}

/// Trace the ray from `p_k` in direction `p_k - p_away_from`.
///
/// General position means the ray never passes through a vertex other than
/// its start, so every hit is a proper crossing of an open edge.
pub fn ray_first_exit(poly: &Polygon, k: usize, away_from: usize) -> RayHit {
    let n = poly.n();
    let pk = poly.point(k);
    let d = sub(pk, poly.point(away_from));
    if !in_cone(poly.point((k + n - 1) % n), pk, poly.point((k + 1) % n), d) {
        return RayHit::ImmediateExit;
    }
    // Ray pk + t*d against segment a + u*(b - a):
    //   t = cross(a - pk, b - a) / den,  u = cross(a - pk, d) / den,  den = cross(d, b - a)
    let mut best: Option<(usize, i128, i128)> = None; // (edge, t_num, den) with den > 0
    for m in 0..n {
        if m == k || (m + 1) % n == k {
            continue;
        }
        let (a, b) = poly.edge(m);
        let ab = sub(b, a);
        let ak = sub(a, pk);
        let mut den = cross(d, ab);
        let mut tn = cross(ak, ab);
        let mut un = cross(ak, d);
        if den == 0 {
            continue;
        }
        if den < 0 {
            den = -den;
            tn = -tn;
            un = -un;
        }
        if tn <= 0 || un <= 0 || un >= den {
            continue;
        }
        if best.is_none_or(|(_, bt, bd)| tn * bd < bt * den) {
            best = Some((m, tn, den));
        }
    }
    let (edge, tn, den) = best.expect("a ray starting inside a bounded polygon must leave it");
    let at = |c: i64, dc: i128| Ratio::new(c as i128 * den + tn * dc, den);
    RayHit::EdgeHit {
        edge,
        point: (at(pk.0, d.0), at(pk.1, d.1)),
    }
}
