use super::predicates::{cross_properly, Point};
use super::{collinear_triple, signed_area2, GeometryError, Polygon};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

const MAX_ATTEMPTS: usize = 1000;

/// Random simple polygon on `n` grid points in `[0, 4n]²`.
///
/// Points are resampled until no three are collinear, a random tour is
/// untangled by 2-opt moves, and the result is turned counterclockwise.
/// Deterministic in `(n, seed)`.
pub fn random_simple_polygon(n: usize, seed: u64) -> Result<Polygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let side = 4 * n as i64;
    for _ in 0..MAX_ATTEMPTS {
        let mut seen = BTreeSet::new();
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = (rng.gen_range(0..=side), rng.gen_range(0..=side));
            if seen.insert(p) {
                pts.push(p);
            }
        }
        if collinear_triple(&pts).is_some() {
            continue;
        }
        pts.shuffle(&mut rng);
        if !untangle(&mut pts) {
            continue;
        }
        if signed_area2(&pts) < 0 {
            pts.reverse();
        }
        if let Ok(p) = Polygon::new(pts) {
            return Ok(p);
        }
    }
    Err(GeometryError::GenerationBudgetExceeded { n, seed })
}

/// Repeatedly reverse the tour between two crossing edges. Each move
/// strictly shortens the tour, so this terminates; the cap is a guard.
fn untangle(t: &mut [Point]) -> bool {
    let n = t.len();
    let cap = 50 * n * n * n;
    for _ in 0..cap {
        let mut moved = false;
        'scan: for a in 0..n {
            for b in a + 2..n {
                if a == 0 && b == n - 1 {
                    continue;
                }
                if cross_properly(t[a], t[a + 1], t[b], t[(b + 1) % n]) {
                    t[a + 1..=b].reverse();
                    moved = true;
                    break 'scan;
                }
            }
        }
        if !moved {
            return true;
        }
    }
    false
}
