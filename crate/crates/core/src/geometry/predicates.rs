//! Integer orientation predicates. Coordinates are bounded by
//! [`COORD_LIMIT`], so every cross product fits comfortably in `i128` and
//! products of two cross products still do.

pub type Point = (i64, i64);

/// Largest absolute coordinate accepted by [`super::Polygon`].
pub const COORD_LIMIT: i64 = 1 << 30;

#[inline]
pub fn sub(a: Point, b: Point) -> (i128, i128) {
    ((a.0 - b.0) as i128, (a.1 - b.1) as i128)
}

#[inline]
pub fn cross(u: (i128, i128), v: (i128, i128)) -> i128 {
    u.0 * v.1 - u.1 * v.0
}

/// Twice the signed area of `abc`; positive for a left turn.
#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    cross(sub(b, a), sub(c, a))
}

/// Open segments `ab` and `cd` cross at a single interior point.
#[inline]
pub fn cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Whether direction `d` points strictly into the interior angle at `v`,
/// whose boundary neighbours are `prev` and `next` on a counterclockwise
/// polygon.
pub fn in_cone(prev: Point, v: Point, next: Point, d: (i128, i128)) -> bool {
    let to_next = sub(next, v);
    let to_prev = sub(prev, v);
    if orient(prev, v, next) > 0 {
        cross(to_next, d) > 0 && cross(d, to_prev) > 0
    } else {
        // reflex: complement of the closed exterior wedge
        !(cross(to_prev, d) >= 0 && cross(d, to_next) >= 0)
    }
}
