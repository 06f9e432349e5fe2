//! Small named instances used throughout tests, examples and benches.

use crate::geometry::Polygon;
use crate::graph::VisGraph;

/// Four-cycle with the single chord `{1, 3}`.
pub fn quad4() -> VisGraph {
    VisGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap()
}

/// Pentagon with one reflex vertex, `p2`, dented towards the interior.
pub fn dent5_polygon() -> Polygon {
    Polygon::new(vec![(0, 0), (6, 0), (3, 2), (6, 6), (0, 6)]).unwrap()
}

/// Visibility graph of [`dent5_polygon`].
pub fn dent5_graph() -> VisGraph {
    VisGraph::new(
        5,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 2),
            (0, 3),
            (2, 4),
        ],
    )
    .unwrap()
}

pub fn unit_square() -> Polygon {
    Polygon::new(vec![(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
}

/// Chordless cycle on `n` vertices.
pub fn chordless(n: usize) -> VisGraph {
    VisGraph::cycle(n)
}
