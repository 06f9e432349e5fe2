//! Shared workloads for the benchmarks.

use pseudovis::geometry::{random_simple_polygon, visibility_graph};
use pseudovis::{Polygon, VisGraph};

/// `count` polygons of `n` vertices with their visibility graphs.
pub fn polygon_workload(n: usize, count: u64) -> Vec<(Polygon, VisGraph)> {
    (0..count)
        .map(|seed| {
            let p = random_simple_polygon(n, seed).expect("generator succeeds at bench sizes");
            let g = visibility_graph(&p);
            (p, g)
        })
        .collect()
}
