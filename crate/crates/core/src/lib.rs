//! Recognition of visibility graphs of pseudo-polygons.
//!
//! A graph on a Hamiltonian cycle `p_0 .. p_{n-1}` is tested for a
//! *blocker assignment*: each ordered invisible pair gets one of at most two
//! candidate blockers so that the necessary conditions NC1–NC5 hold. The
//! [`geometry`] module is an exact straight-line oracle used to generate
//! ground truth.
//!
//! ```
//! use pseudovis::{find_assignment, fixtures, Verdict};
//!
//! let v = find_assignment(&fixtures::dent5_graph()).unwrap();
//! assert!(matches!(v, Verdict::Accepted { .. }));
//! ```

pub mod blockers;
pub mod conditions;
pub mod corpus;
pub mod fixtures;
pub mod geometry;
pub mod graph;
pub mod recognizer;
pub mod vertex_edge;

pub use blockers::{
    all_candidates, candidate_blockers, AssignmentFile, BlockerAssignment, BlockerError,
    CandidateSet, CandidateTable, Side,
};
pub use conditions::{
    check_conditions, pinched_quadruples, separable_pairs, Condition, ConditionError,
    PinchedQuadruple, SeparablePair, Violation, ViolationReport,
};
pub use geometry::{GeometryError, Polygon, PolygonFile};
pub use graph::{BoundaryInterval, Dir, GraphError, GraphFile, Pair, VisGraph};
pub use recognizer::{
    find_assignment, find_assignment_with, verify, Certificate, RecognizeError, SearchConfig,
    Verdict, VerdictFile, VerifyReport,
};
pub use vertex_edge::{build_ve, check_theorem1, is_articulation, VEFile, VEGraph, VeError};
