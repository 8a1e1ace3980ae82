//! Deciding which 3-uniform hypergraphs are metric.

mod canon;
mod closure;
mod enumerate;
mod search;
mod simplex;
mod system;

pub use canon::canonical_form;
pub use closure::{orientation_closure, Closure, Conflict, ConflictKind, OrientationAssignment};
pub use enumerate::{enumerate_minimal_nonmetric, is_minimal_nonmetric, is_minimal_nonmetric_with, Enumeration};
pub use search::{complete_core, decide_metric, decide_metric_naive, ConflictTally, DecideOptions, SearchStats, Verdict};
pub use system::{build_feasibility_system, solve_exact_feasibility, FeasibilitySystem, TriangleForm};
