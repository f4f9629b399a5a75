//! Shared-memory parallel maximal matching toolkit.
//!
//! The centerpiece is [`skipper::run_skipper`], a single-pass asynchronous
//! matching algorithm that coordinates workers through one atomic byte per
//! vertex. Alongside it: [`limchung::run_limchung`], an iterative
//! mutual-selection baseline with near-maximum output size;
//! [`greedy::run_greedy`], the sequential reference; graph loading and
//! synthetic generation in [`graph`] and [`generators`]; output checkers in
//! [`validate`]; and run-metric aggregation in [`report`].

pub mod error;
pub mod generators;
pub mod graph;
pub mod greedy;
pub mod limchung;
pub mod matching;
pub mod report;
pub mod skipper;
pub mod validate;

pub use error::{Error, Result};
pub use generators::{generate, GeneratorSpec, GraphFamily, DEFAULT_RMAT_PROBS};
pub use graph::{Edge, EdgeOrder, Graph, VertexId};
pub use greedy::run_greedy;
pub use limchung::{run_limchung, LimChungMetrics};
pub use matching::Matching;
pub use report::{compare_report, ReportSummary, RunMetrics};
pub use skipper::{
    partition_edges, process_edge, run_skipper, EdgeOutcome, SkipperMetrics, SkipperRun,
    VertexStates,
};
pub use validate::{
    brute_force_maximum_matching, check_matching, check_state_consistency, MatchingReport,
    Violation,
};
