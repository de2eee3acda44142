//! Approximate maximization of set centralities by progressive random
//! sampling, with data-dependent supremum-deviation bounds from Monte Carlo
//! Rademacher averages plus VC-dimension and union-bound baselines.
//!
//! The pipeline: [`sampler`] draws hyper-edges (internal nodes of random
//! shortest paths), [`greedy`] extracts a maximum-coverage node set,
//! [`rademacher`] and [`bounds`] certify how far empirical coverage can sit
//! from the true centrality, and [`engine`] grows the sample until the
//! certified gap is small enough for a `(1 - 1/e - eps)`-approximation.
//! [`oracle`] holds the brute-force ground truth the test suite checks
//! everything against.

pub mod bounds;
pub mod engine;
pub mod error;
pub mod graph;
pub mod greedy;
pub mod oracle;
pub mod rademacher;
mod rng;
pub mod sampler;
pub mod synthetic;

pub use bounds::BoundReport;
pub use engine::{run, RunConfig, RunResult, Variant};
pub use error::{Error, Result};
pub use graph::{Graph, GraphStats, ParseReport};
pub use greedy::{greedy_cover, GreedyResult};
pub use rademacher::RademacherState;
pub use sampler::{HyperEdge, Sample};
