//! Finite-subset hyperspaces of the Hilbert cube: metrics, homotopies,
//! nearest-point projections onto convex hulls, a fiberwise factor map, and
//! a two-cube wedge, with seeded numerical verification of each.

pub mod cube;
pub mod factor_map;
pub mod homotopies;
pub mod hyperspace;
pub mod metric;
pub mod projection;
pub mod report;
pub mod sampling;
pub mod suite;
pub mod wedge;

pub use cube::{distance, CubeError, CubePoint, MetricKind, DEFAULT_DEPTH, MAX_DEPTH};
pub use hyperspace::{hausdorff, hausdorff_with, induced_map, FiniteSubset, HyperspaceError};
pub use metric::Metric;
pub use projection::{eta, ProjectionError, ProjectionResult, SimplexWeights};
pub use report::{VerificationReport, Violation};
pub use suite::{run_all, run_suite, AggregateReport, Suite, SuiteConfig, SuiteError};
pub use wedge::{Side, WedgePoint, WedgeSpace};
