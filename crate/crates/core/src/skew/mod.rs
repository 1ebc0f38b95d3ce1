//! ℤ-periodic skew products over the quotient section map.

mod centering;
mod recurrence;
mod system;

pub use centering::{centering_integral, CenteringMethod, CenteringResult};
pub use recurrence::{recurrence_experiment, recurrence_over_directions, OrbitRecord, OrbitStatus, RecurrenceReport, ReportSummary, Verdict};
pub use system::{displacement_return, DirectionMode, SkewSystem};

use crate::flow::FlowError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SkewError {
    #[error("quotient is not compact: it has window cuts")]
    NotCompact,
    #[error("surface is not rational")]
    IrrationalSurface,
    #[error("direction is not transversal to the section")]
    NonTransversal,
    #[error("exact quadrature needs a fixed direction")]
    QuadratureNeedsDirection,
    #[error(transparent)]
    Flow(#[from] FlowError),
}
