//! Event-driven geodesic and billiard tracing on glued cell complexes.

mod orbit;
mod section;
mod state;
mod transversality;

pub use orbit::{directional_orbit, DirectionalOrbit};
pub use section::{billiard_map, CrossSection, CrossSectionPoint, SectionEdge, SectionReturn};
pub use state::{Budget, EventKind, Flow, TangentState, TraceEvent};
pub use transversality::{transversality_measure, MeasureEstimate, MeasureMode};

/// Vertices closer than this to a hit point are treated as hit.
pub const EPS_SING: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("direction has zero length")]
    DegenerateDirection,
    #[error("numerical failure: no exit from cell {cell}")]
    EscapedCell { cell: usize },
    #[error("could not resolve passage through vertex {vertex}")]
    VertexResolution { vertex: usize },
    #[error("group is not finite")]
    InfiniteGroup,
    #[error("no return to the cross-section within budget")]
    NoReturn,
    #[error("orbit hit singular vertex {vertex}")]
    SingularHit { vertex: usize },
    #[error("orbit left the instantiated window")]
    WindowExit,
    #[error("point is not on the cross-section or points out of the surface")]
    BadSectionPoint,
}
