//! Polygonal surfaces as glued cell complexes.

mod cell;
mod double;
mod lazy;
mod slab;
mod surface;
mod vertices;

pub use cell::{point_segment_distance, Cell};
pub(crate) use double::mirrored_edge;
pub use double::{double_surface, euler_characteristic};
pub use lazy::{Block, BlockEdge, BlockGluing, BlockProvider, LazySurface, Window};
pub use slab::{slab_surface, Barrier, Obstacle, SlabSpec, Wrap};
pub use surface::{build_surface, build_with_cut as build_surface_with_cut, cyclic_cover, EdgeRef, Gluing, Side, Surface};
pub use vertices::{
    validate_conditions, vertex_angles, ConditionReport, VertexClass, VertexKind, VertexMap,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("cell {cell} is invalid: {reason}")]
    BadCell { cell: usize, reason: String },
    #[error("gluing {gluing} references a missing cell or edge")]
    BadReference { gluing: usize },
    #[error("gluing {gluing} joins edges of different length ({len_a} vs {len_b})")]
    LengthMismatch { gluing: usize, len_a: f64, len_b: f64 },
    #[error("edge {cell}:{edge} appears in more than one gluing")]
    DuplicateGluing { cell: usize, edge: usize },
    #[error("gluing graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("gluing {gluing} does not put the two cells on opposite sides of the edge")]
    BadOrientation { gluing: usize },
    #[error("gluing {gluing} map does not carry edge endpoints onto the partner edge")]
    EndpointMismatch { gluing: usize },
    #[error("every boundary edge would be kept open; the double would be disconnected")]
    EmptyGlueSet,
    #[error("surface has no boundary to double along")]
    NoBoundary,
    #[error("edge {cell}:{edge} is not a boundary edge")]
    NotBoundary { cell: usize, edge: usize },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("barrier endpoints coincide")]
    BarrierCollision,
}
