//! Translation covers, square tilings and origamis.

mod cover;
mod direction;
mod origami;
mod tiling;

pub use cover::{canonical_translation_cover, TranslationCover};
pub use direction::{classify_direction, classify_slope, DirectionClass};
pub use origami::{origami, origami_from_polygon};
pub use tiling::{is_square_tiled, SquareTiling};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UnfoldError {
    #[error("surface is not rational")]
    IrrationalSurface,
    #[error("surface has nontrivial rotational holonomy")]
    NontrivialHolonomy,
    #[error("no square tiling found within the search bound")]
    NotSquareTiled,
    #[error("polygon is not drawn on the integer lattice: {0}")]
    NotLatticeDrawn(String),
    #[error("cover vertex {vertex} has angle {angle} which is not a multiple of its base angle {base}")]
    Branching { vertex: usize, angle: String, base: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
