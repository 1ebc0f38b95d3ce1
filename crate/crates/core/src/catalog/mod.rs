//! Constructors for the example families of polygonal surfaces.
//!
//! Every ℤ-periodic family is returned as its compact quotient, with the
//! period gluing labelled by shift 1. Barriers are zero-width slits that
//! reflect on both sides.

mod amenability;
mod families;
mod params;
mod rotated;
mod stairway;

use std::collections::BTreeMap;

use crate::geometry::{GeometryError, Surface};
use crate::unfolding::UnfoldError;

pub use amenability::{amenability_check, angle_parameter, rational_angle_grid, AmenabilityPoint, AmenabilityReport};
pub use families::FAMILIES;
pub use rotated::rotated_band_provider;
pub use stairway::StairwayProvider;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("barrier endpoints coincide")]
    BarrierCollision,
    #[error("surface carries no shift labels")]
    NotPeriodic,
    #[error(transparent)]
    Geometry(GeometryError),
    #[error(transparent)]
    Unfold(#[from] UnfoldError),
}

impl From<GeometryError> for CatalogError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::ParamOutOfRange(s) => CatalogError::ParamOutOfRange(s),
            GeometryError::BarrierCollision => CatalogError::BarrierCollision,
            e => CatalogError::Geometry(e),
        }
    }
}

/// A family name with textual parameters. Lengths are rationals `p/q` or
/// decimals; angles are rationals in units of π or `rad:FLOAT`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: String,
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    pub fn new(family: &str) -> Self {
        FamilySpec { family: family.to_string(), params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: &str) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Parses `key=value`.
    pub fn set(&mut self, kv: &str) -> Result<(), CatalogError> {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CatalogError::ParamOutOfRange(format!("expected key=value, got `{kv}`")))?;
        self.params.insert(k.trim().to_string(), v.trim().to_string());
        Ok(())
    }
}

pub fn make_family(spec: &FamilySpec) -> Result<Surface, CatalogError> {
    families::build(spec)
}

/// The compact quotient of a shift-labelled surface.
pub fn quotient_of(s: &Surface) -> Result<Surface, CatalogError> {
    if !s.has_shifts() {
        return Err(CatalogError::NotPeriodic);
    }
    Ok(s.forget_shifts())
}
