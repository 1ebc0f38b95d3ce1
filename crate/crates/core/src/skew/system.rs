use std::f64::consts::PI;

use rand::Rng;

use crate::angle::Angle;
use crate::flow::{directional_orbit, Budget, CrossSection, CrossSectionPoint, Flow, FlowError, SectionReturn};
use crate::geometry::{EdgeRef, Side, Surface};
use crate::holonomy::{developing_frames, rotational_holonomy, RotationalGroup, DEFAULT_CAP};

use super::SkewError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DirectionMode {
    /// The invariant subset of directions in the orbit of one direction.
    Fixed(Angle),
    /// All directions.
    Full,
}

/// A footing edge with one local direction and its sine weight.
#[derive(Clone, Debug)]
pub(crate) struct Atom {
    pub edge: EdgeRef,
    pub direction: Angle,
    pub len: f64,
    /// Inward normal component of `direction`; 2 per unit length in full mode.
    pub density: f64,
}

/// A compact quotient with its section and the sine-weighted section measure.
pub struct SkewSystem<'a> {
    flow: Flow<'a>,
    section: CrossSection,
    mode: DirectionMode,
    atoms: Vec<Atom>,
    cumulative: Vec<f64>,
    budget: Budget,
}

impl<'a> SkewSystem<'a> {
    pub fn new(quotient: &'a Surface, section: CrossSection, mode: DirectionMode) -> Result<Self, SkewError> {
        for (c, cell) in quotient.cells().iter().enumerate() {
            for e in 0..cell.len() {
                if quotient.side(EdgeRef::new(c, e)) == Side::Cut {
                    return Err(SkewError::NotCompact);
                }
            }
        }
        let entries = section.entry_edges(quotient);
        let mut atoms = Vec::new();
        match mode {
            DirectionMode::Fixed(theta) => {
                let group = match rotational_holonomy(quotient, DEFAULT_CAP) {
                    Ok(g @ RotationalGroup::Finite { .. }) => g,
                    _ => return Err(SkewError::IrrationalSurface),
                };
                let orbit = directional_orbit(theta, &group)?;
                let frames = developing_frames(quotient);
                for &e in &entries {
                    let cell = quotient.cell(e.cell);
                    let inv = frames[e.cell].inverse();
                    for &psi in &orbit.directions {
                        let local = inv.apply_dir(psi);
                        let density = (local - cell.edge_dir(e.edge)).sin();
                        if density > 1e-12 {
                            atoms.push(Atom { edge: e, direction: local, len: cell.edge_length(e.edge), density });
                        }
                    }
                }
            }
            DirectionMode::Full => {
                for &e in &entries {
                    let cell = quotient.cell(e.cell);
                    atoms.push(Atom { edge: e, direction: cell.edge_dir(e.edge), len: cell.edge_length(e.edge), density: 2.0 });
                }
            }
        }
        if atoms.is_empty() {
            return Err(SkewError::NonTransversal);
        }
        let mut cumulative = Vec::with_capacity(atoms.len());
        let mut acc = 0.0;
        for a in &atoms {
            acc += a.len * a.density;
            cumulative.push(acc);
        }
        Ok(SkewSystem { flow: Flow::new(quotient), section, mode, atoms, cumulative, budget: Budget::default() })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn flow(&self) -> &Flow<'a> {
        &self.flow
    }

    pub fn section(&self) -> &CrossSection {
        &self.section
    }

    pub fn mode(&self) -> DirectionMode {
        self.mode
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub(crate) fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Total mass of the section measure.
    pub fn section_mass(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// A point drawn from the normalized section measure by inverse CDF.
    pub fn sample(&self, rng: &mut impl Rng) -> CrossSectionPoint {
        let total = self.section_mass();
        let u = rng.gen::<f64>() * total;
        let i = self.cumulative.partition_point(|&c| c <= u).min(self.atoms.len() - 1);
        let a = &self.atoms[i];
        let s = rng.gen::<f64>() * a.len;
        let direction = match self.mode {
            DirectionMode::Fixed(_) => a.direction,
            DirectionMode::Full => {
                // density sin(φ)/2 on (0, π) relative to the edge
                let phi = (1.0 - 2.0 * rng.gen::<f64>()).clamp(-1.0, 1.0).acos();
                Angle::radians_inexact((a.direction.radians() + phi).rem_euclid(2.0 * PI))
            }
        };
        CrossSectionPoint::new(a.edge, s, direction)
    }

    /// One step of the skew map.
    pub fn step(&self, start: &CrossSectionPoint) -> Result<SectionReturn, FlowError> {
        self.section.next(&self.flow, start, self.budget)
    }
}

/// One application of the skew Poincaré map from `start`.
pub fn displacement_return(system: &SkewSystem, start: &CrossSectionPoint, budget: Budget) -> Result<SectionReturn, FlowError> {
    system.section.next(&system.flow, start, budget)
}
