//! Planar isometries `x ↦ L x + t` with `L ∈ O(2)`.
//!
//! The linear part is stored as a rotation angle plus a reflection flag:
//! `L = R(rot) · F^reflect` with `F = diag(1, -1)`. A reflection about the
//! line of angle β is therefore `(2β, true)`.

use std::fmt;

use crate::angle::Angle;
use crate::real::{Pt, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Linear {
    pub rot: Angle,
    pub reflect: bool,
}

impl Linear {
    pub fn identity() -> Self {
        Linear {
            rot: Angle::zero(),
            reflect: false,
        }
    }

    pub fn rotation(rot: Angle) -> Self {
        Linear {
            rot: rot.normalized(),
            reflect: false,
        }
    }

    /// Reflection about the line through the origin with angle `axis`.
    pub fn reflection_about(axis: Angle) -> Self {
        Linear {
            rot: axis.twice(),
            reflect: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect && self.rot == Angle::zero()
    }

    pub fn is_exact(&self) -> bool {
        self.rot.is_exact()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Linear) -> Linear {
        let inner = if self.reflect { -other.rot } else { other.rot };
        Linear {
            rot: (self.rot + inner).normalized(),
            reflect: self.reflect ^ other.reflect,
        }
    }

    pub fn inverse(&self) -> Linear {
        if self.reflect {
            *self
        } else {
            Linear::rotation(-self.rot)
        }
    }

    pub fn apply_vec(&self, v: [f64; 2]) -> [f64; 2] {
        let y = if self.reflect { -v[1] } else { v[1] };
        let (c, s) = (self.rot.cos(), self.rot.sin());
        [c * v[0] - s * y, s * v[0] + c * y]
    }

    /// Exact when the rotation is a multiple of π/2 and the point is exact.
    pub fn apply_pt(&self, p: Pt) -> Pt {
        let y = if self.reflect { -p.y } else { p.y };
        match self.rot.exact_cos_sin() {
            Some((c, s)) => {
                let (c, s) = (Real::from_int(c), Real::from_int(s));
                Pt::new(c * p.x - s * y, s * p.x + c * y)
            }
            None => {
                let v = self.apply_vec(p.f());
                Pt::floats(v[0], v[1])
            }
        }
    }

    /// Image of a direction angle.
    pub fn apply_dir(&self, d: Angle) -> Angle {
        if self.reflect {
            (self.rot - d).normalized()
        } else {
            (self.rot + d).normalized()
        }
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflect {
            write!(f, "reflect(rot={})", self.rot)
        } else {
            write!(f, "rot({})", self.rot)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    pub linear: Linear,
    pub translation: Pt,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            linear: Linear::identity(),
            translation: Pt::zero(),
        }
    }

    pub fn new(linear: Linear, translation: Pt) -> Self {
        Isometry {
            linear,
            translation,
        }
    }

    pub fn translation(t: Pt) -> Self {
        Isometry::new(Linear::identity(), t)
    }

    pub fn rotation(rot: Angle) -> Self {
        Isometry::new(Linear::rotation(rot), Pt::zero())
    }

    /// Reflection about the line through `p` with direction angle `axis`.
    pub fn reflection_about_line(p: Pt, axis: Angle) -> Self {
        let linear = Linear::reflection_about(axis);
        Isometry::new(linear, p - linear.apply_pt(p))
    }

    pub fn apply(&self, p: Pt) -> Pt {
        self.linear.apply_pt(p) + self.translation
    }

    pub fn apply_f(&self, p: [f64; 2]) -> [f64; 2] {
        let v = self.linear.apply_vec(p);
        let t = self.translation.f();
        [v[0] + t[0], v[1] + t[1]]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry::new(
            self.linear.compose(&other.linear),
            self.linear.apply_pt(other.translation) + self.translation,
        )
    }

    pub fn inverse(&self) -> Isometry {
        let inv = self.linear.inverse();
        Isometry::new(inv, -inv.apply_pt(self.translation))
    }
}
