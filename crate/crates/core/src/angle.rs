//! Angles as exact rational multiples of π, or inexact radians.

use std::f64::consts::PI;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::real::{format_rational, parse_rational, Rational};

/// An angle. `Exact(q)` means `q·π`; `Inexact(r)` is in radians.
#[derive(Clone, Copy, Debug)]
pub enum Angle {
    Exact(Rational),
    Inexact(f64),
}

/// Slope of a direction, `None` meaning vertical.
pub type Slope = Option<Rational>;

impl Angle {
    pub fn zero() -> Self {
        Angle::Exact(Rational::zero())
    }

    pub fn pi() -> Self {
        Angle::Exact(Rational::from_integer(1))
    }

    /// `(p/q)·π`.
    pub fn pi_frac(p: i64, q: i64) -> Self {
        Angle::Exact(Rational::new(p, q))
    }

    pub fn radians_inexact(r: f64) -> Self {
        Angle::Inexact(r)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact(_))
    }

    pub fn pi_units(&self) -> Option<Rational> {
        match *self {
            Angle::Exact(q) => Some(q),
            Angle::Inexact(_) => None,
        }
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::Exact(q) => crate::real::rational_to_f64(q) * PI,
            Angle::Inexact(r) => r,
        }
    }

    /// Representative in `[0, 2π)`.
    pub fn normalized(&self) -> Angle {
        match *self {
            Angle::Exact(q) => {
                let two = Rational::from_integer(2);
                let r = q - (q / two).floor() * two;
                Angle::Exact(r)
            }
            Angle::Inexact(r) => Angle::Inexact(r.rem_euclid(2.0 * PI)),
        }
    }

    /// Representative in `(-π, π]`.
    pub fn signed(&self) -> Angle {
        let n = self.normalized();
        match n {
            Angle::Exact(q) if q > Rational::from_integer(1) => {
                Angle::Exact(q - Rational::from_integer(2))
            }
            Angle::Inexact(r) if r > PI => Angle::Inexact(r - 2.0 * PI),
            other => other,
        }
    }

    pub fn twice(&self) -> Angle {
        *self + *self
    }

    pub fn cos(&self) -> f64 {
        self.exact_cos_sin().map_or(self.radians().cos(), |(c, _)| c as f64)
    }

    pub fn sin(&self) -> f64 {
        self.exact_cos_sin().map_or(self.radians().sin(), |(_, s)| s as f64)
    }

    /// Unit vector `(cos, sin)`, exact zeros on the axes.
    pub fn unit(&self) -> [f64; 2] {
        [self.cos(), self.sin()]
    }

    /// Integer `(cos, sin)` for multiples of π/2.
    pub fn exact_cos_sin(&self) -> Option<(i64, i64)> {
        let q = self.normalized().pi_units()?;
        if *q.denom() > 2 {
            return None;
        }
        let k = (q * Rational::from_integer(2)).to_integer();
        Some(match k {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        })
    }

    /// `sin` as a rational, when it is one. By Niven's theorem only
    /// 0, ±1/2 and ±1 occur, at multiples of π/6.
    pub fn exact_sin(&self) -> Option<Rational> {
        let q = self.normalized().pi_units()?;
        let six = q * Rational::from_integer(6);
        if !six.is_integer() {
            return None;
        }
        let half = Rational::new(1, 2);
        let one = Rational::from_integer(1);
        let zero = Rational::from_integer(0);
        Some(match six.to_integer() {
            0 | 6 => zero,
            1 | 5 => half,
            3 => one,
            7 | 11 => -half,
            9 => -one,
            _ => return None,
        })
    }

    /// Rational slope test. `Ok(None)` is the vertical direction; `Err(())`
    /// means the tangent is irrational. Only exact angles can be certified:
    /// `tan(rπ)` is rational exactly for `r mod 1 ∈ {0, 1/4, 1/2, 3/4}`.
    pub fn rational_slope(&self) -> Option<Result<Slope, ()>> {
        let q = self.pi_units()?;
        let frac = q - q.floor();
        let quarter = frac * Rational::from_integer(4);
        if !quarter.is_integer() {
            return Some(Err(()));
        }
        Some(Ok(match quarter.to_integer() {
            0 => Some(Rational::zero()),
            1 => Some(Rational::from_integer(1)),
            2 => None,
            _ => Some(Rational::from_integer(-1)),
        }))
    }

    /// Closeness on the circle, used for inexact comparisons.
    pub fn approx_eq(&self, other: &Angle, tol: f64) -> bool {
        let d = (self.radians() - other.radians()).rem_euclid(2.0 * PI);
        d < tol || 2.0 * PI - d < tol
    }

    /// Least common denominator helper for rational angle sets.
    pub fn denominator(&self) -> Option<i64> {
        self.pi_units().map(|q| *q.denom())
    }
}

pub fn lcm_all(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().fold(1, |a, b| a.lcm(&b))
}

impl PartialEq for Angle {
    /// Equality on the circle: exact angles compare mod 2π, inexact ones
    /// compare their normalized radians bitwise. Exact and inexact never match.
    fn eq(&self, other: &Self) -> bool {
        match (self.normalized(), other.normalized()) {
            (Angle::Exact(a), Angle::Exact(b)) => a == b,
            (Angle::Inexact(a), Angle::Inexact(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Angle {}

impl Hash for Angle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.normalized() {
            Angle::Exact(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Angle::Inexact(r) => {
                1u8.hash(state);
                r.to_bits().hash(state);
            }
        }
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::Exact(a), Angle::Exact(b)) => Angle::Exact(a + b).normalized(),
            _ => Angle::Inexact(self.radians() + rhs.radians()).normalized(),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        match self {
            Angle::Exact(a) => Angle::Exact(-a).normalized(),
            Angle::Inexact(r) => Angle::Inexact(-r).normalized(),
        }
    }
}

/// Exact angles print in units of π (`p/q`), inexact ones as `rad:FLOAT`.
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Exact(q) => f.write_str(&format_rational(q)),
            Angle::Inexact(r) => write!(f, "rad:{r:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid angle `{0}`: expected p/q (units of pi) or rad:FLOAT")]
pub struct ParseAngleError(pub String);

impl FromStr for Angle {
    type Err = ParseAngleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix("rad:") {
            let v: f64 = r.trim().parse().map_err(|_| ParseAngleError(s.to_string()))?;
            if !v.is_finite() {
                return Err(ParseAngleError(s.to_string()));
            }
            return Ok(Angle::Inexact(v));
        }
        parse_rational(s)
            .map(Angle::Exact)
            .map_err(|_| ParseAngleError(s.to_string()))
    }
}

/// Sign of a rational, for callers that only need orientation.
pub fn rational_sign(q: Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_mod_two_pi() {
        assert_eq!(Angle::pi_frac(5, 2), Angle::pi_frac(1, 2));
        assert_eq!(Angle::pi_frac(-1, 3).normalized(), Angle::pi_frac(5, 3));
        assert_eq!(Angle::pi_frac(3, 2).signed(), Angle::Exact(Rational::new(-1, 2)));
    }

    #[test]
    fn tangent_rationality_table() {
        assert_eq!(Angle::pi_frac(1, 4).rational_slope(), Some(Ok(Some(Rational::from_integer(1)))));
        assert_eq!(Angle::pi_frac(1, 2).rational_slope(), Some(Ok(None)));
        assert_eq!(Angle::pi_frac(1, 3).rational_slope(), Some(Err(())));
        assert_eq!(Angle::pi_frac(7, 4).rational_slope(), Some(Ok(Some(Rational::from_integer(-1)))));
        assert_eq!(Angle::Inexact(0.3).rational_slope(), None);
    }

    #[test]
    fn parse_and_display() {
        let a: Angle = "2/3".parse().unwrap();
        assert_eq!(a, Angle::pi_frac(2, 3));
        assert_eq!(a.to_string(), "2/3");
        let b: Angle = "rad:0.7".parse().unwrap();
        assert!(!b.is_exact());
        assert!("0.7".parse::<Angle>().is_err());
    }

    #[test]
    fn exact_trig_on_axes() {
        assert_eq!(Angle::pi_frac(1, 2).unit(), [0.0, 1.0]);
        assert_eq!(Angle::pi().unit(), [-1.0, 0.0]);
    }
}
