//! Scalars that remember whether they are exact rationals.
//!
//! Catalog constructors with rational parameters produce exact coordinates;
//! everything else falls back to `f64`. Arithmetic keeps exactness while both
//! operands are exact and the `i64` rational arithmetic does not overflow.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};

pub type Rational = Ratio<i64>;

/// Incidence tolerance for floating point geometry.
pub const EPS_GEOM: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct Real {
    value: f64,
    exact: Option<Rational>,
}

impl Real {
    pub fn from_f64(value: f64) -> Self {
        Real { value, exact: None }
    }

    pub fn from_rational(q: Rational) -> Self {
        Real {
            value: rational_to_f64(q),
            exact: Some(q),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Real::from_rational(Rational::from_integer(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Real::from_rational(Rational::new(p, q))
    }

    pub fn zero() -> Self {
        Real::from_int(0)
    }

    pub fn one() -> Self {
        Real::from_int(1)
    }

    pub fn f(self) -> f64 {
        self.value
    }

    pub fn exact(self) -> Option<Rational> {
        self.exact
    }

    pub fn is_exact(self) -> bool {
        self.exact.is_some()
    }

    /// Drops exactness; used when a value went through transcendental functions.
    pub fn inexact(self) -> Self {
        Real::from_f64(self.value)
    }

    pub fn abs(self) -> Self {
        if self.value < 0.0 || self.exact.map_or(false, |q| q < Rational::zero()) {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        match self.exact {
            Some(q) => q.is_zero(),
            None => self.value == 0.0,
        }
    }

    fn combine(
        self,
        rhs: Real,
        value: f64,
        exact: impl FnOnce(&Rational, &Rational) -> Option<Rational>,
    ) -> Real {
        match (self.exact, rhs.exact) {
            (Some(a), Some(b)) => match exact(&a, &b) {
                Some(q) => Real::from_rational(q),
                None => Real::from_f64(value),
            },
            _ => Real::from_f64(value),
        }
    }
}

pub fn rational_to_f64(q: Rational) -> f64 {
    q.to_f64().unwrap_or(*q.numer() as f64 / *q.denom() as f64)
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.value == other.value,
            _ => false,
        }
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        self.combine(rhs, self.value + rhs.value, |a, b| a.checked_add(b))
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        self.combine(rhs, self.value - rhs.value, |a, b| a.checked_sub(b))
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        self.combine(rhs, self.value * rhs.value, |a, b| a.checked_mul(b))
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        self.combine(rhs, self.value / rhs.value, |a, b| {
            if b.is_zero() {
                None
            } else {
                a.checked_div(b)
            }
        })
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            value: -self.value,
            exact: self.exact.map(|q| -q),
        }
    }
}

/// Exact values print as `p/q` (or `p`); floats always carry a `.` or an
/// exponent so that they never re-parse as exact integers.
impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(q) => write_rational(f, q),
            None => {
                let s = format!("{}", self.value);
                if s.contains(['.', 'e', 'E', 'N', 'i']) {
                    f.write_str(&s)
                } else {
                    write!(f, "{s}.0")
                }
            }
        }
    }
}

pub fn write_rational(f: &mut impl fmt::Write, q: Rational) -> fmt::Result {
    if *q.denom() == 1 {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

pub fn format_rational(q: Rational) -> String {
    let mut s = String::new();
    write_rational(&mut s, q).unwrap();
    s
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse number `{0}`")]
pub struct ParseRealError(pub String);

pub fn parse_rational(s: &str) -> Result<Rational, ParseRealError> {
    let err = || ParseRealError(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| err())?;
            let q: i64 = q.trim().parse().map_err(|_| err())?;
            if q == 0 {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => s.parse::<i64>().map(Rational::from_integer).map_err(|_| err()),
    }
}

impl FromStr for Real {
    type Err = ParseRealError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(q) = parse_rational(s) {
            return Ok(Real::from_rational(q));
        }
        s.trim()
            .parse::<f64>()
            .map(Real::from_f64)
            .map_err(|_| ParseRealError(s.to_string()))
    }
}

/// Planar point (or vector) with possibly exact coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pt {
    pub x: Real,
    pub y: Real,
}

impl Pt {
    pub fn new(x: Real, y: Real) -> Self {
        Pt { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Pt::new(Real::from_int(x), Real::from_int(y))
    }

    pub fn ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Pt::new(Real::ratio(x.0, x.1), Real::ratio(y.0, y.1))
    }

    pub fn floats(x: f64, y: f64) -> Self {
        Pt::new(Real::from_f64(x), Real::from_f64(y))
    }

    pub fn f(self) -> [f64; 2] {
        [self.x.f(), self.y.f()]
    }

    pub fn is_exact(self) -> bool {
        self.x.is_exact() && self.y.is_exact()
    }

    pub fn zero() -> Self {
        Pt::ints(0, 0)
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, rhs: Pt) -> Pt {
        Pt::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, rhs: Pt) -> Pt {
        Pt::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-self.x, -self.y)
    }
}

impl Mul<Real> for Pt {
    type Output = Pt;
    fn mul(self, k: Real) -> Pt {
        Pt::new(self.x * k, self.y * k)
    }
}

pub fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}
