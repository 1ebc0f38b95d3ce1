use std::cell::RefCell;
use std::collections::BTreeSet;

use crate::angle::Angle;
use crate::real::{Pt, Real};

use super::{CatalogError, FamilySpec};

/// Typed access to a spec's parameters; unread keys are reported by `finish`.
pub(crate) struct Params<'a> {
    spec: &'a FamilySpec,
    read: RefCell<BTreeSet<String>>,
}

fn bad(name: &str, value: &str) -> CatalogError {
    CatalogError::ParamOutOfRange(format!("cannot parse {name}={value}"))
}

impl<'a> Params<'a> {
    pub fn new(spec: &'a FamilySpec) -> Self {
        Params { spec, read: RefCell::new(BTreeSet::new()) }
    }

    fn raw(&self, name: &str) -> Option<&'a str> {
        self.read.borrow_mut().insert(name.to_string());
        self.spec.params.get(name).map(String::as_str)
    }

    pub fn real(&self, name: &str, default: &str) -> Result<Real, CatalogError> {
        let v = self.raw(name).unwrap_or(default);
        v.parse().map_err(|_| bad(name, v))
    }

    pub fn opt_real(&self, name: &str) -> Result<Option<Real>, CatalogError> {
        self.raw(name).map(|v| v.parse().map_err(|_| bad(name, v))).transpose()
    }

    pub fn positive(&self, name: &str, default: &str) -> Result<Real, CatalogError> {
        let r = self.real(name, default)?;
        if r.f() <= 0.0 {
            return Err(CatalogError::ParamOutOfRange(format!("{name} must be positive")));
        }
        Ok(r)
    }

    pub fn angle(&self, name: &str, default: &str) -> Result<Angle, CatalogError> {
        let v = self.raw(name).unwrap_or(default);
        v.parse().map_err(|_| bad(name, v))
    }

    pub fn count(&self, name: &str, default: usize) -> Result<usize, CatalogError> {
        match self.raw(name) {
            None => Ok(default),
            Some(v) => match v.parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(bad(name, v)),
            },
        }
    }

    /// Comma-separated reals.
    pub fn reals(&self, name: &str, default: &str) -> Result<Vec<Real>, CatalogError> {
        let v = self.raw(name).unwrap_or(default);
        v.split(',').map(|s| s.parse().map_err(|_| bad(name, v))).collect()
    }

    /// Points written `x,y;x,y;...`.
    pub fn points(&self, name: &str, default: &str) -> Result<Vec<Pt>, CatalogError> {
        let v = self.raw(name).unwrap_or(default);
        v.split(';')
            .map(|p| {
                let (x, y) = p.split_once(',').ok_or_else(|| bad(name, v))?;
                Ok(Pt::new(x.parse().map_err(|_| bad(name, v))?, y.parse().map_err(|_| bad(name, v))?))
            })
            .collect()
    }

    pub fn finish(self) -> Result<(), CatalogError> {
        let read = self.read.borrow();
        match self.spec.params.keys().find(|k| !read.contains(*k)) {
            Some(k) => Err(CatalogError::ParamOutOfRange(format!(
                "family {} has no parameter `{k}`",
                self.spec.family
            ))),
            None => Ok(()),
        }
    }
}

/// `p + l·(cos θ, sin θ)`, exact when the cosine and sine are.
pub(crate) fn polar(p: Pt, l: Real, theta: Angle) -> Pt {
    // each coordinate stays exact when its own cosine or sine is rational
    let cos = (theta + Angle::pi_frac(1, 2)).exact_sin();
    let c = cos.map_or(Real::from_f64(theta.cos()), Real::from_rational);
    let s = theta.exact_sin().map_or(Real::from_f64(theta.sin()), Real::from_rational);
    Pt::new(p.x + l * c, p.y + l * s)
}
