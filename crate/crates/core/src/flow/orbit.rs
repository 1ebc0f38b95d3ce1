use crate::angle::Angle;
use crate::holonomy::RotationalGroup;

use super::FlowError;

#[derive(Clone, Debug, PartialEq)]
pub struct DirectionalOrbit {
    /// Distinct directions of `Hol_r · θ`, sorted by radians.
    pub directions: Vec<Angle>,
    /// Some non-identity element fixes `θ`.
    pub singular: bool,
}

impl DirectionalOrbit {
    pub fn contains(&self, a: Angle, tol: f64) -> bool {
        self.directions.iter().any(|d| match (d, a) {
            (Angle::Exact(_), Angle::Exact(_)) => *d == a,
            _ => d.approx_eq(&a, tol),
        })
    }
}

/// The finite orbit of a direction under the rotational holonomy.
pub fn directional_orbit(theta: Angle, group: &RotationalGroup) -> Result<DirectionalOrbit, FlowError> {
    let RotationalGroup::Finite { elements, .. } = group else {
        return Err(FlowError::InfiniteGroup);
    };
    let theta = theta.normalized();
    let mut directions: Vec<Angle> = Vec::new();
    let mut singular = false;
    for g in elements {
        let d = g.apply_dir(theta);
        let fixed = match (d, theta) {
            (Angle::Exact(_), Angle::Exact(_)) => d == theta,
            _ => d.approx_eq(&theta, 1e-12),
        };
        if fixed && !g.is_identity() {
            singular = true;
        }
        let known = directions.iter().any(|x| match (x, d) {
            (Angle::Exact(_), Angle::Exact(_)) => *x == d,
            _ => x.approx_eq(&d, 1e-12),
        });
        if !known {
            directions.push(d);
        }
    }
    directions.sort_by(|a, b| a.radians().total_cmp(&b.radians()));
    Ok(DirectionalOrbit { directions, singular })
}
