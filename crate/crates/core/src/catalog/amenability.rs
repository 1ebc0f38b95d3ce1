use num_integer::Integer;
use serde::Serialize;

use crate::angle::Angle;
use crate::holonomy::n_of_surface;

use super::{make_family, FamilySpec};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmenabilityPoint {
    pub value: String,
    pub rational: bool,
    pub n: Option<usize>,
    pub even: Option<bool>,
    /// Construction failure at this grid point.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmenabilityReport {
    pub family: String,
    pub parameter: String,
    pub points: Vec<AmenabilityPoint>,
    pub n_rational: usize,
    pub n_even: usize,
    /// Share of rational grid points with even `N`.
    pub even_fraction: f64,
}

/// The angle a family is naturally varied in, if any.
pub fn angle_parameter(family: &str) -> Option<&'static str> {
    match family {
        "band_tilted_rect" | "band_barriers" => Some("theta"),
        "cylinder_two_barriers" => Some("theta1"),
        "torus_barrier" => Some("eta"),
        "band_rotated_obstacles" => Some("alpha"),
        _ => None,
    }
}

/// Angles `(m/n)π` with `0 < m < n ≤ max_den`, `gcd(m, n) = 1`, ordered by `n`.
pub fn rational_angle_grid(max_den: i64) -> Vec<Angle> {
    (2..=max_den)
        .flat_map(|n| (1..n).filter(move |m| m.gcd(&n) == 1).map(move |m| Angle::pi_frac(m, n)))
        .collect()
}

/// Rationality and `N` of the family at each value of `parameter`, other
/// parameters taken from `base`. Even-`N` density over the grid is a finite
/// proxy for amenability of the family.
pub fn amenability_check(base: &FamilySpec, parameter: &str, grid: &[Angle]) -> AmenabilityReport {
    let points: Vec<AmenabilityPoint> = grid
        .iter()
        .map(|theta| {
            let spec = base.clone().with(parameter, &theta.to_string());
            let value = theta.to_string();
            match make_family(&spec) {
                Ok(s) => {
                    let n = n_of_surface(&s).ok();
                    AmenabilityPoint { value, rational: n.is_some(), n, even: n.map(|n| n % 2 == 0), error: None }
                }
                Err(e) => AmenabilityPoint { value, rational: false, n: None, even: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let n_rational = points.iter().filter(|p| p.rational).count();
    let n_even = points.iter().filter(|p| p.even == Some(true)).count();
    AmenabilityReport {
        family: base.family.clone(),
        parameter: parameter.to_string(),
        points,
        n_rational,
        n_even,
        even_fraction: if n_rational > 0 { n_even as f64 / n_rational as f64 } else { 0.0 },
    }
}
