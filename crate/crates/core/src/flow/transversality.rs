use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::angle::Angle;
use crate::geometry::Surface;
use crate::holonomy::{developing_frames, rotational_holonomy, DEFAULT_CAP};
use crate::real::{cross, Rational};

use super::orbit::directional_orbit;
use super::state::{EventKind, Flow, TangentState};
use super::FlowError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeasureMode {
    /// Boundary flux summed edge by edge.
    Exact,
    /// Boundary contacts counted along traces of length `horizon` from
    /// uniform phase-space samples.
    MonteCarlo { samples: usize, seed: u64, horizon: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasureEstimate {
    pub value: f64,
    pub se: f64,
    /// Exact rational value, when every edge length and sine factor is rational.
    #[serde(skip)]
    pub exact: Option<Rational>,
}

/// `μ_θ` mass of the boundary: for each boundary edge and each direction of
/// the orbit of `direction`, edge length times the outward normal component,
/// averaged over the orbit.
pub fn transversality_measure(direction: Angle, surface: &Surface, mode: MeasureMode) -> Result<MeasureEstimate, FlowError> {
    let group = rotational_holonomy(surface, DEFAULT_CAP).map_err(|_| FlowError::InfiniteGroup)?;
    let orbit = directional_orbit(direction, &group)?;
    let frames = developing_frames(surface);
    let k = orbit.directions.len() as f64;
    match mode {
        MeasureMode::Exact => {
            let mut value = 0.0;
            let mut exact = Some(Rational::from_integer(0));
            for e in surface.boundary() {
                let cell = surface.cell(e.cell);
                let edir = cell.edge_dir(e.edge);
                let inv = frames[e.cell].inverse();
                let len = cell.edge_length(e.edge);
                let len_q = cell.edge_length_exact(e.edge);
                for &psi in &orbit.directions {
                    let local = inv.apply_dir(psi);
                    // outward normal component of the unit vector `local`
                    let flux = -cross(edir.unit(), local.unit());
                    if flux > 0.0 {
                        value += len * flux;
                    }
                    exact = match (exact, len_q, (local - edir).exact_sin()) {
                        (Some(acc), Some(l), Some(s)) => Some(acc + l * (-s).max(Rational::from_integer(0))),
                        _ => None,
                    };
                }
            }
            let n = orbit.directions.len() as i64;
            Ok(MeasureEstimate {
                value: value / k,
                se: 0.0,
                exact: exact.map(|q| q / Rational::from_integer(n)),
            })
        }
        MeasureMode::MonteCarlo { samples, seed, horizon } => {
            let flow = Flow::new(surface);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let areas: Vec<f64> = surface.cells().iter().map(|c| c.signed_area()).collect();
            let area: f64 = areas.iter().sum();
            let (mut sum, mut sum_sq, mut n) = (0.0, 0.0, 0usize);
            for _ in 0..samples {
                let c = pick_weighted(&areas, area, &mut rng);
                let p = sample_in_cell(surface, c, &mut rng);
                let psi = orbit.directions[rng.gen_range(0..orbit.directions.len())];
                let local = frames[c].inverse().apply_dir(psi);
                let mut st = TangentState::new(c, p, local);
                let mut hits = 0.0;
                let mut ok = true;
                loop {
                    match flow.advance(&mut st, horizon) {
                        Ok(ev) => match ev.kind {
                            EventKind::Reflection { .. } => hits += 1.0,
                            EventKind::Vertex { reflected: Some(_), .. } => hits += 1.0,
                            EventKind::Timeout => break,
                            EventKind::SingularHit { .. } | EventKind::WindowExit { .. } => {
                                ok = false;
                                break;
                            }
                            _ => {}
                        },
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    sum += hits;
                    sum_sq += hits * hits;
                    n += 1;
                }
            }
            let nf = n.max(1) as f64;
            let mean = sum / nf;
            let var = (sum_sq / nf - mean * mean).max(0.0) * nf / (nf - 1.0).max(1.0);
            let scale = area / horizon;
            Ok(MeasureEstimate { value: scale * mean, se: scale * (var / nf).sqrt(), exact: None })
        }
    }
}

pub(crate) fn pick_weighted(weights: &[f64], total: f64, rng: &mut impl Rng) -> usize {
    let mut t = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if t < *w {
            return i;
        }
        t -= w;
    }
    weights.len() - 1
}

/// Uniform point of a cell by rejection from its bounding box.
pub(crate) fn sample_in_cell(s: &Surface, c: usize, rng: &mut impl Rng) -> [f64; 2] {
    let cell = s.cell(c);
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in cell.vertices() {
        let v = v.f();
        for k in 0..2 {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    loop {
        let p = [rng.gen_range(lo[0]..hi[0]), rng.gen_range(lo[1]..hi[1])];
        if cell.contains(p, -1e-12) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_surface, Cell};

    #[test]
    fn unit_square_exact_flux() {
        // D_2 orbit of π/6 has four directions; each hits two sides
        let s = build_surface(vec![Cell::unit_square_at(0, 0)], vec![]).unwrap();
        let m = transversality_measure(Angle::pi_frac(1, 6), &s, MeasureMode::Exact).unwrap();
        let want = (std::f64::consts::PI / 6.0).sin() + (std::f64::consts::PI / 6.0).cos();
        assert!((m.value - want).abs() < 1e-12);
        assert_eq!(m.exact, None);
        let m = transversality_measure(Angle::zero(), &s, MeasureMode::Exact).unwrap();
        assert_eq!(m.exact, Some(Rational::from_integer(1)));
    }

    #[test]
    fn square_monte_carlo_agrees() {
        let s = build_surface(vec![Cell::unit_square_at(0, 0)], vec![]).unwrap();
        let mode = MeasureMode::MonteCarlo { samples: 20_000, seed: 7, horizon: 1.0 };
        let m = transversality_measure(Angle::pi_frac(1, 6), &s, mode).unwrap();
        let want = (std::f64::consts::PI / 6.0).sin() + (std::f64::consts::PI / 6.0).cos();
        assert!((m.value - want).abs() < 4.0 * m.se, "{} vs {want} (se {})", m.value, m.se);
    }
}
