use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::flow::CrossSectionPoint;
use crate::geometry::EdgeRef;

use super::system::{Atom, DirectionMode, SkewSystem};
use super::SkewError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CenteringMethod {
    /// Section intervals of constant itinerary, located by bisection.
    Quadrature,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CenteringResult {
    pub mean: f64,
    pub se: f64,
    /// Sample count, or the number of constant-itinerary intervals.
    pub pieces: usize,
    /// Failed samples, or the section mass on which the return failed.
    pub failed: f64,
}

const MIN_WIDTH: f64 = 1e-13;
const CHUNK: usize = 4096;
const ENDPOINT_INSET: f64 = 1e-7;

type Signature = Option<(i64, Vec<(EdgeRef, bool)>)>;

/// Mean of the displacement over the normalized section measure.
pub fn centering_integral(system: &SkewSystem, method: CenteringMethod) -> Result<CenteringResult, SkewError> {
    match method {
        CenteringMethod::Quadrature => {
            if system.mode() == DirectionMode::Full {
                return Err(SkewError::QuadratureNeedsDirection);
            }
            let (mut integral, mut mass, mut failed, mut pieces) = (0.0, 0.0, 0.0, 0);
            for atom in system.atoms() {
                let q = quadrature(system, atom);
                integral += atom.density * q.integral;
                mass += atom.density * atom.len;
                failed += atom.density * q.failed;
                pieces += q.pieces;
            }
            Ok(CenteringResult { mean: integral / mass, se: 0.0, pieces, failed })
        }
        CenteringMethod::MonteCarlo { samples, seed } => {
            let chunks = samples.div_ceil(CHUNK);
            let (sum, sum_sq, n, fails) = (0..chunks)
                .into_par_iter()
                .map(|j| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(j as u64);
                    let count = CHUNK.min(samples - j * CHUNK);
                    let (mut s, mut s2, mut n, mut f) = (0i128, 0i128, 0u64, 0u64);
                    for _ in 0..count {
                        let p = system.sample(&mut rng);
                        match system.step(&p) {
                            Ok(r) => {
                                s += r.phi as i128;
                                s2 += (r.phi as i128) * (r.phi as i128);
                                n += 1;
                            }
                            Err(_) => f += 1,
                        }
                    }
                    (s, s2, n, f)
                })
                .reduce(|| (0, 0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3));
            let nf = n.max(1) as f64;
            let mean = sum as f64 / nf;
            let var = ((sum_sq as f64 / nf) - mean * mean).max(0.0) * nf / (nf - 1.0).max(1.0);
            Ok(CenteringResult { mean, se: (var / nf).sqrt(), pieces: n as usize, failed: fails as f64 })
        }
    }
}

struct Quad {
    integral: f64,
    failed: f64,
    pieces: usize,
}

fn signature(system: &SkewSystem, atom: &Atom, s: f64) -> Signature {
    let p = CrossSectionPoint::new(atom.edge, s, atom.direction);
    system
        .section()
        .next_with_itinerary(system.flow(), &p, system.budget())
        .ok()
        .map(|(r, it)| (r.phi, it))
}

fn quadrature(system: &SkewSystem, atom: &Atom) -> Quad {
    let mut q = Quad { integral: 0.0, failed: 0.0, pieces: 0 };
    let m = 64;
    let xs: Vec<f64> = (0..=m).map(|k| atom.len * k as f64 / m as f64).collect();
    // starts within the vertex snapping distance of a corner pass through it;
    // the end intervals take the itinerary of a point just inside
    let inset = atom.len * ENDPOINT_INSET;
    let sigs: Vec<Signature> = xs.iter().map(|&x| signature(system, atom, x.clamp(inset, atom.len - inset))).collect();
    for k in 0..m {
        refine(system, atom, (xs[k], &sigs[k]), (xs[k + 1], &sigs[k + 1]), &mut q);
    }
    q
}

fn add(q: &mut Quad, width: f64, sig: &Signature) {
    match sig {
        Some((phi, _)) => q.integral += width * *phi as f64,
        None => q.failed += width,
    }
}

fn refine(system: &SkewSystem, atom: &Atom, a: (f64, &Signature), b: (f64, &Signature), q: &mut Quad) {
    let width = b.0 - a.0;
    if a.1 == b.1 {
        // a constant itinerary holds on the whole interval: the set of
        // starts sharing one is convex
        add(q, width, a.1);
        q.pieces += 1;
        return;
    }
    if width < MIN_WIDTH {
        add(q, width / 2.0, a.1);
        add(q, width / 2.0, b.1);
        q.pieces += 2;
        return;
    }
    let mid = 0.5 * (a.0 + b.0);
    let sm = signature(system, atom, mid);
    refine(system, atom, a, (mid, &sm), q);
    refine(system, atom, (mid, &sm), b, q);
}
