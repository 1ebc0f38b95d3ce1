use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::flow::FlowError;

use super::system::SkewSystem;

/// Returns used to estimate the drift for the linear-escape test.
pub const ESCAPE_WINDOW: usize = 100;
/// Fraction of valid orbits that must revisit fiber 0.
pub const RECURRENT_FRACTION: f64 = 0.99;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitStatus {
    Complete,
    NoReturn,
    SingularHit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    RecurrentEvidence,
    TransientEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub index: usize,
    pub theta: f64,
    pub status: OrbitStatus,
    pub returns: usize,
    pub final_sum: i64,
    /// Revisited displacement 0 after first leaving it, and did not escape.
    pub returned: bool,
    pub first_return: Option<usize>,
    pub max_excursion: u64,
    /// `|S_n| ≥ ½|c|n` for every `n ≥ 100`, `c` the mean of the first 100 displacements.
    pub escaped: bool,
    pub birkhoff_mean: f64,
    /// Every single-return displacement was +1.
    pub all_plus_one: bool,
}

/// Per-orbit records; merging is a sorted union, so it is associative and
/// commutative.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RecurrenceReport {
    pub orbits: Vec<OrbitRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportSummary {
    pub n_orbits: usize,
    pub n_valid: usize,
    pub n_returned_to_zero_fiber: usize,
    pub n_escaped: usize,
    pub n_no_return: usize,
    pub n_singular: usize,
    pub mean_birkhoff: f64,
    pub max_excursion: u64,
    pub verdict: Verdict,
}

impl OrbitRecord {
    /// Index first, then every field, so equal keys mean equal records.
    fn sort_key(&self) -> (usize, u64, i64, usize, u64, u64, bool, bool, bool, Option<usize>, u8) {
        let status = match self.status {
            OrbitStatus::Complete => 0,
            OrbitStatus::NoReturn => 1,
            OrbitStatus::SingularHit => 2,
        };
        (
            self.index,
            self.theta.to_bits(),
            self.final_sum,
            self.returns,
            self.max_excursion,
            self.birkhoff_mean.to_bits(),
            self.returned,
            self.escaped,
            self.all_plus_one,
            self.first_return,
            status,
        )
    }
}

impl RecurrenceReport {
    pub fn merge(mut self, other: RecurrenceReport) -> RecurrenceReport {
        self.orbits.extend(other.orbits);
        self.orbits.sort_by_key(OrbitRecord::sort_key);
        self
    }

    fn valid(&self) -> impl Iterator<Item = &OrbitRecord> {
        self.orbits.iter().filter(|o| o.status == OrbitStatus::Complete)
    }

    pub fn verdict(&self) -> Verdict {
        let n = self.valid().count();
        if n == 0 {
            return Verdict::Inconclusive;
        }
        if self.valid().all(|o| o.escaped) {
            return Verdict::TransientEvidence;
        }
        let returned = self.valid().filter(|o| o.returned).count();
        if returned as f64 >= RECURRENT_FRACTION * n as f64 {
            Verdict::RecurrentEvidence
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn summary(&self) -> ReportSummary {
        let n_valid = self.valid().count();
        ReportSummary {
            n_orbits: self.orbits.len(),
            n_valid,
            n_returned_to_zero_fiber: self.valid().filter(|o| o.returned).count(),
            n_escaped: self.valid().filter(|o| o.escaped).count(),
            n_no_return: self.orbits.iter().filter(|o| o.status == OrbitStatus::NoReturn).count(),
            n_singular: self.orbits.iter().filter(|o| o.status == OrbitStatus::SingularHit).count(),
            mean_birkhoff: self.valid().map(|o| o.birkhoff_mean).sum::<f64>() / n_valid.max(1) as f64,
            max_excursion: self.orbits.iter().map(|o| o.max_excursion).max().unwrap_or(0),
            verdict: self.verdict(),
        }
    }

    pub fn birkhoff_means(&self) -> Vec<f64> {
        self.orbits.iter().map(|o| o.birkhoff_mean).collect()
    }
}

fn run_orbit(system: &SkewSystem, index: usize, returns: usize, seed: u64) -> OrbitRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut p = system.sample(&mut rng);
    let theta = p.theta();
    let (mut sum, mut left, mut first_return, mut max_exc) = (0i64, false, None, 0u64);
    let (mut head, mut escaped, mut all_plus_one) = (0i64, returns >= ESCAPE_WINDOW, true);
    let mut status = OrbitStatus::Complete;
    let mut done = 0;
    for n in 1..=returns {
        let r = match system.step(&p) {
            Ok(r) => r,
            Err(e) => {
                status = match e {
                    FlowError::SingularHit { .. } => OrbitStatus::SingularHit,
                    _ => OrbitStatus::NoReturn,
                };
                break;
            }
        };
        done = n;
        sum += r.phi;
        all_plus_one &= r.phi == 1;
        max_exc = max_exc.max(sum.unsigned_abs());
        if sum != 0 {
            left = true;
        } else if left && first_return.is_none() {
            first_return = Some(n);
        }
        if n <= ESCAPE_WINDOW {
            head += r.phi;
        }
        if n >= ESCAPE_WINDOW {
            let c = head as f64 / ESCAPE_WINDOW as f64;
            if c == 0.0 || (sum as f64).abs() < 0.5 * c.abs() * n as f64 {
                escaped = false;
            }
        }
        p = r.end;
    }
    let escaped = escaped && status == OrbitStatus::Complete;
    OrbitRecord {
        index,
        theta,
        status,
        returns: done,
        final_sum: sum,
        returned: first_return.is_some() && !escaped,
        first_return,
        max_excursion: max_exc,
        escaped,
        birkhoff_mean: if done > 0 { sum as f64 / done as f64 } else { 0.0 },
        all_plus_one: all_plus_one && done > 0,
    }
}

/// Iterates the skew map from `n_orbits` starts drawn from the section
/// measure. Orbit `i` uses stream `i` of the seeded generator.
pub fn recurrence_experiment(system: &SkewSystem, n_orbits: usize, n_returns: usize, seed: u64) -> RecurrenceReport {
    recurrence_from(system, 0, n_orbits, n_returns, seed)
}

fn recurrence_from(system: &SkewSystem, offset: usize, n_orbits: usize, n_returns: usize, seed: u64) -> RecurrenceReport {
    (offset..offset + n_orbits)
        .into_par_iter()
        .map(|i| RecurrenceReport { orbits: vec![run_orbit(system, i, n_returns, seed)] })
        .reduce(RecurrenceReport::default, RecurrenceReport::merge)
}

/// One experiment per system, merged; orbit indices continue across systems.
pub fn recurrence_over_directions(systems: &[SkewSystem], n_orbits: usize, n_returns: usize, seed: u64) -> RecurrenceReport {
    systems
        .iter()
        .enumerate()
        .map(|(k, s)| recurrence_from(s, k * n_orbits, n_orbits, n_returns, seed))
        .fold(RecurrenceReport::default(), RecurrenceReport::merge)
}
