//! Flow and skew-product invariants shared by the property suite and the
//! acceptance runner.
#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::SeedableRng;

use polyflow::angle::Angle;
use polyflow::catalog::{make_family, FamilySpec};
use polyflow::flow::{Budget, CrossSection, EventKind, Flow, SectionEdge, TangentState, TraceEvent};
use polyflow::geometry::Surface;
use polyflow::real::{cross, dot};
use polyflow::skew::{recurrence_experiment, DirectionMode, SkewSystem};

pub type Outcome = Result<(), TestCaseError>;

pub fn surfaces() -> &'static [Surface] {
    static S: OnceLock<Vec<Surface>> = OnceLock::new();
    S.get_or_init(|| {
        [
            FamilySpec::new("band_rect_obstacles"),
            FamilySpec::new("band_barriers"),
            FamilySpec::new("torus_barrier").with("eta", "1/5"),
            FamilySpec::new("band_tilted_rect"),
            FamilySpec::new("cylinder_two_barriers"),
            FamilySpec::new("band_horizontal_barriers"),
        ]
        .iter()
        .map(|f| make_family(f).unwrap())
        .collect()
    })
}

/// The shift-labelled fundamental domain of the rectangle-obstacle band.
pub fn quotient() -> &'static Surface {
    &surfaces()[0]
}

pub fn seam_section(q: &Surface) -> CrossSection {
    let seams = (0..q.gluings().len()).filter(|&g| q.gluings()[g].shift != 0).map(SectionEdge::Seam).collect();
    CrossSection::new(seams)
}

pub fn angle() -> impl Strategy<Value = Angle> {
    prop_oneof![
        (1i64..64, 2i64..64).prop_map(|(p, q)| Angle::pi_frac(p % (2 * q), q)),
        (0.0..std::f64::consts::TAU).prop_map(Angle::radians_inexact),
    ]
}

/// A surface index, a cell and an interior point of it.
pub type Foot = (usize, usize, [f64; 2]);

pub fn footpoint() -> impl Strategy<Value = Foot> {
    (0..surfaces().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>(), 0.0..0.9f64).prop_map(
        |(si, ci, ki, t)| {
            let s = &surfaces()[si];
            let c = ci.index(s.cells().len());
            let cell = s.cell(c);
            let g = cell.centroid();
            let v = cell.vertex(ki.index(cell.len())).f();
            (si, c, [g[0] + t * (v[0] - g[0]), g[1] + t * (v[1] - g[1])])
        },
    )
}

pub fn hit_point(s: &Surface, ev: &TraceEvent) -> Option<[f64; 2]> {
    let (e, along) = ev.hit?;
    let cell = s.cell(e.cell);
    let a = cell.vertex(e.edge).f();
    let u = cell.edge_dir(e.edge).unit();
    Some([a[0] + along * u[0], a[1] + along * u[1]])
}

fn reversed(st: &TangentState) -> TangentState {
    let mut r = *st;
    r.angle = st.angle.map(|a| a + Angle::pi());
    r.dir = match r.angle {
        Some(a) => a.unit(),
        None => [-st.dir[0], -st.dir[1]],
    };
    r.time = 0.0;
    r
}

/// Tangential component kept, normal component negated, at every reflection.
pub fn reflection_law((si, c, p): Foot, theta: Angle) -> Outcome {
    let s = &surfaces()[si];
    let flow = Flow::new(s);
    let mut before = TangentState::new(c, p, theta);
    for ev in flow.trace(before, Budget::events(200)).unwrap() {
        if let EventKind::Reflection { edge } = ev.kind {
            let u = s.cell(edge.cell).edge_dir(edge.edge).unit();
            let (d0, d1) = (before.dir, ev.state.dir);
            prop_assert!((dot(d0, u) - dot(d1, u)).abs() < 1e-12);
            prop_assert!((cross(u, d0) + cross(u, d1)).abs() < 1e-12);
            prop_assert!(cross(u, d0) < 0.0);
        }
        before = ev.state;
    }
    Ok(())
}

/// Transport across either side of a gluing and back is the identity.
pub fn gluing_round_trip((si, _, p): Foot, theta: Angle, gi: prop::sample::Index) -> Outcome {
    let s = &surfaces()[si];
    let g = &s.gluings()[gi.index(s.gluings().len())];
    for (from, to) in [(g.a, g.b), (g.b, g.a)] {
        let (there, fwd, sh1) = s.transport(from).unwrap();
        let (back, rev, sh2) = s.transport(there).unwrap();
        prop_assert_eq!(there, to);
        prop_assert_eq!(back, from);
        prop_assert_eq!(sh1 + sh2, 0);
        let q = rev.apply_f(fwd.apply_f(p));
        prop_assert!((q[0] - p[0]).abs() < 1e-9 && (q[1] - p[1]).abs() < 1e-9);
        let d = rev.linear.apply_dir(fwd.linear.apply_dir(theta));
        if theta.is_exact() {
            prop_assert_eq!(d, theta);
        } else {
            prop_assert!(d.approx_eq(&theta, 1e-12));
        }
    }
    Ok(())
}

/// Flowing across a gluing, turning around and flowing back for the same
/// time returns to the starting point with the opposite direction.
pub fn crossing_back((si, c, p): Foot, theta: Angle) -> Outcome {
    let s = &surfaces()[si];
    let flow = Flow::new(s);
    let start = TangentState::new(c, p, theta);
    let mut st = start;
    let first = flow.advance(&mut st, f64::INFINITY).unwrap();
    if !matches!(first.kind, EventKind::Crossing { .. }) {
        return Ok(());
    }
    let t1 = st.time;
    let delta = 1e-6;
    if !matches!(flow.advance(&mut st, t1 + delta).unwrap().kind, EventKind::Timeout) {
        return Ok(());
    }
    let mut back = reversed(&st);
    let cross_back = flow.advance(&mut back, f64::INFINITY).unwrap();
    prop_assert!(matches!(cross_back.kind, EventKind::Crossing { .. }), "{:?}", cross_back.kind);
    prop_assert_eq!(back.displacement, 0);
    let ev = flow.advance(&mut back, delta + t1).unwrap();
    prop_assert!(matches!(ev.kind, EventKind::Timeout));
    prop_assert_eq!(back.cell, c);
    prop_assert!((back.point[0] - p[0]).abs() < 1e-9 && (back.point[1] - p[1]).abs() < 1e-9);
    let home = reversed(&back);
    if theta.is_exact() {
        prop_assert_eq!(home.angle, Some(theta));
    }
    prop_assert!((home.dir[0] - start.dir[0]).abs() < 1e-12 && (home.dir[1] - start.dir[1]).abs() < 1e-12);
    Ok(())
}

/// Elapsed time equals the summed lengths of the straight pieces.
pub fn arclength_additivity((si, c, p): Foot, theta: Angle, events: usize) -> Outcome {
    let s = &surfaces()[si];
    let flow = Flow::new(s);
    let mut prev = p;
    let mut sum = 0.0;
    let evs = flow.trace(TangentState::new(c, p, theta), Budget::events(events)).unwrap();
    for ev in &evs {
        if let Some(h) = hit_point(s, ev) {
            sum += (h[0] - prev[0]).hypot(h[1] - prev[1]);
        }
        prev = ev.state.point;
    }
    let total = evs.last().unwrap().state.time;
    prop_assert!((total - sum).abs() <= 1e-9 * total.max(1.0), "{} vs {}", total, sum);
    Ok(())
}

/// The displacement of `k` composed returns is the sum of the single ones,
/// and matches an uninterrupted trace of the same flight.
pub fn cocycle_additivity(seed: u64, k: usize, (m, n): (i64, i64)) -> Outcome {
    let q = quotient();
    let Ok(system) = SkewSystem::new(q, seam_section(q), DirectionMode::Fixed(Angle::pi_frac(m, n))) else {
        // directions parallel to the seam
        prop_assert_eq!(2 * m, n);
        return Ok(());
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let start = system.sample(&mut rng);
    let mut p = start;
    let mut sum = 0;
    let mut events = 0;
    for _ in 0..k {
        let Ok(r) = system.step(&p) else { return Ok(()) };
        sum += r.phi;
        events += r.events;
        prop_assert_eq!(r.end.displacement - r.start.displacement, r.phi);
        p = r.end;
    }
    prop_assert_eq!(p.displacement - start.displacement, sum);
    let st = system.section().state_of(q, &start).unwrap();
    let evs = system.flow().trace(st, Budget::events(events)).unwrap();
    prop_assert_eq!(evs.len(), events);
    prop_assert_eq!(evs.last().unwrap().state.displacement, sum);
    Ok(())
}

/// Equal seeds give equal reports, and merging is order-independent.
pub fn seed_determinism(seed: u64, m: i64) -> Outcome {
    let q = quotient();
    let system = SkewSystem::new(q, seam_section(q), DirectionMode::Fixed(Angle::pi_frac(m, 25))).unwrap();
    let a = recurrence_experiment(&system, 3, 40, seed);
    let b = recurrence_experiment(&system, 3, 40, seed);
    prop_assert_eq!(&a, &b);
    let c = recurrence_experiment(&system, 2, 40, seed ^ 1);
    prop_assert_eq!(a.clone().merge(c.clone()), c.merge(a));
    Ok(())
}

fn msg<T: std::fmt::Debug>(e: proptest::test_runner::TestError<T>) -> String {
    format!("{e}")
}

/// Runs every invariant for `cases` random cases; one entry per suite.
pub fn run_suites(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let run = |name: &'static str, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
        (name, f(&mut runner))
    };
    vec![
        run("reflection law", &|r| r.run(&(footpoint(), angle()), |(f, a)| reflection_law(f, a)).map_err(msg)),
        run("round-trip transport", &|r| {
            r.run(&(footpoint(), angle(), any::<prop::sample::Index>()), |(f, a, g)| gluing_round_trip(f, a, g))
                .map_err(msg)?;
            r.run(&(footpoint(), angle()), |(f, a)| crossing_back(f, a)).map_err(msg)
        }),
        run("arclength additivity", &|r| {
            r.run(&(footpoint(), angle()), |(f, a)| arclength_additivity(f, a, 1000)).map_err(msg)
        }),
        run("cocycle additivity", &|r| {
            r.run(&(any::<u64>(), 1usize..8, (1i64..24, 25i64..50)), |(s, k, t)| cocycle_additivity(s, k, t)).map_err(msg)
        }),
        run("determinism by seed", &|r| r.run(&(any::<u64>(), 1i64..12), |(s, m)| seed_determinism(s, m)).map_err(msg)),
    ]
}
