use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use crate::flow::{Budget, EventKind, Flow, TangentState};
use crate::geometry::{vertex_angles, EdgeRef, Surface};
use crate::holonomy::{rotational_holonomy, DEFAULT_CAP};
use crate::real::Rational;

use super::UnfoldError;

/// Unit squares of a translation surface after the normalization
/// `X = (x + shear·y − origin_x) / unit_x`, `Y = (y − origin_y) / unit_y`.
#[derive(Clone, Debug, Serialize)]
pub struct SquareTiling {
    pub unit: [f64; 2],
    pub origin: [f64; 2],
    #[serde(serialize_with = "ser_rational")]
    pub shear: Rational,
    /// `unit_y / unit_x` when it is rational within the search bound.
    #[serde(serialize_with = "ser_opt_rational")]
    pub aspect: Option<Rational>,
    /// Cell and chart point of each square's center.
    pub centers: Vec<(usize, [f64; 2])>,
    /// Normalized lattice position of each square in its developed chart.
    pub positions: Vec<[i64; 2]>,
    /// Right and up neighbor of each square; `None` across boundary.
    pub right: Vec<Option<usize>>,
    pub up: Vec<Option<usize>>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::real::format_rational(*q))
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_rational(q, s),
        None => s.serialize_none(),
    }
}

impl SquareTiling {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.right.iter().chain(&self.up).all(Option::is_some)
    }
}

/// Best rational approximation with denominator at most `bound`, accepted
/// when it matches `x` to relative precision 1e-9.
pub(crate) fn rationalize(x: f64, bound: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > bound {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if (p1 as f64 / q1 as f64 - x).abs() <= 1e-9 * x.abs().max(1.0) || frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    let q = Rational::new(p1, q1);
    ((p1 as f64 / q1 as f64 - x).abs() <= 1e-9 * x.abs().max(1.0)).then_some(q)
}

/// Largest `u` such that every value is an integer multiple of `u`, found
/// through rational ratios to the first nonzero value.
fn common_unit(values: &[f64], bound: i64) -> Option<f64> {
    let tol = 1e-9;
    let first = *values.iter().find(|v| v.abs() > tol)?;
    let mut ratios = Vec::new();
    for &v in values {
        if v.abs() <= tol {
            continue;
        }
        ratios.push(rationalize(v / first, bound)?);
    }
    let l = ratios.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let g = ratios.iter().fold(0i64, |acc, r| acc.gcd(&(r.numer() * (l / r.denom()))));
    Some(first.abs() * g as f64 / l as f64)
}

/// Translation offsets of each cell chart in one developed plane.
fn develop(s: &Surface) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let n = s.cells().len();
    let mut off: Vec<Option<[f64; 2]>> = vec![None; n];
    off[0] = Some([0.0, 0.0]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let o = off[c].unwrap();
        for e in 0..s.cell(c).len() {
            if let Some((to, map, _)) = s.transport(EdgeRef::new(c, e)) {
                let t = map.translation.f();
                if off[to.cell].is_none() {
                    off[to.cell] = Some([o[0] - t[0], o[1] - t[1]]);
                    queue.push_back(to.cell);
                }
            }
        }
    }
    let off: Vec<[f64; 2]> = off.into_iter().map(|o| o.unwrap()).collect();
    let mut periods = Vec::new();
    for g in s.gluings() {
        let t = g.map.translation.f();
        let (oa, ob) = (off[g.a.cell], off[g.b.cell]);
        let p = [oa[0] - t[0] - ob[0], oa[1] - t[1] - ob[1]];
        if p[0].abs() > 1e-9 || p[1].abs() > 1e-9 {
            periods.push(p);
        }
    }
    (off, periods)
}

/// Searches axis scalings and small rational shears for a unit-square
/// tiling of a translation surface whose singular points and periods lie on
/// one lattice.
pub fn is_square_tiled(s: &Surface, bound: i64) -> Result<SquareTiling, UnfoldError> {
    match rotational_holonomy(s, DEFAULT_CAP) {
        Ok(g) if g.is_trivial() => {}
        _ => return Err(UnfoldError::NontrivialHolonomy),
    }
    let (off, periods) = develop(s);
    let vm = vertex_angles(s);
    let mut marks: Vec<[f64; 2]> = Vec::new();
    for class in &vm.classes {
        let boundaryish = class.truncated || class.kind != crate::geometry::VertexKind::RegularInterior;
        if boundaryish {
            for &(c, k) in &class.corners {
                let v = s.cell(c).vertex(k).f();
                marks.push([v[0] + off[c][0], v[1] + off[c][1]]);
            }
        }
    }
    let origin = marks.first().copied().unwrap_or_else(|| {
        let v = s.cell(0).vertex(0).f();
        [v[0] + off[0][0], v[1] + off[0][1]]
    });
    let mut vectors: Vec<[f64; 2]> = periods;
    vectors.extend(marks.iter().map(|m| [m[0] - origin[0], m[1] - origin[1]]));

    let max_q = bound.clamp(1, 6);
    let mut shears = vec![Rational::from_integer(0)];
    for q in 1..=max_q {
        for p in 1..q {
            let r = Rational::new(p, q);
            if *r.denom() == q {
                shears.push(r);
                shears.push(-r);
            }
        }
    }
    for shear in shears {
        let sh = *shear.numer() as f64 / *shear.denom() as f64;
        let xs: Vec<f64> = vectors.iter().map(|v| v[0] + sh * v[1]).collect();
        let ys: Vec<f64> = vectors.iter().map(|v| v[1]).collect();
        let (Some(ux), Some(uy)) = (common_unit(&xs, bound), common_unit(&ys, bound)) else {
            continue;
        };
        if let Some(t) = build_tiling(s, &off, [ux, uy], origin, shear, bound) {
            return Ok(t);
        }
    }
    Err(UnfoldError::NotSquareTiled)
}

fn build_tiling(
    s: &Surface,
    off: &[[f64; 2]],
    unit: [f64; 2],
    origin: [f64; 2],
    shear: Rational,
    bound: i64,
) -> Option<SquareTiling> {
    let sh = *shear.numer() as f64 / *shear.denom() as f64;
    let count = s.total_area() / (unit[0] * unit[1]);
    let n = count.round();
    if n < 1.0 || (count - n).abs() > 1e-6 || n > 1e6 {
        return None;
    }
    // developed point of normalized lattice coordinates
    let to_plane = |x: f64, y: f64| {
        let yy = origin[1] + y * unit[1];
        [origin[0] + x * unit[0] - sh * (yy - origin[1]), yy]
    };
    let jitter = [0.5 + 1.1e-4, 0.5 + 1.7e-4];
    let mut centers = Vec::new();
    let mut positions = Vec::new();
    for (c, cell) in s.cells().iter().enumerate() {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for v in cell.vertices() {
            let v = v.f();
            let p = [v[0] + off[c][0], v[1] + off[c][1]];
            let y = (p[1] - origin[1]) / unit[1];
            let x = (p[0] + sh * (p[1] - origin[1]) - origin[0]) / unit[0];
            lo = [lo[0].min(x), lo[1].min(y)];
            hi = [hi[0].max(x), hi[1].max(y)];
        }
        for j in (lo[1].floor() as i64 - 1)..=(hi[1].ceil() as i64) {
            for i in (lo[0].floor() as i64 - 1)..=(hi[0].ceil() as i64) {
                let p = to_plane(i as f64 + jitter[0], j as f64 + jitter[1]);
                let local = [p[0] - off[c][0], p[1] - off[c][1]];
                if cell.contains(local, -1e-12) {
                    centers.push((c, local));
                    positions.push([i, j]);
                }
            }
        }
    }
    if centers.len() != n as usize {
        return None;
    }
    let flow = Flow::new(s);
    let step = |from: (usize, [f64; 2]), dir: [f64; 2]| -> Option<usize> {
        let len = dir[0].hypot(dir[1]);
        let st = TangentState::from_vector(from.0, from.1, dir).ok()?;
        let evs = flow.trace(st, Budget { max_events: 100_000, max_length: len }).ok()?;
        let last = evs.last()?;
        if !matches!(last.kind, EventKind::Timeout) {
            return None;
        }
        if evs.iter().any(|e| !matches!(e.kind, EventKind::Crossing { .. } | EventKind::Vertex { .. } | EventKind::Timeout)) {
            return None;
        }
        let end = last.state;
        centers.iter().position(|&(c, p)| {
            c == end.cell && (p[0] - end.point[0]).abs() < 1e-6 && (p[1] - end.point[1]).abs() < 1e-6
        })
    };
    let ex = [unit[0], 0.0];
    let ey = [-sh * unit[1], unit[1]];
    let right: Vec<Option<usize>> = centers.iter().map(|&c| step(c, ex)).collect();
    let up: Vec<Option<usize>> = centers.iter().map(|&c| step(c, ey)).collect();
    // both neighbor maps must be injective
    for map in [&right, &up] {
        let mut seen = vec![false; centers.len()];
        for t in map.iter().flatten() {
            if std::mem::replace(&mut seen[*t], true) {
                return None;
            }
        }
    }
    let aspect = rationalize(unit[1] / unit[0], bound);
    Some(SquareTiling { unit, origin, shear, aspect, centers, positions, right, up })
}

/// Tangent of a direction in normalized tiling coordinates, when rational.
pub(crate) fn normalized_slope(t: &SquareTiling, slope: Option<Rational>) -> Option<Option<Rational>> {
    let aspect = t.aspect?;
    // (c, s) ↦ (c + shear·s, s / aspect) up to the common x scale
    Some(match slope {
        None => {
            if t.shear == Rational::from_integer(0) {
                None
            } else {
                Some(Rational::from_integer(1) / (t.shear * aspect))
            }
        }
        Some(m) => {
            let den = (Rational::from_integer(1) + t.shear * m) * aspect;
            if den == Rational::from_integer(0) {
                None
            } else {
                Some(m / den)
            }
        }
    })
}
