use std::collections::HashSet;
use std::sync::Arc;

use crate::angle::Angle;
use crate::geometry::{
    build_surface_with_cut, double_surface, slab_surface, Barrier, EdgeRef, Gluing, LazySurface, Obstacle, SlabSpec, Surface, Wrap,
};
use crate::isometry::Linear;
use crate::real::{Pt, Real};
use crate::unfolding::origami;

use super::params::{polar, Params};
use super::rotated::{rotated_band_provider, times};
use super::stairway::StairwayProvider;
use super::{CatalogError, FamilySpec};

pub const FAMILIES: &[&str] = &[
    "band_rect_obstacles",
    "band_rotated_obstacles",
    "stairway",
    "origami_staircase",
    "torus_barrier",
    "band_barriers",
    "cylinder_two_barriers",
    "band_tilted_rect",
    "band_horizontal_barriers",
    "plane_obstacles",
    "windtree",
    "tower",
];

const PERIODIC: Wrap = Wrap::Periodic { shift: 1 };
const CLOSED: Wrap = Wrap::Periodic { shift: 0 };

pub(super) fn build(spec: &FamilySpec) -> Result<Surface, CatalogError> {
    let p = Params::new(spec);
    let s = match spec.family.as_str() {
        "band_rect_obstacles" => slab_surface(&band(vec![rect_param(&p)?], vec![], PERIODIC))?,
        "band_rotated_obstacles" => rotated_band(&p)?,
        "stairway" => stairway(&p)?,
        "origami_staircase" => origami(&[(0, 0), (1, 0), (2, 0)], Some((1, 1)))?,
        "torus_barrier" => torus_barrier(&p)?,
        "band_barriers" => {
            let b = barrier(&p, "a", "b", "l", "theta", ("1/4", "1/4", "1/2", "1/2"))?;
            slab_surface(&band(vec![], vec![b], PERIODIC))?
        }
        "cylinder_two_barriers" => {
            let b1 = barrier(&p, "a1", "b1", "l1", "theta1", ("1/2", "1/2", "1/4", "1/3"))?;
            let b2 = barrier(&p, "a2", "b2", "l2", "theta2", ("1/4", "1/8", "1/4", "0"))?;
            if segments_meet(b1, b2) {
                return Err(CatalogError::ParamOutOfRange("the two barriers intersect".into()));
            }
            let mut spec = band(vec![], vec![b1, b2], PERIODIC);
            spec.wrap_y = CLOSED;
            slab_surface(&spec)?
        }
        "band_tilted_rect" => {
            let r = rect(p.positive("a", "1/4")?, p.positive("b", "1/8")?, p.real("xi", "3/8")?, p.real("eta", "7/16")?);
            let theta = p.angle("theta", "1/3")?;
            let c = center(&r);
            slab_surface(&band(vec![rotate(&r, c, theta)], vec![], PERIODIC))?
        }
        "band_horizontal_barriers" => {
            let l = p.positive("l", "1/2")?;
            let height = p.real("height", "1/2")?;
            let x0 = match p.opt_real("x0")? {
                Some(x) => x,
                None => (Real::one() - l) / Real::from_int(2),
            };
            let b = Barrier { p: Pt::new(x0, height), q: Pt::new(x0 + l, height), dir: Some(Angle::zero()) };
            slab_surface(&band(vec![], vec![b], PERIODIC))?
        }
        "plane_obstacles" => plane_obstacles(&p)?,
        "windtree" => windtree(&p)?,
        "tower" => tower(&p)?,
        other => return Err(CatalogError::UnknownFamily(other.to_string())),
    };
    p.finish()?;
    Ok(s)
}

/// The unit cell `[0,1]²` of the standard band, walls at `y = 0, 1`.
fn band(obstacles: Vec<Obstacle>, barriers: Vec<Barrier>, wrap_x: Wrap) -> SlabSpec {
    SlabSpec {
        x0: Real::zero(),
        x1: Real::one(),
        y0: Real::zero(),
        y1: Real::one(),
        obstacles,
        barriers,
        wrap_x,
        wrap_y: Wrap::Walls,
    }
}

/// `R(a, b; ξ, η) = [ξ, ξ+a] × [η, η+b]`.
pub(super) fn rect(a: Real, b: Real, xi: Real, eta: Real) -> Obstacle {
    Obstacle {
        vertices: vec![Pt::new(xi, eta), Pt::new(xi + a, eta), Pt::new(xi + a, eta + b), Pt::new(xi, eta + b)],
        dirs: Some((0..4).map(|k| Angle::pi_frac(k, 2)).collect()),
    }
}

fn rect_param(p: &Params) -> Result<Obstacle, CatalogError> {
    Ok(rect(p.positive("a", "1/2")?, p.positive("b", "1/4")?, p.real("xi", "1/4")?, p.real("eta", "1/4")?))
}

pub(super) fn center(o: &Obstacle) -> Pt {
    let n = Real::from_int(o.vertices.len() as i64);
    let (sx, sy) = o.vertices.iter().fold((Real::zero(), Real::zero()), |(x, y), v| (x + v.x, y + v.y));
    Pt::new(sx / n, sy / n)
}

/// `o` rotated by `theta` about `c`.
pub(super) fn rotate(o: &Obstacle, c: Pt, theta: Angle) -> Obstacle {
    let r = Linear::rotation(theta);
    Obstacle {
        vertices: o.vertices.iter().map(|&v| r.apply_pt(v - c) + c).collect(),
        dirs: o.dirs.as_ref().map(|ds| ds.iter().map(|&d| (d + theta).normalized()).collect()),
    }
}

/// `O(a, b, l, θ)`: the segment from `(a, b)` to `(a + l cos θ, b + l sin θ)`.
fn barrier(p: &Params, a: &str, b: &str, l: &str, t: &str, d: (&str, &str, &str, &str)) -> Result<Barrier, CatalogError> {
    let start = Pt::new(p.real(a, d.0)?, p.real(b, d.1)?);
    let len = p.real(l, d.2)?;
    if len.f() < 0.0 {
        return Err(CatalogError::ParamOutOfRange(format!("{l} must be non-negative")));
    }
    let theta = p.angle(t, d.3)?;
    Ok(Barrier { p: start, q: polar(start, len, theta), dir: Some(theta) })
}

fn segments_meet(a: Barrier, b: Barrier) -> bool {
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    let (p1, p2, q1, q2) = (a.p.f(), a.q.f(), b.p.f(), b.q.f());
    let (d1, d2) = (orient(p1, p2, q1), orient(p1, p2, q2));
    let (d3, d4) = (orient(q1, q2, p1), orient(q1, q2, p2));
    d1 * d2 <= 0.0 && d3 * d4 <= 0.0
}

fn torus_barrier(p: &Params) -> Result<Surface, CatalogError> {
    let l = p.positive("l", "1/2")?;
    let eta = p.angle("eta", "0")?;
    let end = polar(Pt::zero(), l, eta);
    if end.x.f().abs() >= 1.0 || end.y.f().abs() >= 1.0 {
        return Err(CatalogError::ParamOutOfRange("the barrier does not fit in the unit square".into()));
    }
    // centre the barrier in the fundamental domain so that it is interior
    let half = Real::ratio(1, 2);
    let (x0, y0) = (end.x * half - half, end.y * half - half);
    Ok(slab_surface(&SlabSpec {
        x0,
        x1: x0 + Real::one(),
        y0,
        y1: y0 + Real::one(),
        obstacles: vec![],
        barriers: vec![Barrier { p: Pt::zero(), q: end, dir: Some(eta) }],
        wrap_x: CLOSED,
        wrap_y: CLOSED,
    })?)
}

fn rotated_band(p: &Params) -> Result<Surface, CatalogError> {
    let base = rect(p.positive("a", "1/4")?, p.positive("b", "1/4")?, p.real("xi", "3/8")?, p.real("eta", "3/8")?);
    let c = center(&base);
    let o = Pt::new(p.real("ox", &c.x.to_string())?, p.real("oy", &c.y.to_string())?);
    let alpha = p.angle("alpha", "1/2")?;
    let window = p.count("window", 8)?;
    match alpha.pi_units() {
        Some(q) => {
            // the configuration repeats after the order of α modulo 2π
            let period = *(q / 2).reduced().denom();
            if period > 64 {
                return Err(CatalogError::ParamOutOfRange(format!("period {period} exceeds 64 cells")));
            }
            let obstacles = (0..period)
                .map(|k| {
                    let shift = Pt::new(Real::from_int(k), Real::zero());
                    let mut ob = rotate(&base, o, times(alpha, k));
                    ob.vertices.iter_mut().for_each(|v| *v = *v + shift);
                    ob
                })
                .collect();
            let mut spec = band(obstacles, vec![], PERIODIC);
            spec.x1 = Real::from_int(period);
            Ok(slab_surface(&spec)?)
        }
        None => {
            let lazy = rotated_band_provider(base, o, alpha)?;
            Ok(lazy.window(0, window as i64 - 1)?.surface)
        }
    }
}

fn stairway(p: &Params) -> Result<Surface, CatalogError> {
    let heights = p.reals("h", "1")?;
    if heights.iter().any(|h| h.f() <= 0.0) {
        return Err(CatalogError::ParamOutOfRange("heights must be positive".into()));
    }
    let window = p.count("window", 10)?;
    let lazy = LazySurface::new(Arc::new(StairwayProvider::new(heights)));
    Ok(lazy.window(0, window as i64 - 1)?.surface)
}

/// Turns every shift-labelled gluing into a pair of cut edges.
fn cut_shifted(s: Surface) -> Result<Surface, CatalogError> {
    let mut cut = HashSet::new();
    let mut kept: Vec<Gluing> = Vec::new();
    for g in s.gluings() {
        if g.shift != 0 {
            cut.insert(g.a);
            cut.insert(g.b);
        } else {
            kept.push(g.clone());
        }
    }
    Ok(build_surface_with_cut(s.cells().to_vec(), kept, &cut)?)
}

fn plane_obstacles(p: &Params) -> Result<Surface, CatalogError> {
    let poly = p.points("poly", "0,0;2,0;3,2;1,3;-1,2")?;
    let margin = p.positive("margin", "2")?;
    let (mut lo, mut hi) = (poly[0], poly[0]);
    for v in &poly {
        lo = Pt::new(if v.x.f() < lo.x.f() { v.x } else { lo.x }, if v.y.f() < lo.y.f() { v.y } else { lo.y });
        hi = Pt::new(if v.x.f() > hi.x.f() { v.x } else { hi.x }, if v.y.f() > hi.y.f() { v.y } else { hi.y });
    }
    let spec = SlabSpec {
        x0: lo.x - margin,
        x1: hi.x + margin,
        y0: lo.y - margin,
        y1: hi.y + margin,
        obstacles: vec![Obstacle { vertices: poly, dirs: None }],
        barriers: vec![],
        wrap_x: PERIODIC,
        wrap_y: PERIODIC,
    };
    cut_shifted(slab_surface(&spec)?)
}

fn windtree(p: &Params) -> Result<Surface, CatalogError> {
    let (a, b) = (p.positive("a", "1/2")?, p.positive("b", "1/2")?);
    let m = p.count("window", 3)? as i64;
    let half = Real::ratio(1, 2);
    let mut obstacles = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let (xi, eta) = (Real::from_int(i) + half - a * half, Real::from_int(j) + half - b * half);
            obstacles.push(rect(a, b, xi, eta));
        }
    }
    let spec = SlabSpec {
        x0: Real::zero(),
        x1: Real::from_int(m),
        y0: Real::zero(),
        y1: Real::from_int(m),
        obstacles,
        barriers: vec![],
        wrap_x: PERIODIC,
        wrap_y: PERIODIC,
    };
    cut_shifted(slab_surface(&spec)?)
}

/// The band quotient doubled along its walls; the obstacle sides stay open.
fn tower(p: &Params) -> Result<Surface, CatalogError> {
    let s = slab_surface(&band(vec![rect_param(p)?], vec![], PERIODIC))?;
    let on_wall = |e: &EdgeRef| {
        let (u, v) = s.cell(e.cell).edge(e.edge);
        let y = |q: Pt| q.y.f();
        (y(u) == 0.0 && y(v) == 0.0) || (y(u) == 1.0 && y(v) == 1.0)
    };
    let open: Vec<EdgeRef> = s.boundary().iter().copied().filter(|e| !on_wall(e)).collect();
    Ok(double_surface(&s, &open)?)
}
