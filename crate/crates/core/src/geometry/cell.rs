use crate::angle::Angle;
use crate::real::{cross, Pt, Real, EPS_GEOM};

use super::GeometryError;

/// A planar polygon, counterclockwise, used as one chart of a surface.
///
/// Each edge carries a direction angle. Directions are exact when they can be
/// certified: either supplied by the constructor or read off exact coordinates
/// of axis-parallel and diagonal edges.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    vertices: Vec<Pt>,
    dirs: Vec<Angle>,
}

impl Cell {
    pub fn new(vertices: Vec<Pt>) -> Self {
        let n = vertices.len();
        let dirs = (0..n)
            .map(|i| infer_direction(vertices[i], vertices[(i + 1) % n]))
            .collect();
        Cell { vertices, dirs }
    }

    /// Cell with explicit edge directions; `None` entries are inferred.
    pub fn with_directions(vertices: Vec<Pt>, dirs: Vec<Option<Angle>>) -> Self {
        let mut cell = Cell::new(vertices);
        for (slot, d) in cell.dirs.iter_mut().zip(dirs) {
            if let Some(d) = d {
                *slot = d.normalized();
            }
        }
        cell
    }

    pub fn rect(x0: Real, y0: Real, w: Real, h: Real) -> Self {
        Cell::new(vec![
            Pt::new(x0, y0),
            Pt::new(x0 + w, y0),
            Pt::new(x0 + w, y0 + h),
            Pt::new(x0, y0 + h),
        ])
    }

    pub fn unit_square_at(x: i64, y: i64) -> Self {
        Cell::rect(Real::from_int(x), Real::from_int(y), Real::one(), Real::one())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Pt {
        self.vertices[i % self.len()]
    }

    pub fn edge(&self, i: usize) -> (Pt, Pt) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_dir(&self, i: usize) -> Angle {
        self.dirs[i % self.len()]
    }

    pub fn edge_dirs(&self) -> &[Angle] {
        &self.dirs
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        let (a, b) = self.edge(i);
        let (a, b) = (a.f(), b.f());
        (b[0] - a[0]).hypot(b[1] - a[1])
    }

    /// Exact squared length, when coordinates are exact.
    pub fn edge_length_sq_exact(&self, i: usize) -> Option<crate::real::Rational> {
        let (a, b) = self.edge(i);
        let d = b - a;
        (d.x * d.x + d.y * d.y).exact()
    }

    /// Exact length: a rational square root of the squared length, or one
    /// exact coordinate difference over the matching exact direction cosine.
    pub fn edge_length_exact(&self, i: usize) -> Option<crate::real::Rational> {
        use crate::real::Rational;
        let zero = Rational::from_integer(0);
        if let Some(r) = self.edge_length_sq_exact(i).and_then(rational_sqrt) {
            return Some(r);
        }
        let (a, b) = self.edge(i);
        let d = b - a;
        let dir = self.edge_dir(i);
        let cos = (dir + crate::angle::Angle::pi_frac(1, 2)).exact_sin();
        [(d.x.exact(), cos), (d.y.exact(), dir.exact_sin())]
            .into_iter()
            .find_map(|(delta, c)| match (delta, c) {
                (Some(delta), Some(c)) if c != zero => Some(delta / c),
                _ => None,
            })
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| cross(self.vertex(i).f(), self.vertex(i + 1).f()))
            .sum::<f64>()
            / 2.0
    }

    /// Interior angle at vertex `i`, between edge `i-1` (incoming) and edge `i`.
    pub fn corner_angle(&self, i: usize) -> Angle {
        let n = self.len();
        let din = self.edge_dir((i + n - 1) % n);
        let dout = self.edge_dir(i);
        Angle::pi() - (dout - din).signed()
    }

    pub fn centroid(&self) -> [f64; 2] {
        let a = self.signed_area();
        let n = self.len();
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let p = self.vertex(i).f();
            let q = self.vertex(i + 1).f();
            let c = cross(p, q);
            cx += (p[0] + q[0]) * c;
            cy += (p[1] + q[1]) * c;
        }
        [cx / (6.0 * a), cy / (6.0 * a)]
    }

    pub fn map_vertices(&self, f: impl Fn(Pt) -> Pt, g: impl Fn(Angle) -> Angle) -> Cell {
        Cell {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
            dirs: self.dirs.iter().map(|&d| g(d).normalized()).collect(),
        }
    }

    /// Reverses vertex order; edge `i` becomes edge `n - 2 - i (mod n)`.
    pub fn reversed(&self) -> Cell {
        let n = self.len();
        let vertices: Vec<Pt> = (0..n).map(|j| self.vertex(n - 1 - j)).collect();
        let dirs = (0..n)
            .map(|j| (self.edge_dir((2 * n - 2 - j) % n) + Angle::pi()).normalized())
            .collect();
        Cell { vertices, dirs }
    }

    pub(crate) fn validate(&self, id: usize) -> Result<(), GeometryError> {
        let bad = |reason: &str| GeometryError::BadCell {
            cell: id,
            reason: reason.to_string(),
        };
        let n = self.len();
        if n < 3 {
            return Err(bad("fewer than 3 vertices"));
        }
        for i in 0..n {
            if self.edge_length(i) <= EPS_GEOM {
                return Err(bad("repeated consecutive vertex"));
            }
            let (a, b) = self.edge(i);
            let v = crate::real::sub(b.f(), a.f());
            let len = crate::real::norm(v);
            let u = self.edge_dir(i).unit();
            if (v[0] / len - u[0]).abs() > 1e-7 || (v[1] / len - u[1]).abs() > 1e-7 {
                return Err(bad("edge direction does not match coordinates"));
            }
        }
        if self.signed_area() <= 0.0 {
            return Err(bad("not counterclockwise"));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                if segments_touch(a.f(), b.f(), c.f(), d.f()) {
                    return Err(bad("self-intersecting boundary"));
                }
            }
        }
        for i in 0..n {
            let ang = self.corner_angle(i).radians();
            if ang <= 1e-12 {
                return Err(bad("zero interior angle"));
            }
        }
        Ok(())
    }

    /// Point-in-polygon with boundary tolerance.
    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        let n = self.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.vertex(i).f();
            let b = self.vertex(i + 1).f();
            if point_segment_distance(p, a, b) <= tol {
                return true;
            }
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

fn infer_direction(a: Pt, b: Pt) -> Angle {
    let d = b - a;
    if let (Some(dx), Some(dy)) = (d.x.exact(), d.y.exact()) {
        use num_traits::{Signed, Zero};
        let q = |p, r| Some(Angle::pi_frac(p, r));
        let exact = match (dx.is_zero(), dy.is_zero()) {
            (true, false) => q(if dy.is_positive() { 1 } else { 3 }, 2),
            (false, true) => q(if dx.is_positive() { 0 } else { 1 }, 1),
            (false, false) if dx.abs() == dy.abs() => match (dx.is_positive(), dy.is_positive()) {
                (true, true) => q(1, 4),
                (false, true) => q(3, 4),
                (false, false) => q(5, 4),
                (true, false) => q(7, 4),
            },
            _ => None,
        };
        if let Some(a) = exact {
            return a;
        }
    }
    let v = d.f();
    Angle::Inexact(v[1].atan2(v[0])).normalized()
}

fn rational_sqrt(q: crate::real::Rational) -> Option<crate::real::Rational> {
    let isqrt = |n: i64| -> Option<i64> {
        let r = (n as f64).sqrt().round() as i64;
        (r.checked_mul(r)? == n).then_some(r)
    };
    Some(crate::real::Rational::new(isqrt(*q.numer())?, isqrt(*q.denom())?))
}

pub fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = crate::real::sub(b, a);
    let ap = crate::real::sub(p, a);
    let l2 = crate::real::dot(ab, ab);
    let t = if l2 > 0.0 {
        (crate::real::dot(ap, ab) / l2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    crate::real::norm([ap[0] - t * ab[0], ap[1] - t * ab[1]])
}

fn segments_touch(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let tol = EPS_GEOM;
    if point_segment_distance(a, c, d) <= tol
        || point_segment_distance(b, c, d) <= tol
        || point_segment_distance(c, a, b) <= tol
        || point_segment_distance(d, a, b) <= tol
    {
        return true;
    }
    let d1 = cross(crate::real::sub(b, a), crate::real::sub(c, a));
    let d2 = cross(crate::real::sub(b, a), crate::real::sub(d, a));
    let d3 = cross(crate::real::sub(d, c), crate::real::sub(a, c));
    let d4 = cross(crate::real::sub(d, c), crate::real::sub(b, c));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}
