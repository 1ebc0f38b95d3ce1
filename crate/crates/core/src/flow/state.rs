use std::f64::consts::PI;

use crate::angle::Angle;
use crate::geometry::{vertex_angles, EdgeRef, Side, Surface, VertexMap};
use crate::isometry::Linear;
use crate::real::{cross, dot};

use super::{FlowError, EPS_SING};

/// A unit tangent vector in chart coordinates, with elapsed time and the
/// accumulated ℤ-displacement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentState {
    pub cell: usize,
    pub point: [f64; 2],
    pub dir: [f64; 2],
    /// Exact direction when available; `dir` is derived from it.
    pub angle: Option<Angle>,
    pub time: f64,
    pub displacement: i64,
}

impl TangentState {
    pub fn new(cell: usize, point: [f64; 2], angle: Angle) -> Self {
        TangentState {
            cell,
            point,
            dir: angle.unit(),
            angle: angle.is_exact().then_some(angle),
            time: 0.0,
            displacement: 0,
        }
    }

    pub fn from_vector(cell: usize, point: [f64; 2], v: [f64; 2]) -> Result<Self, FlowError> {
        let n = v[0].hypot(v[1]);
        if !(n > 1e-300) || !n.is_finite() {
            return Err(FlowError::DegenerateDirection);
        }
        Ok(TangentState {
            cell,
            point,
            dir: [v[0] / n, v[1] / n],
            angle: None,
            time: 0.0,
            displacement: 0,
        })
    }

    /// Direction angle in radians, in `[0, 2π)`.
    pub fn theta(&self) -> f64 {
        match self.angle {
            Some(a) => a.normalized().radians(),
            None => self.dir[1].atan2(self.dir[0]).rem_euclid(2.0 * PI),
        }
    }

    fn apply_linear(&mut self, l: &Linear) {
        match self.angle {
            Some(a) if l.is_exact() => {
                let b = l.apply_dir(a);
                self.angle = Some(b);
                self.dir = b.unit();
            }
            _ => {
                self.angle = None;
                self.dir = l.apply_vec(self.dir);
            }
        }
    }

    fn reflect(&mut self, axis: Angle, axis_vec: [f64; 2]) {
        let l = Linear::reflection_about(axis);
        if self.angle.is_some() && l.is_exact() {
            self.apply_linear(&l);
        } else {
            self.angle = None;
            // d' = 2(d·u)u - d keeps the float path independent of the angle form
            let u = axis_vec;
            let k = 2.0 * dot(self.dir, u);
            self.dir = [k * u[0] - self.dir[0], k * u[1] - self.dir[1]];
            let n = self.dir[0].hypot(self.dir[1]);
            self.dir = [self.dir[0] / n, self.dir[1] / n];
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EventKind {
    /// Crossed the interior of a glued edge.
    Crossing { gluing: usize, exit: EdgeRef, shift: i64 },
    /// Reflected off the interior of a boundary edge.
    Reflection { edge: EdgeRef },
    /// Passed through a regular vertex. `crossed` lists `(gluing, left via side a)`.
    Vertex {
        vertex: usize,
        crossed: Vec<(usize, bool)>,
        reflected: Option<EdgeRef>,
        shift: i64,
    },
    SingularHit { vertex: usize },
    WindowExit { edge: EdgeRef },
    Timeout,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceEvent {
    pub kind: EventKind,
    /// Where the hit happened: edge of the departing cell and arclength along it.
    pub hit: Option<(EdgeRef, f64)>,
    pub state: TangentState,
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_events: usize,
    pub max_length: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_events: 1_000_000,
            max_length: 1e6,
        }
    }
}

impl Budget {
    pub fn events(n: usize) -> Self {
        Budget {
            max_events: n,
            max_length: f64::INFINITY,
        }
    }
}

#[derive(Clone, Debug)]
struct EdgeGeom {
    a: [f64; 2],
    e: [f64; 2],
    len: f64,
    unit: [f64; 2],
    dir: Angle,
}

/// Precomputed tracing context for one surface.
#[derive(Clone, Debug)]
pub struct Flow<'a> {
    surface: &'a Surface,
    vertices: VertexMap,
    edges: Vec<Vec<EdgeGeom>>,
    wedge: Vec<Vec<(f64, f64)>>,
}

enum Walk {
    Ccw,
    Cw,
}

impl<'a> Flow<'a> {
    pub fn new(surface: &'a Surface) -> Self {
        let vertices = vertex_angles(surface);
        let mut edges = Vec::new();
        let mut wedge = Vec::new();
        for c in surface.cells() {
            let mut row = Vec::new();
            let mut wrow = Vec::new();
            for i in 0..c.len() {
                let (a, b) = c.edge(i);
                let (a, b) = (a.f(), b.f());
                let e = [b[0] - a[0], b[1] - a[1]];
                let len = e[0].hypot(e[1]);
                let dir = c.edge_dir(i);
                row.push(EdgeGeom { a, e, len, unit: dir.unit(), dir });
                wrow.push((dir.normalized().radians(), c.corner_angle(i).radians()));
            }
            edges.push(row);
            wedge.push(wrow);
        }
        Flow { surface, vertices, edges, wedge }
    }

    pub fn surface(&self) -> &'a Surface {
        self.surface
    }

    pub fn vertices(&self) -> &VertexMap {
        &self.vertices
    }

    /// Whether direction `theta` (radians) points into the wedge at corner `k`.
    fn in_wedge(&self, cell: usize, k: usize, theta: f64) -> bool {
        let (out, width) = self.wedge[cell][k];
        let rel = (theta - out).rem_euclid(2.0 * PI);
        rel <= width + 1e-12 || rel >= 2.0 * PI - 1e-12
    }

    /// Moves the state to the next event.
    pub fn advance(&self, s: &mut TangentState, max_length: f64) -> Result<TraceEvent, FlowError> {
        let edges = &self.edges[s.cell];
        let p = s.point;
        let d = s.dir;
        let mut best: Option<(f64, usize, f64)> = None;
        for (i, g) in edges.iter().enumerate() {
            let den = cross(d, g.e);
            if cross(g.e, d) >= 0.0 {
                continue;
            }
            let ap = [g.a[0] - p[0], g.a[1] - p[1]];
            let t = cross(ap, g.e) / den;
            let u = cross(ap, d) / den;
            if t > 1e-12 && u >= -1e-9 && u <= 1.0 + 1e-9 && best.map_or(true, |b| t < b.0) {
                best = Some((t, i, u));
            }
        }
        let Some((t, i, u)) = best else {
            return Err(FlowError::EscapedCell { cell: s.cell });
        };
        let remaining = max_length - s.time;
        if t > remaining {
            s.point = [p[0] + remaining * d[0], p[1] + remaining * d[1]];
            s.time = max_length;
            return Ok(TraceEvent { kind: EventKind::Timeout, hit: None, state: *s });
        }
        let g = &edges[i];
        let u = u.clamp(0.0, 1.0);
        let along = u * g.len;
        let n = self.surface.cell(s.cell).len();
        let corner = if along < EPS_SING {
            Some(i)
        } else if g.len - along < EPS_SING {
            Some((i + 1) % n)
        } else {
            None
        };
        s.time += t;
        let here = EdgeRef::new(s.cell, i);
        if let Some(k) = corner {
            s.point = self.surface.cell(s.cell).vertex(k).f();
            return self.pass_vertex(s, k, (here, along));
        }
        s.point = [g.a[0] + u * g.e[0], g.a[1] + u * g.e[1]];
        match self.surface.side(here) {
            Side::Boundary { .. } => {
                s.reflect(g.dir, g.unit);
                Ok(TraceEvent { kind: EventKind::Reflection { edge: here }, hit: Some((here, along)), state: *s })
            }
            Side::Glued { gluing, .. } => {
                let (to, map, shift) = self.surface.transport(here).unwrap();
                s.point = map.apply_f(s.point);
                s.apply_linear(&map.linear);
                s.cell = to.cell;
                s.displacement += shift;
                Ok(TraceEvent {
                    kind: EventKind::Crossing { gluing, exit: here, shift },
                    hit: Some((here, along)),
                    state: *s,
                })
            }
            Side::Cut => Ok(TraceEvent { kind: EventKind::WindowExit { edge: here }, hit: Some((here, along)), state: *s }),
        }
    }

    /// Continues a ray through the corner `k` of the current cell by circling
    /// the vertex until the direction lies in some corner's wedge.
    fn pass_vertex(&self, s: &mut TangentState, k: usize, hit: (EdgeRef, f64)) -> Result<TraceEvent, FlowError> {
        let vertex = self.vertices.class_of(s.cell, k);
        let class = &self.vertices.classes[vertex];
        if class.kind.is_singular() {
            return Ok(TraceEvent { kind: EventKind::SingularHit { vertex }, hit: Some(hit), state: *s });
        }
        let limit = 2 * class.corners.len() + 4;
        let mut crossed = Vec::new();
        let mut reflected = None;
        let mut shift = 0;
        let mut walk = Walk::Ccw;
        let (mut c, mut k) = (s.cell, k);
        for _ in 0..limit {
            if self.in_wedge(c, k, s.theta()) {
                s.cell = c;
                s.point = self.surface.cell(c).vertex(k).f();
                s.displacement += shift;
                return Ok(TraceEvent {
                    kind: EventKind::Vertex { vertex, crossed, reflected, shift },
                    hit: Some(hit),
                    state: *s,
                });
            }
            let n = self.surface.cell(c).len();
            let e = match walk {
                Walk::Ccw => EdgeRef::new(c, (k + n - 1) % n),
                Walk::Cw => EdgeRef::new(c, k),
            };
            match self.surface.side(e) {
                Side::Glued { gluing, is_a } => {
                    let (to, map, sh) = self.surface.transport(e).unwrap();
                    s.apply_linear(&map.linear);
                    shift += sh;
                    crossed.push((gluing, is_a));
                    let m = self.surface.cell(to.cell).len();
                    k = match walk {
                        Walk::Ccw => to.edge,
                        Walk::Cw => (to.edge + 1) % m,
                    };
                    c = to.cell;
                }
                Side::Boundary { .. } => {
                    if reflected.is_some() {
                        break;
                    }
                    let g = &self.edges[e.cell][e.edge];
                    s.reflect(g.dir, g.unit);
                    reflected = Some(e);
                    walk = match walk {
                        Walk::Ccw => Walk::Cw,
                        Walk::Cw => Walk::Ccw,
                    };
                }
                Side::Cut => {
                    return Ok(TraceEvent { kind: EventKind::WindowExit { edge: e }, hit: Some(hit), state: *s });
                }
            }
        }
        Err(FlowError::VertexResolution { vertex })
    }

    /// Iterates `advance` until the budget is spent or the orbit terminates.
    pub fn trace(&self, start: TangentState, budget: Budget) -> Result<Vec<TraceEvent>, FlowError> {
        let mut s = start;
        let mut out = Vec::new();
        while out.len() < budget.max_events {
            let ev = self.advance(&mut s, budget.max_length)?;
            let stop = matches!(
                ev.kind,
                EventKind::SingularHit { .. } | EventKind::WindowExit { .. } | EventKind::Timeout
            );
            out.push(ev);
            if stop {
                break;
            }
        }
        Ok(out)
    }

    /// A chart point on the surface: the first cell containing it.
    pub fn locate(&self, p: [f64; 2]) -> Option<usize> {
        self.surface.cells().iter().position(|c| c.contains(p, 0.0))
    }
}
