//! Vertical trapezoid decomposition of a rectangle minus polygonal obstacles
//! and segment barriers, with optional wraparound gluings.
//!
//! Every obstacle vertex and barrier endpoint puts a vertical cut line through
//! the domain. Between consecutive cut lines, each free interval between two
//! separators (domain wall, obstacle edge, barrier) becomes a trapezoid. The
//! vertical sides are subdivided at all breakpoints on their line and glued
//! piece by piece to the neighbouring slab unless a vertical barrier or an
//! obstacle side lies there.

use std::cmp::Ordering;

use crate::angle::Angle;
use crate::real::{Pt, Real};

use super::{build_surface, Cell, EdgeRef, GeometryError, Gluing, Surface};

const TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Obstacle {
    /// Counterclockwise vertices.
    pub vertices: Vec<Pt>,
    /// Optional exact edge directions, one per edge.
    pub dirs: Option<Vec<Angle>>,
}

#[derive(Clone, Copy, Debug)]
pub struct Barrier {
    pub p: Pt,
    pub q: Pt,
    /// Exact direction of `q - p` when known.
    pub dir: Option<Angle>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wrap {
    Walls,
    Periodic { shift: i64 },
}

#[derive(Clone, Debug)]
pub struct SlabSpec {
    pub x0: Real,
    pub x1: Real,
    pub y0: Real,
    pub y1: Real,
    pub obstacles: Vec<Obstacle>,
    pub barriers: Vec<Barrier>,
    /// Identify `x = x0` with `x = x1`; crossing rightwards adds `shift`.
    pub wrap_x: Wrap,
    /// Identify `y = y0` with `y = y1`; crossing upwards adds `shift`.
    pub wrap_y: Wrap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SepKind {
    Bottom,
    Top,
    Obstacle,
    Barrier,
}

#[derive(Clone, Copy, Debug)]
struct Sep {
    kind: SepKind,
    /// Left and right endpoints.
    p: Pt,
    q: Pt,
    /// Direction of `q - p`.
    dir: Angle,
}

impl Sep {
    fn y_at(&self, x: Real) -> Real {
        if same(x, self.p.x) {
            self.p.y
        } else if same(x, self.q.x) {
            self.q.y
        } else {
            self.p.y + (x - self.p.x) * (self.q.y - self.p.y) / (self.q.x - self.p.x)
        }
    }

    fn spans(&self, xl: Real, xr: Real) -> bool {
        self.p.x.f() <= xl.f() + TOL && self.q.x.f() >= xr.f() - TOL
    }
}

fn same(a: Real, b: Real) -> bool {
    match (a.exact(), b.exact()) {
        (Some(x), Some(y)) => x == y,
        _ => (a.f() - b.f()).abs() <= TOL,
    }
}

fn cmp(a: &Real, b: &Real) -> Ordering {
    if same(*a, *b) {
        Ordering::Equal
    } else {
        a.f().total_cmp(&b.f())
    }
}

fn sorted_unique(mut v: Vec<Real>) -> Vec<Real> {
    // exact representatives first so dedup keeps them
    v.sort_by(|a, b| cmp(a, b).then(b.is_exact().cmp(&a.is_exact())));
    v.dedup_by(|a, b| same(*a, *b));
    v
}

fn direction_of(p: Pt, q: Pt) -> Angle {
    Cell::new(vec![p, q, p]).edge_dir(0)
}

struct Trap {
    bot: Sep,
    top: Sep,
    left: Vec<(Real, Real)>,
    right: Vec<(Real, Real)>,
}

impl Trap {
    fn side(&self, x: Real) -> Option<(Real, Real)> {
        let (lo, hi) = (self.bot.y_at(x), self.top.y_at(x));
        (hi.f() - lo.f() > TOL).then_some((lo, hi))
    }
}

fn split(range: Option<(Real, Real)>, breaks: &[Real]) -> Vec<(Real, Real)> {
    let Some((lo, hi)) = range else { return vec![] };
    let mut pts = vec![lo];
    for &b in breaks {
        if b.f() > lo.f() + TOL && b.f() < hi.f() - TOL {
            pts.push(b);
        }
    }
    pts.push(hi);
    pts.windows(2).map(|w| (w[0], w[1])).collect()
}

fn check_inside(spec: &SlabSpec, p: Pt) -> Result<(), GeometryError> {
    let [x, y] = p.f();
    let inside = x > spec.x0.f() + TOL
        && x < spec.x1.f() - TOL
        && y > spec.y0.f() + TOL
        && y < spec.y1.f() - TOL;
    if inside {
        Ok(())
    } else {
        Err(GeometryError::ParamOutOfRange(format!(
            "feature point ({x}, {y}) is not strictly inside the domain"
        )))
    }
}

fn separators(spec: &SlabSpec) -> Result<(Vec<Sep>, Vec<(Real, Real, Real)>), GeometryError> {
    let zero = Angle::zero();
    let mut seps = vec![
        Sep {
            kind: SepKind::Bottom,
            p: Pt::new(spec.x0, spec.y0),
            q: Pt::new(spec.x1, spec.y0),
            dir: zero,
        },
        Sep {
            kind: SepKind::Top,
            p: Pt::new(spec.x0, spec.y1),
            q: Pt::new(spec.x1, spec.y1),
            dir: zero,
        },
    ];
    let mut vertical = Vec::new();
    for o in &spec.obstacles {
        let n = o.vertices.len();
        if n < 3 {
            return Err(GeometryError::ParamOutOfRange("obstacle with < 3 vertices".into()));
        }
        for i in 0..n {
            let (a, b) = (o.vertices[i], o.vertices[(i + 1) % n]);
            check_inside(spec, a)?;
            let d = o
                .dirs
                .as_ref()
                .map_or_else(|| direction_of(a, b), |ds| ds[i].normalized());
            match cmp(&a.x, &b.x) {
                Ordering::Less => seps.push(Sep { kind: SepKind::Obstacle, p: a, q: b, dir: d }),
                Ordering::Greater => seps.push(Sep {
                    kind: SepKind::Obstacle,
                    p: b,
                    q: a,
                    dir: d + Angle::pi(),
                }),
                Ordering::Equal => {}
            }
        }
    }
    for br in &spec.barriers {
        check_inside(spec, br.p)?;
        check_inside(spec, br.q)?;
        if same(br.p.x, br.q.x) && same(br.p.y, br.q.y) {
            return Err(GeometryError::BarrierCollision);
        }
        let d = br.dir.unwrap_or_else(|| direction_of(br.p, br.q)).normalized();
        match cmp(&br.p.x, &br.q.x) {
            Ordering::Less => seps.push(Sep { kind: SepKind::Barrier, p: br.p, q: br.q, dir: d }),
            Ordering::Greater => seps.push(Sep {
                kind: SepKind::Barrier,
                p: br.q,
                q: br.p,
                dir: d + Angle::pi(),
            }),
            Ordering::Equal => {
                let (lo, hi) = if br.p.y.f() < br.q.y.f() { (br.p.y, br.q.y) } else { (br.q.y, br.p.y) };
                vertical.push((br.p.x, lo, hi));
            }
        }
    }
    Ok((seps, vertical))
}

/// Builds the decomposition. Cells are numbered slab by slab, bottom to top.
pub fn slab_surface(spec: &SlabSpec) -> Result<Surface, GeometryError> {
    if spec.x1.f() <= spec.x0.f() || spec.y1.f() <= spec.y0.f() {
        return Err(GeometryError::ParamOutOfRange("empty domain".into()));
    }
    let (seps, vertical) = separators(spec)?;
    let mut xs = vec![spec.x0, spec.x1];
    for s in &seps {
        xs.push(s.p.x);
        xs.push(s.q.x);
    }
    xs.extend(vertical.iter().map(|v| v.0));
    let xs = sorted_unique(xs);
    let nslab = xs.len() - 1;

    let mut slabs: Vec<Vec<Trap>> = Vec::with_capacity(nslab);
    for i in 0..nslab {
        let (xl, xr) = (xs[i], xs[i + 1]);
        let xm = (xl.f() + xr.f()) / 2.0;
        let mut active: Vec<Sep> = seps.iter().copied().filter(|s| s.spans(xl, xr)).collect();
        let ym = |s: &Sep| s.y_at(Real::from_f64(xm)).f();
        active.sort_by(|a, b| ym(a).total_cmp(&ym(b)));
        let mut traps = Vec::new();
        let mut inside = false;
        for w in active.windows(2) {
            if w[0].kind == SepKind::Obstacle {
                inside = !inside;
            }
            if !inside && ym(&w[1]) - ym(&w[0]) > TOL {
                traps.push(Trap { bot: w[0], top: w[1], left: vec![], right: vec![] });
            }
        }
        slabs.push(traps);
    }

    // subdivide vertical sides
    let wrap_x = matches!(spec.wrap_x, Wrap::Periodic { .. });
    for line in 0..=nslab {
        let x = xs[line];
        let mut breaks = Vec::new();
        let mut collect = |slab: usize, xx: Real| {
            for t in &slabs[slab] {
                if let Some((lo, hi)) = t.side(xx) {
                    breaks.push(lo);
                    breaks.push(hi);
                }
            }
        };
        if line > 0 {
            collect(line - 1, x);
        }
        if line < nslab {
            collect(line, x);
        }
        if wrap_x && line == 0 {
            collect(nslab - 1, xs[nslab]);
        }
        if wrap_x && line == nslab {
            collect(0, xs[0]);
        }
        for v in vertical.iter().filter(|v| same(v.0, x)) {
            breaks.push(v.1);
            breaks.push(v.2);
        }
        let breaks = sorted_unique(breaks);
        if line > 0 {
            for t in &mut slabs[line - 1] {
                t.right = split(t.side(x), &breaks);
            }
        }
        if line < nslab {
            for t in &mut slabs[line] {
                t.left = split(t.side(x), &breaks);
            }
        }
    }

    // cells
    let up = Angle::pi_frac(1, 2);
    let down = Angle::pi_frac(3, 2);
    let mut cells = Vec::new();
    let mut first_cell = Vec::with_capacity(nslab);
    for (i, traps) in slabs.iter().enumerate() {
        first_cell.push(cells.len());
        let (xl, xr) = (xs[i], xs[i + 1]);
        for t in traps {
            let mut v = vec![Pt::new(xl, t.bot.y_at(xl))];
            let mut d = vec![Some(t.bot.dir)];
            for &(lo, _) in &t.right {
                v.push(Pt::new(xr, lo));
                d.push(Some(up));
            }
            v.push(Pt::new(xr, t.top.y_at(xr)));
            d.push(Some(t.top.dir + Angle::pi()));
            for &(_, hi) in t.left.iter().rev() {
                v.push(Pt::new(xl, hi));
                d.push(Some(down));
            }
            cells.push(Cell::with_directions(v, d));
        }
    }
    let left_edge = |t: &Trap, k: usize| 2 + t.right.len() + (t.left.len() - 1 - k);
    let top_edge = |t: &Trap| 1 + t.right.len();

    let mut gluings = Vec::new();
    let blocked = |x: Real, lo: Real, hi: Real| {
        let m = (lo.f() + hi.f()) / 2.0;
        vertical
            .iter()
            .any(|v| same(v.0, x) && v.1.f() < m && m < v.2.f())
    };
    let glue_line = |ls: usize, rs: usize, x: Real, shift: i64, gl: &mut Vec<Gluing>| {
        for (ti, t) in slabs[ls].iter().enumerate() {
            for (k, &(lo, hi)) in t.right.iter().enumerate() {
                if blocked(x, lo, hi) {
                    continue;
                }
                let m = (lo.f() + hi.f()) / 2.0;
                for (ui, u) in slabs[rs].iter().enumerate() {
                    if let Some(j) = u.left.iter().position(|&(a, b)| a.f() < m && m < b.f()) {
                        let a = EdgeRef::new(first_cell[ls] + ti, 1 + k);
                        let b = EdgeRef::new(first_cell[rs] + ui, left_edge(u, j));
                        gl.push(Gluing::between(&cells, a, b, shift));
                    }
                }
            }
        }
    };
    for line in 1..nslab {
        glue_line(line - 1, line, xs[line], 0, &mut gluings);
    }
    if let Wrap::Periodic { shift } = spec.wrap_x {
        glue_line(nslab - 1, 0, xs[nslab], shift, &mut gluings);
    }
    if let Wrap::Periodic { shift } = spec.wrap_y {
        for (i, traps) in slabs.iter().enumerate() {
            let top = traps.iter().position(|t| t.top.kind == SepKind::Top);
            let bot = traps.iter().position(|t| t.bot.kind == SepKind::Bottom);
            if let (Some(ti), Some(bi)) = (top, bot) {
                let a = EdgeRef::new(first_cell[i] + ti, top_edge(&traps[ti]));
                let b = EdgeRef::new(first_cell[i] + bi, 0);
                gluings.push(Gluing::between(&cells, a, b, shift));
            }
        }
    }
    build_surface(cells, gluings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{vertex_angles, VertexKind};

    fn unit(wx: Wrap, wy: Wrap) -> SlabSpec {
        SlabSpec {
            x0: Real::zero(),
            x1: Real::one(),
            y0: Real::zero(),
            y1: Real::one(),
            obstacles: vec![],
            barriers: vec![],
            wrap_x: wx,
            wrap_y: wy,
        }
    }

    #[test]
    fn empty_torus_is_one_square() {
        let s = slab_surface(&unit(Wrap::Periodic { shift: 0 }, Wrap::Periodic { shift: 0 })).unwrap();
        assert_eq!(s.cells().len(), 1);
        assert!(s.boundary().is_empty());
    }

    #[test]
    fn band_with_square_obstacle() {
        let mut spec = unit(Wrap::Periodic { shift: 1 }, Wrap::Walls);
        spec.obstacles.push(Obstacle {
            vertices: vec![Pt::ratios((1, 4), (1, 4)), Pt::ratios((3, 4), (1, 4)), Pt::ratios((3, 4), (3, 4)), Pt::ratios((1, 4), (3, 4))],
            dirs: None,
        });
        let s = slab_surface(&spec).unwrap();
        assert_eq!(s.cells().len(), 4);
        // band walls: 3 bottom + 3 top edges, obstacle: 4 sides
        assert_eq!(s.boundary().len(), 10);
        let vm = vertex_angles(&s);
        let wedges: Vec<_> = vm.singular().collect();
        assert_eq!(wedges.len(), 4);
        for w in wedges {
            assert_eq!(w.total_angle.pi_units(), Angle::pi_frac(3, 2).pi_units());
        }
        assert!(s.is_exact());
    }

    #[test]
    fn slit_endpoints_are_single_wedges_of_angle_two_pi() {
        let mut spec = unit(Wrap::Periodic { shift: 0 }, Wrap::Periodic { shift: 0 });
        spec.barriers.push(Barrier { p: Pt::ratios((1, 4), (1, 3)), q: Pt::ratios((3, 4), (2, 3)), dir: None });
        let s = slab_surface(&spec).unwrap();
        let vm = vertex_angles(&s);
        let sing: Vec<_> = vm.singular().collect();
        assert_eq!(sing.len(), 2);
        for v in sing {
            assert_eq!(v.kind, VertexKind::WedgePoint);
            assert!((v.total_angle.radians() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn vertical_slit() {
        let mut spec = unit(Wrap::Periodic { shift: 1 }, Wrap::Walls);
        spec.barriers.push(Barrier { p: Pt::ratios((1, 2), (1, 4)), q: Pt::ratios((1, 2), (3, 4)), dir: None });
        let s = slab_surface(&spec).unwrap();
        assert_eq!(s.cells().len(), 2);
        let vm = vertex_angles(&s);
        let sing: Vec<_> = vm.singular().collect();
        assert_eq!(sing.len(), 2);
        for v in sing {
            assert_eq!(v.total_angle.pi_units(), Angle::pi_frac(2, 1).pi_units());
        }
    }

    #[test]
    fn obstacle_touching_wall_is_rejected() {
        let mut spec = unit(Wrap::Periodic { shift: 1 }, Wrap::Walls);
        spec.obstacles.push(Obstacle {
            vertices: vec![Pt::ratios((1, 4), (0, 1)), Pt::ratios((3, 4), (1, 4)), Pt::ratios((1, 4), (1, 2))],
            dirs: None,
        });
        assert!(matches!(slab_surface(&spec), Err(GeometryError::ParamOutOfRange(_))));
    }
}
