use std::collections::HashSet;
use std::fmt;

use crate::angle::Angle;
use crate::isometry::{Isometry, Linear};
use crate::real::EPS_GEOM;

use super::{Cell, GeometryError};

/// An edge of a cell: `(cell, edge index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct EdgeRef {
    pub cell: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(cell: usize, edge: usize) -> Self {
        EdgeRef { cell, edge }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.cell, self.edge)
    }
}

/// Identification of edge `a` with edge `b`.
///
/// `map` is written in chart coordinates: it takes the start of `a` to the end
/// of `b` and the end of `a` to the start of `b`, so that the two cells lie on
/// opposite sides. Crossing from `a` to `b` adds `shift` to the ℤ-displacement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gluing {
    pub a: EdgeRef,
    pub b: EdgeRef,
    pub map: Isometry,
    pub shift: i64,
}

impl Gluing {
    /// The orientation-preserving gluing determined by the two edges.
    pub fn between(cells: &[Cell], a: EdgeRef, b: EdgeRef, shift: i64) -> Gluing {
        let ca = &cells[a.cell];
        let cb = &cells[b.cell];
        let rot = (cb.edge_dir(b.edge) + Angle::pi()) - ca.edge_dir(a.edge);
        let linear = Linear::rotation(rot);
        let (sa, _) = ca.edge(a.edge);
        let (_, eb) = cb.edge(b.edge);
        let map = Isometry::new(linear, eb - linear.apply_pt(sa));
        Gluing { a, b, map, shift }
    }
}

/// Which side of a gluing an edge is on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Glued { gluing: usize, is_a: bool },
    Boundary { index: usize },
    /// Cut by a finite window of a lazy surface.
    Cut,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Surface {
    cells: Vec<Cell>,
    gluings: Vec<Gluing>,
    sides: Vec<Vec<Side>>,
    boundary: Vec<EdgeRef>,
}

impl Surface {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn boundary(&self) -> &[EdgeRef] {
        &self.boundary
    }

    pub fn side(&self, e: EdgeRef) -> Side {
        self.sides[e.cell][e.edge]
    }

    pub fn is_boundary(&self, e: EdgeRef) -> bool {
        matches!(self.side(e), Side::Boundary { .. })
    }

    /// Partner edge, transport map and shift for crossing out of `e`.
    pub fn transport(&self, e: EdgeRef) -> Option<(EdgeRef, Isometry, i64)> {
        match self.side(e) {
            Side::Glued { gluing, is_a } => {
                let g = &self.gluings[gluing];
                Some(if is_a {
                    (g.b, g.map, g.shift)
                } else {
                    (g.a, g.map.inverse(), -g.shift)
                })
            }
            _ => None,
        }
    }

    pub fn has_shifts(&self) -> bool {
        self.gluings.iter().any(|g| g.shift != 0)
    }

    pub fn total_area(&self) -> f64 {
        self.cells.iter().map(Cell::signed_area).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.cells
            .iter()
            .all(|c| c.edge_dirs().iter().all(Angle::is_exact))
    }

    /// Same complex with every shift forgotten.
    pub fn forget_shifts(&self) -> Surface {
        let mut s = self.clone();
        for g in &mut s.gluings {
            g.shift = 0;
        }
        s
    }

    /// Bounding box `[xmin, ymin, xmax, ymax]` over all chart coordinates.
    pub fn bbox(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for c in &self.cells {
            for p in c.vertices() {
                let p = p.f();
                b[0] = b[0].min(p[0]);
                b[1] = b[1].min(p[1]);
                b[2] = b[2].max(p[0]);
                b[3] = b[3].max(p[1]);
            }
        }
        b
    }

    pub(crate) fn from_parts_unchecked(
        cells: Vec<Cell>,
        gluings: Vec<Gluing>,
        cut: &HashSet<EdgeRef>,
    ) -> Surface {
        let mut sides: Vec<Vec<Side>> = cells
            .iter()
            .map(|c| vec![Side::Boundary { index: 0 }; c.len()])
            .collect();
        for (i, g) in gluings.iter().enumerate() {
            sides[g.a.cell][g.a.edge] = Side::Glued { gluing: i, is_a: true };
            sides[g.b.cell][g.b.edge] = Side::Glued { gluing: i, is_a: false };
        }
        let mut boundary = Vec::new();
        for (ci, row) in sides.iter_mut().enumerate() {
            for (ei, s) in row.iter_mut().enumerate() {
                if let Side::Boundary { .. } = s {
                    let e = EdgeRef::new(ci, ei);
                    if cut.contains(&e) {
                        *s = Side::Cut;
                    } else {
                        *s = Side::Boundary { index: boundary.len() };
                        boundary.push(e);
                    }
                }
            }
        }
        Surface {
            cells,
            gluings,
            sides,
            boundary,
        }
    }
}

fn close(p: [f64; 2], q: [f64; 2], tol: f64) -> bool {
    (p[0] - q[0]).abs() <= tol && (p[1] - q[1]).abs() <= tol
}

fn check_gluing(cells: &[Cell], i: usize, g: &Gluing) -> Result<(), GeometryError> {
    let ok_ref = |e: EdgeRef| e.cell < cells.len() && e.edge < cells[e.cell].len();
    if !ok_ref(g.a) || !ok_ref(g.b) || g.a == g.b {
        return Err(GeometryError::BadReference { gluing: i });
    }
    let ca = &cells[g.a.cell];
    let cb = &cells[g.b.cell];
    let same_len = match (ca.edge_length_sq_exact(g.a.edge), cb.edge_length_sq_exact(g.b.edge)) {
        (Some(x), Some(y)) => x == y,
        _ => (ca.edge_length(g.a.edge) - cb.edge_length(g.b.edge)).abs() <= EPS_GEOM,
    };
    if !same_len {
        return Err(GeometryError::LengthMismatch {
            gluing: i,
            len_a: ca.edge_length(g.a.edge),
            len_b: cb.edge_length(g.b.edge),
        });
    }
    if g.map.linear.reflect {
        return Err(GeometryError::BadOrientation { gluing: i });
    }
    let (sa, ea) = ca.edge(g.a.edge);
    let (sb, eb) = cb.edge(g.b.edge);
    let (ms, me) = (g.map.apply_f(sa.f()), g.map.apply_f(ea.f()));
    let tol = 1e-7;
    if close(ms, eb.f(), tol) && close(me, sb.f(), tol) {
        return Ok(());
    }
    if close(ms, sb.f(), tol) && close(me, eb.f(), tol) {
        return Err(GeometryError::BadOrientation { gluing: i });
    }
    Err(GeometryError::EndpointMismatch { gluing: i })
}

/// Validates cells and gluings and assembles the surface.
pub fn build_surface(cells: Vec<Cell>, gluings: Vec<Gluing>) -> Result<Surface, GeometryError> {
    build_with_cut(cells, gluings, &HashSet::new())
}

/// As [`build_surface`], with the edges in `cut` marked as window cuts
/// instead of boundary.
pub fn build_with_cut(
    cells: Vec<Cell>,
    gluings: Vec<Gluing>,
    cut: &HashSet<EdgeRef>,
) -> Result<Surface, GeometryError> {
    if cells.is_empty() {
        return Err(GeometryError::Disconnected { components: 0 });
    }
    for (i, c) in cells.iter().enumerate() {
        c.validate(i)?;
    }
    let mut used = HashSet::new();
    for (i, g) in gluings.iter().enumerate() {
        check_gluing(&cells, i, g)?;
        for e in [g.a, g.b] {
            if !used.insert(e) {
                return Err(GeometryError::DuplicateGluing { cell: e.cell, edge: e.edge });
            }
        }
    }
    let mut uf = UnionFind::new(cells.len());
    for g in &gluings {
        uf.union(g.a.cell, g.b.cell);
    }
    let components = uf.count();
    if components != 1 {
        return Err(GeometryError::Disconnected { components });
    }
    Ok(Surface::from_parts_unchecked(cells, gluings, cut))
}

/// The `n`-fold cyclic cover obtained by unrolling the shift labels mod `n`.
/// Copy `k` of cell `c` is cell `k·|cells| + c`; the result carries no shifts.
pub fn cyclic_cover(s: &Surface, n: usize) -> Result<Surface, GeometryError> {
    assert!(n >= 1);
    let m = s.cells.len();
    let mut cells = Vec::with_capacity(m * n);
    for _ in 0..n {
        cells.extend(s.cells.iter().cloned());
    }
    let mut gluings = Vec::with_capacity(s.gluings.len() * n);
    for k in 0..n {
        for g in &s.gluings {
            let kb = (k as i64 + g.shift).rem_euclid(n as i64) as usize;
            gluings.push(Gluing {
                a: EdgeRef::new(k * m + g.a.cell, g.a.edge),
                b: EdgeRef::new(kb * m + g.b.cell, g.b.edge),
                map: g.map,
                shift: 0,
            });
        }
    }
    build_surface(cells, gluings)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
