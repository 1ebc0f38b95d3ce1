use std::collections::HashSet;

use crate::isometry::{Isometry, Linear};
use crate::real::Pt;

use super::surface::build_with_cut;
use super::{Cell, EdgeRef, GeometryError, Gluing, Side, Surface};

fn mirror_pt(p: Pt) -> Pt {
    Pt::new(p.x, -p.y)
}

/// Edge index of edge `i` after mirroring and reversing an `n`-gon.
pub(crate) fn mirrored_edge(i: usize, n: usize) -> usize {
    (2 * n - 2 - i) % n
}

/// Two copies of `s`, the second mirrored, glued along every boundary edge
/// except those in `keep_open`. Copy 2 of cell `c` is cell `|cells| + c`.
pub fn double_surface(s: &Surface, keep_open: &[EdgeRef]) -> Result<Surface, GeometryError> {
    if s.boundary().is_empty() {
        return Err(GeometryError::NoBoundary);
    }
    let open: HashSet<EdgeRef> = keep_open.iter().copied().collect();
    for e in &open {
        if e.cell >= s.cells().len()
            || e.edge >= s.cell(e.cell).len()
            || !s.is_boundary(*e)
        {
            return Err(GeometryError::NotBoundary { cell: e.cell, edge: e.edge });
        }
    }
    if s.boundary().iter().all(|e| open.contains(e)) {
        return Err(GeometryError::EmptyGlueSet);
    }
    let m = s.cells().len();
    let mut cells: Vec<Cell> = s.cells().to_vec();
    for c in s.cells() {
        cells.push(c.map_vertices(mirror_pt, |d| -d).reversed());
    }
    let flip = Linear::reflection_about(crate::angle::Angle::zero());
    let conj = |g: &Isometry| {
        let m = Isometry::new(flip, Pt::zero());
        m.compose(g).compose(&m)
    };
    let copy2 = |e: EdgeRef| EdgeRef::new(m + e.cell, mirrored_edge(e.edge, s.cell(e.cell).len()));
    let mut gluings: Vec<Gluing> = s.gluings().to_vec();
    for g in s.gluings() {
        gluings.push(Gluing {
            a: copy2(g.a),
            b: copy2(g.b),
            map: conj(&g.map),
            shift: g.shift,
        });
    }
    for &e in s.boundary() {
        if !open.contains(&e) {
            gluings.push(Gluing::between(&cells, e, copy2(e), 0));
        }
    }
    let mut cut = HashSet::new();
    for (ci, c) in s.cells().iter().enumerate() {
        for k in 0..c.len() {
            let e = EdgeRef::new(ci, k);
            if s.side(e) == Side::Cut {
                cut.insert(e);
                cut.insert(copy2(e));
            }
        }
    }
    build_with_cut(cells, gluings, &cut)
}

/// `V − E + F` of the cell complex.
pub fn euler_characteristic(s: &Surface) -> i64 {
    let v = super::vertex_angles(s).classes.len() as i64;
    let e = (s.gluings().len() + s.boundary().len()) as i64;
    v - e + s.cells().len() as i64
}
