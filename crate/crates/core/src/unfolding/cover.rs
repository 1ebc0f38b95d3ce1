use std::collections::HashSet;

use crate::angle::Angle;
use crate::geometry::{vertex_angles, EdgeRef, Gluing, Side, Surface, VertexKind};
use crate::geometry::{build_surface_with_cut, mirrored_edge};
use crate::holonomy::{developing_frames, rotational_holonomy, RotationalGroup, DEFAULT_CAP};
use crate::isometry::Linear;
use crate::real::Rational;

use super::UnfoldError;

#[derive(Clone, Debug)]
pub struct TranslationCover {
    pub total: Surface,
    /// Group elements, in the order of the rotational holonomy.
    pub group: Vec<Linear>,
    /// Cell `h·|base cells| + c` of `total` is sheet `h` over base cell `c`.
    pub sheet_map: Vec<(usize, usize)>,
    pub degree: usize,
}

/// Vertex index of corner `k` after mapping a cell by `l`.
fn corner_map(k: usize, n: usize, reflect: bool) -> usize {
    if reflect {
        (n - 1 + n - k) % n
    } else {
        k
    }
}

/// One copy of every cell per element of the rotational holonomy, each
/// developed by that element, with all boundary reflections and interior
/// gluings turned into translations. Shift labels are kept on every sheet.
pub fn canonical_translation_cover(base: &Surface) -> Result<TranslationCover, UnfoldError> {
    let group = match rotational_holonomy(base, DEFAULT_CAP) {
        Ok(RotationalGroup::Finite { elements, .. }) => elements,
        _ => return Err(UnfoldError::IrrationalSurface),
    };
    let frames = developing_frames(base);
    let m = base.cells().len();
    let index = |l: &Linear| group.iter().position(|h| h == l).expect("closed group");
    let edge_of = |h: usize, e: EdgeRef| {
        let t = group[h].compose(&frames[e.cell]);
        let n = base.cell(e.cell).len();
        let edge = if t.reflect { mirrored_edge(e.edge, n) } else { e.edge };
        EdgeRef::new(h * m + e.cell, edge)
    };

    let mut cells = Vec::with_capacity(group.len() * m);
    let mut sheet_map = Vec::with_capacity(group.len() * m);
    for (hi, h) in group.iter().enumerate() {
        for (ci, c) in base.cells().iter().enumerate() {
            let t = h.compose(&frames[ci]);
            let mapped = c.map_vertices(|p| t.apply_pt(p), |d| t.apply_dir(d));
            cells.push(if t.reflect { mapped.reversed() } else { mapped });
            sheet_map.push((ci, hi));
        }
    }

    let mut gluings = Vec::new();
    for g in base.gluings() {
        let gamma = frames[g.a.cell].compose(&g.map.linear.inverse()).compose(&frames[g.b.cell].inverse());
        for (hi, h) in group.iter().enumerate() {
            let hj = index(&h.compose(&gamma));
            gluings.push(Gluing::between(&cells, edge_of(hi, g.a), edge_of(hj, g.b), g.shift));
        }
    }
    for &e in base.boundary() {
        let dc = frames[e.cell];
        let r = dc
            .compose(&Linear::reflection_about(base.cell(e.cell).edge_dir(e.edge)))
            .compose(&dc.inverse());
        for (hi, h) in group.iter().enumerate() {
            let hj = index(&h.compose(&r));
            if hi < hj {
                gluings.push(Gluing::between(&cells, edge_of(hi, e), edge_of(hj, e), 0));
            }
        }
    }
    let mut cut = HashSet::new();
    for (ci, c) in base.cells().iter().enumerate() {
        for k in 0..c.len() {
            let e = EdgeRef::new(ci, k);
            if base.side(e) == Side::Cut {
                for hi in 0..group.len() {
                    cut.insert(edge_of(hi, e));
                }
            }
        }
    }
    let total = build_surface_with_cut(cells, gluings, &cut)?;
    check_branching(base, &total, &group, &frames)?;
    Ok(TranslationCover { total, degree: group.len(), group, sheet_map })
}

/// Each cover vertex angle is a whole multiple of its base angle, doubled
/// for boundary vertices.
fn check_branching(base: &Surface, total: &Surface, group: &[Linear], frames: &[Linear]) -> Result<(), UnfoldError> {
    let bv = vertex_angles(base);
    let tv = vertex_angles(total);
    let m = base.cells().len();
    for (vi, class) in tv.classes.iter().enumerate() {
        if class.truncated {
            continue;
        }
        let (cell, k) = class.corners[0];
        let (c, h) = (cell % m, cell / m);
        let t = group[h].compose(&frames[c]);
        let n = base.cell(c).len();
        let b = bv.vertex(c, corner_map(k, n, t.reflect));
        if b.truncated {
            continue;
        }
        let unit = match b.kind {
            VertexKind::RegularBoundary | VertexKind::WedgePoint => doubled(b.total_angle),
            _ => b.total_angle,
        };
        if !is_multiple(class.total_angle, unit) {
            return Err(UnfoldError::Branching {
                vertex: vi,
                angle: class.total_angle.to_string(),
                base: unit.to_string(),
            });
        }
    }
    Ok(())
}

/// `2a` without reduction modulo 2π.
fn doubled(a: Angle) -> Angle {
    match a {
        Angle::Exact(q) => Angle::Exact(q * 2),
        Angle::Inexact(r) => Angle::Inexact(2.0 * r),
    }
}

fn is_multiple(a: Angle, unit: Angle) -> bool {
    match (a.pi_units(), unit.pi_units()) {
        (Some(x), Some(u)) => {
            let r: Rational = x / u;
            r.is_integer() && r >= Rational::from_integer(1)
        }
        _ => {
            let r = a.radians() / unit.radians();
            r >= 1.0 - 1e-9 && (r - r.round()).abs() < 1e-9
        }
    }
}
