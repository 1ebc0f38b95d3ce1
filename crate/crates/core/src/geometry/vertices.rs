use std::collections::BTreeMap;

use num_traits::CheckedAdd;

use crate::angle::Angle;

use super::surface::UnionFind;
use super::{EdgeRef, Side, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    RegularInterior,
    RegularBoundary,
    ConePoint,
    WedgePoint,
}

impl VertexKind {
    pub fn is_singular(self) -> bool {
        matches!(self, VertexKind::ConePoint | VertexKind::WedgePoint)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexClass {
    pub kind: VertexKind,
    pub total_angle: Angle,
    /// Cell corners `(cell, vertex index)` identified at this vertex.
    pub corners: Vec<(usize, usize)>,
    /// The vertex touches a window cut of a lazy surface; its angle is partial.
    pub truncated: bool,
}

/// Surface vertices and the corner → vertex lookup.
#[derive(Clone, Debug)]
pub struct VertexMap {
    pub classes: Vec<VertexClass>,
    corner_to_class: Vec<Vec<usize>>,
}

impl VertexMap {
    /// Corner indices wrap around the cell.
    pub fn class_of(&self, cell: usize, corner: usize) -> usize {
        let row = &self.corner_to_class[cell];
        row[corner % row.len()]
    }

    pub fn vertex(&self, cell: usize, corner: usize) -> &VertexClass {
        &self.classes[self.class_of(cell, corner)]
    }

    pub fn is_singular(&self, cell: usize, corner: usize) -> bool {
        self.vertex(cell, corner).kind.is_singular()
    }

    pub fn singular(&self) -> impl Iterator<Item = &VertexClass> {
        self.classes.iter().filter(|c| c.kind.is_singular())
    }
}

/// Equality of total angles as real numbers, not modulo 2π.
fn angle_eq(a: Angle, b: Angle) -> bool {
    match (a, b) {
        (Angle::Exact(x), Angle::Exact(y)) => x == y,
        _ => (a.radians() - b.radians()).abs() < 1e-9,
    }
}

/// Exact sum of corner angles without reduction mod 2π.
fn sum_angles(angles: impl Iterator<Item = Angle>) -> Angle {
    let mut exact = Some(crate::real::Rational::from_integer(0));
    let mut rad = 0.0;
    for a in angles {
        rad += a.radians();
        exact = match (exact, a) {
            (Some(s), Angle::Exact(q)) => s.checked_add(&q),
            _ => None,
        };
    }
    match exact {
        Some(q) => Angle::Exact(q),
        None => Angle::Inexact(rad),
    }
}

/// Groups cell corners into surface vertices and classifies them.
///
/// Total angles are not reduced mod 2π: a cone point of angle 6π reports `6`.
pub fn vertex_angles(s: &Surface) -> VertexMap {
    let offsets: Vec<usize> = s
        .cells()
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.len();
            Some(o)
        })
        .collect();
    let total: usize = s.cells().iter().map(|c| c.len()).sum();
    let idx = |cell: usize, k: usize| offsets[cell] + k % s.cell(cell).len();
    let mut uf = UnionFind::new(total);
    for g in s.gluings() {
        uf.union(idx(g.a.cell, g.a.edge), idx(g.b.cell, g.b.edge + 1));
        uf.union(idx(g.a.cell, g.a.edge + 1), idx(g.b.cell, g.b.edge));
    }
    let mut boundary = vec![false; total];
    let mut cut = vec![false; total];
    for (ci, c) in s.cells().iter().enumerate() {
        for e in 0..c.len() {
            match s.side(EdgeRef::new(ci, e)) {
                Side::Boundary { .. } => {
                    boundary[idx(ci, e)] = true;
                    boundary[idx(ci, e + 1)] = true;
                }
                Side::Cut => {
                    cut[idx(ci, e)] = true;
                    cut[idx(ci, e + 1)] = true;
                }
                Side::Glued { .. } => {}
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in s.cells().iter().enumerate() {
        for k in 0..c.len() {
            groups.entry(uf.find(idx(ci, k))).or_default().push((ci, k));
        }
    }
    let mut corner_to_class: Vec<Vec<usize>> =
        s.cells().iter().map(|c| vec![0; c.len()]).collect();
    let mut classes = Vec::with_capacity(groups.len());
    for corners in groups.into_values() {
        let on_boundary = corners.iter().any(|&(c, k)| boundary[idx(c, k)]);
        let truncated = corners.iter().any(|&(c, k)| cut[idx(c, k)]);
        let total_angle = sum_angles(corners.iter().map(|&(c, k)| s.cell(c).corner_angle(k)));
        let kind = if truncated {
            if on_boundary {
                VertexKind::RegularBoundary
            } else {
                VertexKind::RegularInterior
            }
        } else if on_boundary {
            if angle_eq(total_angle, Angle::pi()) {
                VertexKind::RegularBoundary
            } else {
                VertexKind::WedgePoint
            }
        } else if angle_eq(total_angle, Angle::pi_frac(2, 1)) {
            VertexKind::RegularInterior
        } else {
            VertexKind::ConePoint
        };
        for &(c, k) in &corners {
            corner_to_class[c][k] = classes.len();
        }
        classes.push(VertexClass {
            kind,
            total_angle,
            corners,
            truncated,
        });
    }
    VertexMap {
        classes,
        corner_to_class,
    }
}

/// Finiteness and regularity conditions over a window.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ConditionReport {
    /// Number of maximal boundary sides meeting the window.
    pub sides_in_window: usize,
    pub condition_a: bool,
    pub min_side_length: Option<f64>,
    pub condition_b_flag: bool,
    /// Largest number of cell corners identified at one surface vertex.
    pub max_preimages: usize,
    pub condition_c: bool,
}

/// Counts maximal sides of `∂S` (boundary edges merged through regular
/// boundary vertices of angle π) meeting `window = [xmin, ymin, xmax, ymax]`.
pub fn validate_conditions(s: &Surface, window: [f64; 4], threshold: f64) -> ConditionReport {
    let vm = vertex_angles(s);
    let meets = |e: EdgeRef| {
        let (p, q) = s.cell(e.cell).edge(e.edge);
        let (p, q) = (p.f(), q.f());
        p[0].max(q[0]) >= window[0]
            && p[0].min(q[0]) <= window[2]
            && p[1].max(q[1]) >= window[1]
            && p[1].min(q[1]) <= window[3]
    };
    // boundary edge following e through its end vertex
    let next_boundary = |e: EdgeRef| -> Option<EdgeRef> {
        let v = vm.class_of(e.cell, e.edge + 1);
        s.boundary()
            .iter()
            .copied()
            .find(|f| vm.class_of(f.cell, f.edge) == v && *f != e)
    };
    let n = s.boundary().len();
    let pos = |e: EdgeRef| s.boundary().iter().position(|&f| f == e);
    let mut uf = UnionFind::new(n);
    for (i, &e) in s.boundary().iter().enumerate() {
        let v = vm.vertex(e.cell, e.edge + 1);
        if v.kind == VertexKind::RegularBoundary && !v.truncated {
            if let Some(j) = next_boundary(e).and_then(pos) {
                uf.union(i, j);
            }
        }
    }
    let mut side_len: BTreeMap<usize, f64> = BTreeMap::new();
    let mut side_meets: BTreeMap<usize, bool> = BTreeMap::new();
    for (i, &e) in s.boundary().iter().enumerate() {
        let r = uf.find(i);
        *side_len.entry(r).or_default() += s.cell(e.cell).edge_length(e.edge);
        *side_meets.entry(r).or_default() |= meets(e);
    }
    let sides_in_window = side_meets.values().filter(|&&m| m).count();
    let min_side_length = side_len
        .iter()
        .filter(|(r, _)| side_meets[r])
        .map(|(_, &l)| l)
        .fold(None, |m: Option<f64>, l| Some(m.map_or(l, |m| m.min(l))));
    let max_preimages = vm.classes.iter().map(|c| c.corners.len()).max().unwrap_or(0);
    ConditionReport {
        sides_in_window,
        condition_a: true,
        min_side_length,
        condition_b_flag: min_side_length.map_or(false, |l| l < threshold),
        max_preimages,
        condition_c: max_preimages < usize::MAX,
    }
}
