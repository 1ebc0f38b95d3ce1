use std::sync::Arc;

use crate::angle::Angle;
use crate::geometry::{slab_surface, Block, BlockEdge, BlockGluing, BlockProvider, EdgeRef, LazySurface, Obstacle, SlabSpec, Surface, Wrap};
use crate::isometry::Isometry;
use crate::real::{norm, sub, Pt, Real};

use super::families::rotate;
use super::CatalogError;

/// `k·α`, exact when `α` is.
pub(super) fn times(alpha: Angle, k: i64) -> Angle {
    match alpha.pi_units() {
        Some(q) => Angle::Exact(q * k).normalized(),
        None => Angle::radians_inexact((alpha.radians() * k as f64).rem_euclid(std::f64::consts::TAU)),
    }
}

/// Column `k` of the band `B_0` holds `ρ_{kα}(P) + (k, 0)`, the rotation
/// taken about `o`.
struct RotatedBand {
    base: Obstacle,
    center: Pt,
    alpha: Angle,
}

impl RotatedBand {
    fn column(&self, k: i64) -> Surface {
        let shift = Pt::new(Real::from_int(k), Real::zero());
        let mut ob = rotate(&self.base, self.center, times(self.alpha, k));
        ob.vertices.iter_mut().for_each(|v| *v = *v + shift);
        let spec = SlabSpec {
            x0: Real::from_int(k),
            x1: Real::from_int(k + 1),
            y0: Real::zero(),
            y1: Real::one(),
            obstacles: vec![ob],
            barriers: vec![],
            wrap_x: Wrap::Walls,
            wrap_y: Wrap::Walls,
        };
        slab_surface(&spec).expect("obstacle disk lies inside the column")
    }
}

/// The vertical wall of a column at `x`.
fn wall(s: &Surface, x: f64) -> EdgeRef {
    *s.boundary()
        .iter()
        .find(|e| {
            let (u, v) = s.cell(e.cell).edge(e.edge);
            (u.x.f() - x).abs() < 1e-12 && (v.x.f() - x).abs() < 1e-12
        })
        .expect("column has a vertical wall")
}

impl BlockProvider for RotatedBand {
    fn block(&self, k: i64) -> Block {
        let s = self.column(k);
        let next = self.column(k + 1);
        let (left, right) = (wall(&s, k as f64), wall(&s, (k + 1) as f64));
        let next_left = wall(&next, (k + 1) as f64);
        let at = |block: i64, e: EdgeRef| BlockEdge { block, cell: e.cell, edge: e.edge };
        let mut gluings: Vec<BlockGluing> =
            s.gluings().iter().map(|g| BlockGluing { a: at(k, g.a), b: at(k, g.b), map: g.map }).collect();
        gluings.push(BlockGluing { a: at(k, right), b: at(k + 1, next_left), map: Isometry::identity() });
        Block {
            cells: s.cells().to_vec(),
            gluings,
            interface: vec![(left.cell, left.edge), (right.cell, right.edge)],
        }
    }
}

/// Lazy model of the band with rotated obstacles, periodic or not. Every
/// rotation of `base` about `center` must lie strictly inside the unit
/// column, so the disk swept by the obstacle is required to.
pub fn rotated_band_provider(base: Obstacle, center: Pt, alpha: Angle) -> Result<LazySurface, CatalogError> {
    let c = center.f();
    let r = base.vertices.iter().map(|v| norm(sub(v.f(), c))).fold(0.0, f64::max);
    if c[0] - r <= 0.0 || c[0] + r >= 1.0 || c[1] - r <= 0.0 || c[1] + r >= 1.0 {
        return Err(CatalogError::ParamOutOfRange("rotated obstacle leaves the unit column".into()));
    }
    Ok(LazySurface::new(Arc::new(RotatedBand { base, center, alpha })))
}
