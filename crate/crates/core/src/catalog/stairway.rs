use crate::geometry::{Block, BlockEdge, BlockGluing, BlockProvider, Cell};
use crate::isometry::Isometry;
use crate::real::{Pt, Real};

/// The stairway `∪_{k≥0} [k, k+1] × [0, h_k]`, one rectangle per block.
/// Heights past the end of the list repeat the last one.
pub struct StairwayProvider {
    heights: Vec<Real>,
}

impl StairwayProvider {
    /// Panics on an empty or non-positive height list.
    pub fn new(heights: Vec<Real>) -> Self {
        assert!(!heights.is_empty() && heights.iter().all(|h| h.f() > 0.0));
        StairwayProvider { heights }
    }

    pub fn height(&self, k: i64) -> Real {
        let i = (k.max(0) as usize).min(self.heights.len() - 1);
        self.heights[i]
    }

    /// Height of the opening between blocks `k - 1` and `k`.
    fn opening(&self, k: i64) -> Option<Real> {
        if k <= 0 {
            return None;
        }
        let (a, b) = (self.height(k - 1), self.height(k));
        Some(if a.f() < b.f() { a } else { b })
    }

    fn cell(&self, k: i64) -> Cell {
        let h = self.height(k);
        let (x0, x1) = (Real::from_int(k), Real::from_int(k + 1));
        let mut v = vec![Pt::new(x0, Real::zero()), Pt::new(x1, Real::zero())];
        let right = self.opening(k + 1).unwrap();
        if right.f() < h.f() {
            v.push(Pt::new(x1, right));
        }
        v.push(Pt::new(x1, h));
        v.push(Pt::new(x0, h));
        if let Some(left) = self.opening(k) {
            if left.f() < h.f() {
                v.push(Pt::new(x0, left));
            }
        }
        Cell::new(v)
    }
}

impl BlockProvider for StairwayProvider {
    fn block(&self, k: i64) -> Block {
        let cell = self.cell(k);
        let last = cell.len() - 1;
        let next_last = self.cell(k + 1).len() - 1;
        let mut interface = vec![(0, 1)];
        if k > 0 {
            interface.push((0, last));
        }
        // the lower right side meets the lower left side of the next block
        let gluing = BlockGluing {
            a: BlockEdge { block: k, cell: 0, edge: 1 },
            b: BlockEdge { block: k + 1, cell: 0, edge: next_last },
            map: Isometry::identity(),
        };
        Block { cells: vec![cell], gluings: vec![gluing], interface }
    }

    fn range(&self) -> (Option<i64>, Option<i64>) {
        (Some(0), None)
    }
}
