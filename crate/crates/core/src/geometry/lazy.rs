use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::isometry::Isometry;

use super::surface::build_with_cut;
use super::{Cell, EdgeRef, GeometryError, Gluing, Surface};

/// A side of a gluing in a lazy surface: block index, cell within the block, edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockEdge {
    pub block: i64,
    pub cell: usize,
    pub edge: usize,
}

#[derive(Clone, Debug)]
pub struct BlockGluing {
    pub a: BlockEdge,
    pub b: BlockEdge,
    pub map: Isometry,
}

/// Cells of one block together with the gluings this block owns. A block owns
/// every gluing whose `a` side lies in it; the `b` side may lie in any block.
#[derive(Clone, Debug, Default)]
pub struct Block {
    pub cells: Vec<Cell>,
    pub gluings: Vec<BlockGluing>,
    /// Edges glued to a neighbouring block (owned here or there).
    pub interface: Vec<(usize, usize)>,
}

/// Pure generator of the blocks of an infinite, locally finite surface.
pub trait BlockProvider: Send + Sync {
    fn block(&self, k: i64) -> Block;

    /// Inclusive range of valid block indices; `None` means unbounded.
    fn range(&self) -> (Option<i64>, Option<i64>) {
        (None, None)
    }
}

#[derive(Clone)]
pub struct LazySurface {
    provider: Arc<dyn BlockProvider>,
}

/// A finite window of a lazy surface; `cell_of[(k, c)]` is the global cell id.
#[derive(Clone, Debug)]
pub struct Window {
    pub surface: Surface,
    pub cell_of: HashMap<(i64, usize), usize>,
    pub blocks: (i64, i64),
}

impl LazySurface {
    pub fn new(provider: Arc<dyn BlockProvider>) -> Self {
        LazySurface { provider }
    }

    pub fn block(&self, k: i64) -> Block {
        self.provider.block(k)
    }

    /// Instantiates blocks `lo..=hi` (clamped to the provider's range). Edges
    /// glued to blocks outside the window become cuts, not boundary.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Window, GeometryError> {
        let (rlo, rhi) = self.provider.range();
        let lo = rlo.map_or(lo, |r| lo.max(r));
        let hi = rhi.map_or(hi, |r| hi.min(r));
        if lo > hi {
            return Err(GeometryError::ParamOutOfRange(format!("empty window {lo}..={hi}")));
        }
        let blocks: Vec<(i64, Block)> = (lo..=hi).map(|k| (k, self.provider.block(k))).collect();
        let mut cells = Vec::new();
        let mut cell_of = HashMap::new();
        for (k, b) in &blocks {
            for (i, c) in b.cells.iter().enumerate() {
                cell_of.insert((*k, i), cells.len());
                cells.push(c.clone());
            }
        }
        let mut gluings = Vec::new();
        let mut glued = HashSet::new();
        for (_, b) in &blocks {
            for g in &b.gluings {
                let ea = cell_of.get(&(g.a.block, g.a.cell));
                let eb = cell_of.get(&(g.b.block, g.b.cell));
                if let (Some(&ca), Some(&cb)) = (ea, eb) {
                    let a = EdgeRef::new(ca, g.a.edge);
                    let bb = EdgeRef::new(cb, g.b.edge);
                    glued.insert(a);
                    glued.insert(bb);
                    gluings.push(Gluing { a, b: bb, map: g.map, shift: 0 });
                }
            }
        }
        let mut cut = HashSet::new();
        for (k, b) in &blocks {
            for &(c, e) in &b.interface {
                let r = EdgeRef::new(cell_of[&(*k, c)], e);
                if !glued.contains(&r) {
                    cut.insert(r);
                }
            }
        }
        let surface = build_with_cut(cells, gluings, &cut)?;
        Ok(Window {
            surface,
            cell_of,
            blocks: (lo, hi),
        })
    }
}
