use std::collections::{BTreeSet, HashMap};

use crate::geometry::{build_surface, Cell, EdgeRef, Gluing, Surface};
use crate::real::Pt;

use super::UnfoldError;

/// Lattice squares, either a finite set or a fundamental set for the
/// translation `period`.
struct SquareSet {
    base: Vec<(i64, i64)>,
    period: Option<(i64, i64)>,
    index: HashMap<(i64, i64), (usize, i64)>,
}

impl SquareSet {
    fn new(base: &[(i64, i64)], period: Option<(i64, i64)>) -> Result<Self, UnfoldError> {
        if period == Some((0, 0)) {
            return Err(UnfoldError::NotLatticeDrawn("zero period".into()));
        }
        let mut set = SquareSet { base: base.to_vec(), period, index: HashMap::new() };
        for (i, &sq) in base.iter().enumerate() {
            let (key, k) = set.reduce(sq);
            if set.index.insert(key, (i, k)).is_some() {
                return Err(UnfoldError::NotLatticeDrawn(format!("square {sq:?} listed twice modulo the period")));
            }
        }
        Ok(set)
    }

    /// Canonical representative of the orbit of `sq` and its period count.
    fn reduce(&self, sq: (i64, i64)) -> ((i64, i64), i64) {
        match self.period {
            None => (sq, 0),
            Some((px, py)) => {
                let k = if py != 0 { sq.1.div_euclid(py.abs()) * py.signum() } else { sq.0.div_euclid(px.abs()) * px.signum() };
                ((sq.0 - k * px, sq.1 - k * py), k)
            }
        }
    }

    /// Index of the base square equivalent to `sq`, and the number of
    /// periods from that base square to `sq`.
    fn find(&self, sq: (i64, i64)) -> Option<(usize, i64)> {
        let (key, k) = self.reduce(sq);
        self.index.get(&key).map(|&(i, k0)| (i, k - k0))
    }

    fn step_limit(&self) -> usize {
        self.base.len() + 2
    }
}

/// First square of the maximal run through `sq` in direction `-d`.
fn run_start(set: &SquareSet, sq: (i64, i64), d: (i64, i64)) -> Result<(i64, i64), UnfoldError> {
    let mut cur = sq;
    for _ in 0..set.step_limit() {
        let prev = (cur.0 - d.0, cur.1 - d.1);
        if set.find(prev).is_none() {
            return Ok(cur);
        }
        cur = prev;
    }
    Err(UnfoldError::NotLatticeDrawn(format!("run through {sq:?} is infinite")))
}

/// The origami translation surface of a square-tiled polygon: consecutive
/// squares of a row (column) are glued, and the last square of every row
/// (column) is glued to the first. With a period, shifts count the period
/// translations between the glued squares.
pub fn origami(squares: &[(i64, i64)], period: Option<(i64, i64)>) -> Result<Surface, UnfoldError> {
    if squares.is_empty() {
        return Err(UnfoldError::NotLatticeDrawn("no squares".into()));
    }
    let set = SquareSet::new(squares, period)?;
    let cells: Vec<Cell> = squares.iter().map(|&(x, y)| Cell::unit_square_at(x, y)).collect();
    let mut gluings = Vec::new();
    for (i, &sq) in squares.iter().enumerate() {
        for (d, out_edge, in_edge) in [((1, 0), 1, 3), ((0, 1), 2, 0)] {
            let next = (sq.0 + d.0, sq.1 + d.1);
            let target = if set.find(next).is_some() { next } else { run_start(&set, sq, d)? };
            let (j, k) = set.find(target).expect("square in set");
            gluings.push(Gluing::between(&cells, EdgeRef::new(i, out_edge), EdgeRef::new(j, in_edge), k));
        }
    }
    Ok(build_surface(cells, gluings)?)
}

/// The origami of a polygon drawn on the integer lattice, given by its
/// counterclockwise vertices.
pub fn origami_from_polygon(vertices: &[Pt]) -> Result<Surface, UnfoldError> {
    let mut pts = Vec::new();
    for p in vertices {
        let (Some(x), Some(y)) = (p.x.exact(), p.y.exact()) else {
            return Err(UnfoldError::NotLatticeDrawn("inexact vertex".into()));
        };
        if !x.is_integer() || !y.is_integer() {
            return Err(UnfoldError::NotLatticeDrawn(format!("vertex ({}, {}) is not a lattice point", p.x, p.y)));
        }
        pts.push((x.to_integer(), y.to_integer()));
    }
    let n = pts.len();
    if n < 4 {
        return Err(UnfoldError::NotLatticeDrawn("fewer than four vertices".into()));
    }
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        if a == b || (a.0 != b.0 && a.1 != b.1) {
            return Err(UnfoldError::NotLatticeDrawn(format!("side {i} is not horizontal or vertical")));
        }
    }
    let cell = Cell::new(vertices.to_vec());
    cell.validate(0).map_err(|e| UnfoldError::NotLatticeDrawn(e.to_string()))?;
    let (x0, x1) = (pts.iter().map(|p| p.0).min().unwrap(), pts.iter().map(|p| p.0).max().unwrap());
    let (y0, y1) = (pts.iter().map(|p| p.1).min().unwrap(), pts.iter().map(|p| p.1).max().unwrap());
    let mut squares = BTreeSet::new();
    for y in y0..y1 {
        for x in x0..x1 {
            if cell.contains([x as f64 + 0.5, y as f64 + 0.5], -1e-12) {
                squares.insert((y, x));
            }
        }
    }
    let squares: Vec<(i64, i64)> = squares.into_iter().map(|(y, x)| (x, y)).collect();
    origami(&squares, None)
}
