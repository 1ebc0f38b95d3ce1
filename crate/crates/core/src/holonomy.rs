//! Rotational holonomy of a surface: the subgroup of O(2) generated by
//! developing charts around loops of the gluing graph and by reflections in
//! the boundary sides.

use std::collections::{HashSet, VecDeque};

use crate::geometry::{EdgeRef, Surface};
use crate::isometry::Linear;

pub const DEFAULT_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum RotationalGroup {
    /// `n` is the dihedral parameter when the group contains a reflection
    /// (order `2n`), and the order of the cyclic group otherwise.
    Finite {
        elements: Vec<Linear>,
        n: usize,
        dihedral: bool,
        generators: Vec<Linear>,
    },
    ExceedsCap {
        cap: usize,
        warning: Option<String>,
    },
}

impl RotationalGroup {
    pub fn is_finite(&self) -> bool {
        matches!(self, RotationalGroup::Finite { .. })
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            RotationalGroup::Finite { elements, .. } => Some(elements.len()),
            RotationalGroup::ExceedsCap { .. } => None,
        }
    }

    pub fn elements(&self) -> &[Linear] {
        match self {
            RotationalGroup::Finite { elements, .. } => elements,
            RotationalGroup::ExceedsCap { .. } => &[],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }

    pub fn trivial() -> Self {
        RotationalGroup::Finite {
            elements: vec![Linear::identity()],
            n: 1,
            dihedral: false,
            generators: vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HolonomyError {
    #[error("surface is not rational: rotational holonomy is not known to be finite")]
    IrrationalSurface,
    #[error("exact generators produced more than {cap} elements; this indicates an internal inconsistency")]
    InconsistentClosure { cap: usize },
}

/// Developing frames `D_c`, one per cell, such that a vector `v` in chart `c`
/// points in direction `D_c v` of a common developed frame (modulo holonomy).
pub fn developing_frames(s: &Surface) -> Vec<Linear> {
    let n = s.cells().len();
    let mut frame: Vec<Option<Linear>> = vec![None; n];
    frame[0] = Some(Linear::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let dc = frame[c].unwrap();
        for e in 0..s.cell(c).len() {
            if let Some((to, map, _)) = s.transport(EdgeRef::new(c, e)) {
                if frame[to.cell].is_none() {
                    frame[to.cell] = Some(dc.compose(&map.linear.inverse()));
                    queue.push_back(to.cell);
                }
            }
        }
    }
    frame.into_iter().map(|f| f.expect("surface is connected")).collect()
}

/// Generators of the rotational holonomy in the developed frame.
pub fn holonomy_generators(s: &Surface) -> Vec<Linear> {
    let frames = developing_frames(s);
    let mut out: Vec<Linear> = Vec::new();
    let mut push = |g: Linear| {
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    };
    for g in s.gluings() {
        let da = frames[g.a.cell];
        let db = frames[g.b.cell];
        push(da.compose(&g.map.linear.inverse()).compose(&db.inverse()));
    }
    for e in s.boundary() {
        let dc = frames[e.cell];
        let r = Linear::reflection_about(s.cell(e.cell).edge_dir(e.edge));
        push(dc.compose(&r).compose(&dc.inverse()));
    }
    out
}

/// Closes the generated group, up to `cap` elements.
pub fn rotational_holonomy(s: &Surface, cap: usize) -> Result<RotationalGroup, HolonomyError> {
    let generators = holonomy_generators(s);
    if generators.iter().any(|g| !g.is_exact()) {
        return Ok(RotationalGroup::ExceedsCap {
            cap,
            warning: Some("inexact angles: finiteness cannot be certified".into()),
        });
    }
    let mut seen: HashSet<Linear> = HashSet::from([Linear::identity()]);
    let mut elements = vec![Linear::identity()];
    let mut queue = VecDeque::from([Linear::identity()]);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = x.compose(g);
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(HolonomyError::InconsistentClosure { cap });
                }
                elements.push(y);
                queue.push_back(y);
            }
        }
    }
    elements.sort_by_key(|l| (l.reflect, l.rot.pi_units()));
    let dihedral = elements.iter().any(|l| l.reflect);
    let n = if dihedral { elements.len() / 2 } else { elements.len() };
    Ok(RotationalGroup::Finite {
        elements,
        n,
        dihedral,
        generators,
    })
}

/// `N` with `Hol_r = D_N` (or `C_N` when there are no reflections).
pub fn n_of_surface(s: &Surface) -> Result<usize, HolonomyError> {
    match rotational_holonomy(s, DEFAULT_CAP)? {
        RotationalGroup::Finite { n, .. } => Ok(n),
        RotationalGroup::ExceedsCap { .. } => Err(HolonomyError::IrrationalSurface),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::geometry::{build_surface, Cell};
    use crate::real::Pt;

    #[test]
    fn square_polygon_is_d2() {
        let s = build_surface(vec![Cell::unit_square_at(0, 0)], vec![]).unwrap();
        let g = rotational_holonomy(&s, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), Some(4));
        assert_eq!(n_of_surface(&s).unwrap(), 2);
    }

    #[test]
    fn triangle_with_angles_pi_over_5() {
        // isosceles triangle with base angles 2π/5 and apex π/5: N = 5
        let c = Cell::with_directions(
            vec![
                Pt::floats(0.0, 0.0),
                Pt::floats(1.0, 0.0),
                Pt::floats(0.5, 0.5 * (2.0 * std::f64::consts::PI / 5.0).tan()),
            ],
            vec![Some(Angle::zero()), Some(Angle::pi_frac(3, 5)), Some(Angle::pi_frac(7, 5))],
        );
        let s = build_surface(vec![c], vec![]).unwrap();
        assert_eq!(n_of_surface(&s).unwrap(), 5);
    }

    #[test]
    fn inexact_angles_are_not_certified() {
        let c = Cell::new(vec![Pt::floats(0.0, 0.0), Pt::floats(1.0, 0.0), Pt::floats(0.3, 0.7)]);
        let s = build_surface(vec![c], vec![]).unwrap();
        assert!(matches!(
            rotational_holonomy(&s, DEFAULT_CAP).unwrap(),
            RotationalGroup::ExceedsCap { warning: Some(_), .. }
        ));
        assert_eq!(n_of_surface(&s), Err(HolonomyError::IrrationalSurface));
    }
}
