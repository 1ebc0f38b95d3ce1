//! Plain-text surface description.
//!
//! ```text
//! # comment
//! cell
//! v 0 0
//! v 1 0
//! v 1 1
//! v 0 1
//! dirs 0 1/2 1 3/2
//! glue 0:2 0:0 rot=0 reflect=0 tx=0 ty=-1 shift=1
//! cut 0:1
//! ```
//!
//! Coordinates are exact rationals `p/q` or decimals; decimals always carry
//! a `.` or an exponent. Angles are in units of π, or `rad:FLOAT`. Writing
//! then reading reproduces the complex exactly.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::angle::Angle;
use crate::geometry::{build_surface_with_cut, Cell, EdgeRef, GeometryError, Gluing, Side, Surface};
use crate::isometry::{Isometry, Linear};
use crate::real::{Pt, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReadError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub fn write_surface(s: &Surface) -> String {
    let mut out = String::from("# polyflow surface\n");
    for cell in s.cells() {
        out.push_str("cell\n");
        for v in cell.vertices() {
            writeln!(out, "v {} {}", v.x, v.y).unwrap();
        }
        let dirs: Vec<String> = cell.edge_dirs().iter().map(Angle::to_string).collect();
        writeln!(out, "dirs {}", dirs.join(" ")).unwrap();
    }
    for g in s.gluings() {
        let m = &g.map;
        writeln!(
            out,
            "glue {} {} rot={} reflect={} tx={} ty={} shift={}",
            g.a, g.b, m.linear.rot, m.linear.reflect as u8, m.translation.x, m.translation.y, g.shift
        )
        .unwrap();
    }
    for (c, cell) in s.cells().iter().enumerate() {
        for e in 0..cell.len() {
            if s.side(EdgeRef::new(c, e)) == Side::Cut {
                writeln!(out, "cut {c}:{e}").unwrap();
            }
        }
    }
    out
}

struct PendingCell {
    vertices: Vec<Pt>,
    dirs: Option<Vec<Angle>>,
}

pub fn read_surface(text: &str) -> Result<Surface, ReadError> {
    let mut cells: Vec<PendingCell> = Vec::new();
    let mut gluings = Vec::new();
    let mut cut = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| ReadError::Syntax { line, msg };
        let content = raw.split('#').next().unwrap().trim();
        let mut words = content.split_whitespace();
        let Some(key) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        match key {
            "cell" => cells.push(PendingCell { vertices: vec![], dirs: None }),
            "v" => {
                let cell = cells.last_mut().ok_or_else(|| err("vertex before any cell".into()))?;
                if rest.len() != 2 {
                    return Err(err("expected `v X Y`".into()));
                }
                let x: Real = rest[0].parse().map_err(|e| err(format!("{e}")))?;
                let y: Real = rest[1].parse().map_err(|e| err(format!("{e}")))?;
                cell.vertices.push(Pt::new(x, y));
            }
            "dirs" => {
                let cell = cells.last_mut().ok_or_else(|| err("dirs before any cell".into()))?;
                let dirs = rest.iter().map(|w| w.parse::<Angle>().map_err(|e| err(e.to_string()))).collect::<Result<_, _>>()?;
                cell.dirs = Some(dirs);
            }
            "glue" => gluings.push(parse_gluing(&rest).map_err(err)?),
            "cut" => {
                let [e] = rest[..] else { return Err(err("expected `cut C:E`".into())) };
                cut.insert(parse_edge(e).map_err(err)?);
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let mut built = Vec::with_capacity(cells.len());
    for (i, c) in cells.into_iter().enumerate() {
        built.push(match c.dirs {
            None => Cell::new(c.vertices),
            Some(d) if d.len() == c.vertices.len() => Cell::with_directions(c.vertices, d.into_iter().map(Some).collect()),
            Some(_) => {
                return Err(GeometryError::BadCell { cell: i, reason: "dirs count differs from vertex count".into() }.into())
            }
        });
    }
    for (i, g) in gluings.iter().enumerate() {
        for e in [g.a, g.b] {
            if e.cell >= built.len() || e.edge >= built[e.cell].len() {
                return Err(GeometryError::BadReference { gluing: i }.into());
            }
        }
    }
    Ok(build_surface_with_cut(built, gluings, &cut)?)
}

fn parse_edge(w: &str) -> Result<EdgeRef, String> {
    let (c, e) = w.split_once(':').ok_or_else(|| format!("expected C:E, got `{w}`"))?;
    let c = c.parse().map_err(|_| format!("bad cell index `{c}`"))?;
    let e = e.parse().map_err(|_| format!("bad edge index `{e}`"))?;
    Ok(EdgeRef::new(c, e))
}

fn parse_gluing(words: &[&str]) -> Result<Gluing, String> {
    if words.len() < 2 {
        return Err("expected `glue C:E C:E key=value...`".into());
    }
    let (a, b) = (parse_edge(words[0])?, parse_edge(words[1])?);
    let (mut rot, mut reflect, mut tx, mut ty, mut shift) = (Angle::zero(), false, Real::zero(), Real::zero(), 0i64);
    for w in &words[2..] {
        let (k, v) = w.split_once('=').ok_or_else(|| format!("expected key=value, got `{w}`"))?;
        let bad = || format!("bad value for {k}: `{v}`");
        match k {
            "rot" => rot = v.parse().map_err(|_| bad())?,
            "reflect" => {
                reflect = match v {
                    "0" | "false" => false,
                    "1" | "true" => true,
                    _ => return Err(bad()),
                }
            }
            "tx" => tx = v.parse().map_err(|_| bad())?,
            "ty" => ty = v.parse().map_err(|_| bad())?,
            "shift" => shift = v.parse().map_err(|_| bad())?,
            _ => return Err(format!("unknown gluing key `{k}`")),
        }
    }
    let linear = Linear { rot: rot.normalized(), reflect };
    Ok(Gluing { a, b, map: Isometry::new(linear, Pt::new(tx, ty)), shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_family, FamilySpec, FAMILIES};

    #[test]
    fn catalog_surfaces_round_trip() {
        for f in FAMILIES {
            let s = make_family(&FamilySpec::new(f)).unwrap();
            let text = write_surface(&s);
            let back = read_surface(&text).unwrap();
            assert_eq!(back, s, "{f}");
            assert_eq!(write_surface(&back), text);
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let r = read_surface("cell\nv 0 0\nv 1 zero\n");
        assert!(matches!(r, Err(ReadError::Syntax { line: 3, .. })));
        assert!(matches!(read_surface("glue 0:0 0:1\n"), Err(ReadError::Geometry(_))));
    }
}
