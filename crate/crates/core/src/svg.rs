//! Static SVG pictures of a fundamental domain and an orbit.

use std::fmt::Write as _;

use crate::flow::{TangentState, TraceEvent};
use crate::geometry::{EdgeRef, Side, Surface};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

/// Cells with glued edges in a thin dashed stroke and reflecting edges
/// (walls, obstacles, barriers) in a heavy one; the orbit is drawn as one
/// segment per flight between events.
pub fn render_svg(s: &Surface, start: Option<&TangentState>, events: &[TraceEvent]) -> String {
    let [x0, y0, x1, y1] = s.bbox();
    let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0).max(1e-12);
    let map = |p: [f64; 2]| (MARGIN + (p[0] - x0) * scale, SIZE - MARGIN - (p[1] - y0) * scale);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    out.push_str("<g fill=\"#f4f4f4\" stroke=\"none\">\n");
    for cell in s.cells() {
        let pts: Vec<String> = cell.vertices().iter().map(|v| map(v.f())).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" ")).unwrap();
    }
    out.push_str("</g>\n");
    let mut glued = String::new();
    let mut walls = String::new();
    for (c, cell) in s.cells().iter().enumerate() {
        for e in 0..cell.len() {
            let (p, q) = cell.edge(e);
            let ((ax, ay), (bx, by)) = (map(p.f()), map(q.f()));
            let line = format!(r#"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#);
            match s.side(EdgeRef::new(c, e)) {
                Side::Boundary { .. } => writeln!(walls, "{line}").unwrap(),
                _ => writeln!(glued, "{line}").unwrap(),
            }
        }
    }
    writeln!(out, "<g stroke=\"#999\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\">\n{glued}</g>").unwrap();
    writeln!(out, "<g stroke=\"#000\" stroke-width=\"2.5\" stroke-linecap=\"round\">\n{walls}</g>").unwrap();
    if let Some(start) = start {
        out.push_str("<g stroke=\"#c03\" stroke-width=\"1\" fill=\"none\">\n");
        let mut from = start.point;
        for ev in events {
            let to = match ev.hit {
                Some((e, t)) => {
                    let cell = s.cell(e.cell);
                    let (p, _) = cell.edge(e.edge);
                    let u = cell.edge_dir(e.edge).unit();
                    let p = p.f();
                    [p[0] + t * u[0], p[1] + t * u[1]]
                }
                None => ev.state.point,
            };
            let ((ax, ay), (bx, by)) = (map(from), map(to));
            writeln!(out, r#"<polyline points="{ax:.3},{ay:.3} {bx:.3},{by:.3}"/>"#).unwrap();
            from = ev.state.point;
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::catalog::{make_family, FamilySpec};
    use crate::flow::{Budget, Flow};

    #[test]
    fn torus_barrier_picture() {
        let s = make_family(&FamilySpec::new("torus_barrier").with("l", "1/2")).unwrap();
        let flow = Flow::new(&s);
        let c = flow.locate([0.1, 0.4]).unwrap();
        let start = TangentState::new(c, [0.1, 0.4], Angle::radians_inexact(0.7));
        let events = flow.trace(start.clone(), Budget::events(50)).unwrap();
        let svg = render_svg(&s, Some(&start), &events);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), events.len());
        assert!(svg.contains("stroke-width=\"2.5\""));
    }
}
