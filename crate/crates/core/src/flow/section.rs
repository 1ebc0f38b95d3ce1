use serde::Serialize;

use crate::angle::Angle;
use crate::geometry::{EdgeRef, Surface};
use crate::real::{cross, dot};

use super::state::{Budget, EventKind, Flow, TangentState, TraceEvent};
use super::FlowError;

/// One piece of a transversal: a boundary edge, or both sides of a gluing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SectionEdge {
    Boundary(EdgeRef),
    Seam(usize),
}

/// A unit tangent vector footed on the section. `edge` is the side through
/// which the direction enters its cell; `arclength` runs from that edge's
/// start along its counterclockwise orientation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossSectionPoint {
    pub edge: EdgeRef,
    pub arclength: f64,
    #[serde(serialize_with = "ser_angle")]
    pub direction: Angle,
    pub displacement: i64,
}

fn ser_angle<S: serde::Serializer>(a: &Angle, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&a.to_string())
}

impl CrossSectionPoint {
    pub fn new(edge: EdgeRef, arclength: f64, direction: Angle) -> Self {
        CrossSectionPoint { edge, arclength, direction, displacement: 0 }
    }

    /// Direction in radians, in `[0, 2π)`.
    pub fn theta(&self) -> f64 {
        self.direction.normalized().radians()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SectionReturn {
    pub start: CrossSectionPoint,
    pub end: CrossSectionPoint,
    pub phi: i64,
    pub flight_time: f64,
    pub events: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossSection {
    edges: Vec<SectionEdge>,
}

impl CrossSection {
    pub fn new(edges: Vec<SectionEdge>) -> Self {
        CrossSection { edges }
    }

    /// All boundary edges: the induced map is the billiard map.
    pub fn standard(s: &Surface) -> Self {
        CrossSection { edges: s.boundary().iter().map(|&e| SectionEdge::Boundary(e)).collect() }
    }

    pub fn seam(gluing: usize) -> Self {
        CrossSection { edges: vec![SectionEdge::Seam(gluing)] }
    }

    pub fn edges(&self) -> &[SectionEdge] {
        &self.edges
    }

    /// Cell edges through which the flow enters the section.
    pub fn entry_edges(&self, s: &Surface) -> Vec<EdgeRef> {
        let mut out = Vec::new();
        for e in &self.edges {
            match *e {
                SectionEdge::Boundary(b) => out.push(b),
                SectionEdge::Seam(g) => {
                    let g = &s.gluings()[g];
                    out.push(g.a);
                    out.push(g.b);
                }
            }
        }
        out
    }

    fn is_entry(&self, s: &Surface, e: EdgeRef) -> bool {
        self.edges.iter().any(|x| match *x {
            SectionEdge::Boundary(b) => b == e,
            SectionEdge::Seam(g) => s.gluings().get(g).is_some_and(|g| g.a == e || g.b == e),
        })
    }

    fn has_boundary(&self, e: EdgeRef) -> bool {
        self.edges.contains(&SectionEdge::Boundary(e))
    }

    fn has_seam(&self, g: usize) -> bool {
        self.edges.contains(&SectionEdge::Seam(g))
    }

    /// The tangent state of a section point.
    pub fn state_of(&self, s: &Surface, p: &CrossSectionPoint) -> Result<TangentState, FlowError> {
        if p.edge.cell >= s.cells().len() || p.edge.edge >= s.cell(p.edge.cell).len() || !self.is_entry(s, p.edge) {
            return Err(FlowError::BadSectionPoint);
        }
        let cell = s.cell(p.edge.cell);
        let (a, b) = cell.edge(p.edge.edge);
        let (a, b) = (a.f(), b.f());
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        if !(p.arclength >= 0.0 && p.arclength <= len) {
            return Err(FlowError::BadSectionPoint);
        }
        let u = cell.edge_dir(p.edge.edge).unit();
        let st = TangentState::new(p.edge.cell, [a[0] + p.arclength * u[0], a[1] + p.arclength * u[1]], p.direction);
        let c = cross(u, st.dir);
        if c.abs() < 1e-12 {
            return Err(FlowError::NoReturn);
        }
        if c < 0.0 {
            return Err(FlowError::BadSectionPoint);
        }
        Ok(st)
    }

    fn point_on(&self, flow: &Flow, e: EdgeRef, st: &TangentState) -> CrossSectionPoint {
        let cell = flow.surface().cell(e.cell);
        let a = cell.edge(e.edge).0.f();
        let len = cell.edge_length(e.edge);
        let u = cell.edge_dir(e.edge).unit();
        let s = dot([st.point[0] - a[0], st.point[1] - a[1]], u).clamp(0.0, len);
        CrossSectionPoint {
            edge: e,
            arclength: if s >= len { 0.0 } else { s },
            direction: st.angle.unwrap_or(Angle::radians_inexact(st.theta())),
            displacement: 0,
        }
    }

    /// Section edge entered at the corner where a vertex passage ended.
    fn corner_entry(&self, flow: &Flow, st: &TangentState) -> Option<EdgeRef> {
        let s = flow.surface();
        let cell = s.cell(st.cell);
        let n = cell.len();
        let k = (0..n).find(|&k| {
            let v = cell.vertex(k).f();
            (v[0] - st.point[0]).hypot(v[1] - st.point[1]) < 1e-9
        })?;
        [k, (k + n - 1) % n].into_iter().map(|i| EdgeRef::new(st.cell, i)).find(|&e| {
            self.is_entry(s, e) && cross(cell.edge_dir(e.edge).unit(), st.dir) > 1e-12
        })
    }

    fn hit(&self, flow: &Flow, ev: &TraceEvent) -> Option<EdgeRef> {
        match &ev.kind {
            EventKind::Reflection { edge } if self.has_boundary(*edge) => Some(*edge),
            EventKind::Crossing { gluing, exit, .. } if self.has_seam(*gluing) => {
                flow.surface().transport(*exit).map(|t| t.0)
            }
            EventKind::Vertex { crossed, reflected, .. } => {
                let touched = reflected.is_some_and(|r| self.has_boundary(r))
                    || crossed.iter().any(|&(g, _)| self.has_seam(g));
                if touched {
                    self.corner_entry(flow, &ev.state)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// First return of `start` to the section.
    pub fn next(&self, flow: &Flow, start: &CrossSectionPoint, budget: Budget) -> Result<SectionReturn, FlowError> {
        self.run(flow, start, budget, None)
    }

    /// As [`CrossSection::next`], also listing the edges hit on the way;
    /// the flag marks passages through a corner.
    pub fn next_with_itinerary(
        &self,
        flow: &Flow,
        start: &CrossSectionPoint,
        budget: Budget,
    ) -> Result<(SectionReturn, Vec<(EdgeRef, bool)>), FlowError> {
        let mut log = Vec::new();
        let r = self.run(flow, start, budget, Some(&mut log))?;
        Ok((r, log))
    }

    fn run(
        &self,
        flow: &Flow,
        start: &CrossSectionPoint,
        budget: Budget,
        mut log: Option<&mut Vec<(EdgeRef, bool)>>,
    ) -> Result<SectionReturn, FlowError> {
        let mut st = self.state_of(flow.surface(), start)?;
        for i in 0..budget.max_events {
            let ev = flow.advance(&mut st, budget.max_length)?;
            match ev.kind {
                EventKind::SingularHit { vertex } => return Err(FlowError::SingularHit { vertex }),
                EventKind::WindowExit { .. } => return Err(FlowError::WindowExit),
                EventKind::Timeout => return Err(FlowError::NoReturn),
                _ => {}
            }
            if let (Some(log), Some((e, _))) = (log.as_deref_mut(), ev.hit) {
                log.push((e, matches!(ev.kind, EventKind::Vertex { .. })));
            }
            if let Some(e) = self.hit(flow, &ev) {
                let mut end = self.point_on(flow, e, &st);
                end.displacement = start.displacement + st.displacement;
                return Ok(SectionReturn {
                    start: *start,
                    end,
                    phi: st.displacement,
                    flight_time: st.time,
                    events: i + 1,
                });
            }
        }
        Err(FlowError::NoReturn)
    }
}

/// One step of the billiard map on the standard section.
pub fn billiard_map(point: &CrossSectionPoint, surface: &Surface) -> Result<CrossSectionPoint, FlowError> {
    let flow = Flow::new(surface);
    let section = CrossSection::standard(surface);
    section.next(&flow, point, Budget::default()).map(|r| r.end)
}
