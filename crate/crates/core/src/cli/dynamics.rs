use serde::Serialize;
use serde_json::json;

use polyflow::flow::{Budget, CrossSection, CrossSectionPoint, EventKind, Flow, SectionEdge, TangentState};
use polyflow::geometry::{EdgeRef, Surface};
use polyflow::skew::{centering_integral, recurrence_experiment, CenteringMethod, DirectionMode, SkewSystem};
use polyflow::svg::render_svg;

use super::args::{Cli, Command, Format, Method, ThetaArgs};
use super::output::{csv_rows, emit, json, load, validation, write_file};
use super::CliError;

pub fn run(cli: &Cli, command: &Command) -> Result<(), CliError> {
    match command {
        Command::Trace { surface, start, cell, theta, events, svg, csv } => {
            let s = load(surface)?;
            let p = parse_pair(start)?;
            trace(cli, &s, p, *cell, theta.required()?, *events, svg.as_ref(), csv.as_ref())
        }
        Command::Billiard { surface, edge, arclength, theta, steps, csv } => {
            let s = load(surface)?;
            let start = CrossSectionPoint::new(parse_edge(edge)?, *arclength, theta.required()?);
            billiard(cli, &s, start, *steps, csv.as_ref())
        }
        Command::Centering { surface, theta, full, method, samples, section } => {
            let s = load(surface)?;
            let system = SkewSystem::new(&s, parse_section(&s, section)?, mode(theta, *full)?).map_err(validation)?;
            let m = match method {
                Method::Quad => CenteringMethod::Quadrature,
                Method::Mc => CenteringMethod::MonteCarlo { samples: *samples, seed: cli.seed },
            };
            let r = centering_integral(&system, m).map_err(validation)?;
            if cli.format == Some(Format::Json) {
                emit(None, &json(r)?)
            } else {
                println!("mean {:e} se {:e} pieces {} failed {}", r.mean, r.se, r.pieces, r.failed);
                Ok(())
            }
        }
        Command::Recurrence { surface, theta, full, orbits, returns, section, csv, report } => {
            let s = load(surface)?;
            let system = SkewSystem::new(&s, parse_section(&s, section)?, mode(theta, *full)?).map_err(validation)?;
            let r = recurrence_experiment(&system, *orbits, *returns, cli.seed);
            let summary = r.summary();
            let doc = json(json!({
                "seed": cli.seed,
                "orbits": orbits,
                "returns": returns,
                "summary": summary,
            }))?;
            if let Some(path) = csv {
                write_file(path, &csv_rows(&r.orbits)?)?;
            }
            if let Some(path) = report {
                write_file(path, &doc)?;
            }
            match cli.format {
                Some(Format::Json) => emit(None, &doc),
                Some(Format::Csv) => emit(None, &csv_rows(&r.orbits)?),
                _ => {
                    println!("verdict: {:?}", summary.verdict);
                    println!(
                        "valid {} of {}; returned to 0: {}; escaped: {}; mean Birkhoff average {:.6}; max excursion {}",
                        summary.n_valid,
                        summary.n_orbits,
                        summary.n_returned_to_zero_fiber,
                        summary.n_escaped,
                        summary.mean_birkhoff,
                        summary.max_excursion
                    );
                    Ok(())
                }
            }
        }
        _ => unreachable!("static commands are handled by the caller"),
    }
}

fn mode(theta: &ThetaArgs, full: bool) -> Result<DirectionMode, CliError> {
    if full {
        Ok(DirectionMode::Full)
    } else {
        theta.required().map(DirectionMode::Fixed)
    }
}

fn parse_pair(s: &str) -> Result<[f64; 2], CliError> {
    let bad = || CliError::Usage(format!("expected X,Y, got `{s}`"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok([x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?])
}

fn parse_edge(s: &str) -> Result<EdgeRef, CliError> {
    let bad = || CliError::Usage(format!("expected CELL:EDGE, got `{s}`"));
    let (c, e) = s.split_once(':').ok_or_else(bad)?;
    Ok(EdgeRef::new(c.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?))
}

/// `auto` uses the shift-labelled gluings when there are any, else the boundary.
fn parse_section(s: &Surface, spec: &str) -> Result<CrossSection, CliError> {
    let seams: Vec<usize> = (0..s.gluings().len()).filter(|&g| s.gluings()[g].shift != 0).collect();
    match spec {
        "auto" if !seams.is_empty() => Ok(CrossSection::new(seams.into_iter().map(SectionEdge::Seam).collect())),
        "auto" | "standard" => Ok(CrossSection::standard(s)),
        _ => {
            let list = spec
                .strip_prefix("seam:")
                .ok_or_else(|| CliError::Usage(format!("unknown section `{spec}`")))?;
            let mut edges = Vec::new();
            for g in list.split(',') {
                let g: usize = g.trim().parse().map_err(|_| CliError::Usage(format!("bad gluing index `{g}`")))?;
                if g >= s.gluings().len() {
                    return Err(CliError::Validation(format!("no gluing {g}")));
                }
                edges.push(SectionEdge::Seam(g));
            }
            Ok(CrossSection::new(edges))
        }
    }
}

fn kind_name(k: &EventKind) -> &'static str {
    match k {
        EventKind::Crossing { .. } => "crossing",
        EventKind::Reflection { .. } => "reflection",
        EventKind::Vertex { .. } => "vertex",
        EventKind::SingularHit { .. } => "singular",
        EventKind::WindowExit { .. } => "window_exit",
        EventKind::Timeout => "timeout",
    }
}

#[derive(Serialize)]
struct TraceRow {
    event: usize,
    kind: &'static str,
    cell: usize,
    x: f64,
    y: f64,
    theta: f64,
    time: f64,
    displacement: i64,
}

#[allow(clippy::too_many_arguments)]
fn trace(
    cli: &Cli,
    s: &Surface,
    p: [f64; 2],
    cell: Option<usize>,
    theta: polyflow::angle::Angle,
    events: usize,
    svg: Option<&std::path::PathBuf>,
    csv: Option<&std::path::PathBuf>,
) -> Result<(), CliError> {
    let flow = Flow::new(s);
    let c = match cell {
        Some(c) if c < s.cells().len() && s.cell(c).contains(p, 1e-9) => c,
        Some(c) => return Err(CliError::Validation(format!("start is not in cell {c}"))),
        None => flow.locate(p).ok_or_else(|| CliError::Validation("start lies outside every cell".into()))?,
    };
    let start = TangentState::new(c, p, theta);
    let evs = flow.trace(start, Budget::events(events)).map_err(validation)?;
    let rows: Vec<TraceRow> = evs
        .iter()
        .enumerate()
        .map(|(i, e)| TraceRow {
            event: i + 1,
            kind: kind_name(&e.kind),
            cell: e.state.cell,
            x: e.state.point[0],
            y: e.state.point[1],
            theta: e.state.theta(),
            time: e.state.time,
            displacement: e.state.displacement,
        })
        .collect();
    if let Some(path) = csv {
        write_file(path, &csv_rows(&rows)?)?;
    }
    if let Some(path) = svg {
        write_file(path, &render_svg(s, Some(&start), &evs))?;
    }
    match cli.format {
        Some(Format::Csv) => emit(None, &csv_rows(&rows)?),
        Some(Format::Svg) => emit(None, &render_svg(s, Some(&start), &evs)),
        Some(Format::Json) => emit(None, &json(json!({ "events": rows }))?),
        None => {
            let last = rows.last();
            println!(
                "{} events; last {} in cell {} at time {:.6}; displacement {}",
                rows.len(),
                last.map_or("none", |r| r.kind),
                last.map_or(c, |r| r.cell),
                last.map_or(0.0, |r| r.time),
                last.map_or(0, |r| r.displacement)
            );
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct BilliardRow {
    step: usize,
    cell: usize,
    edge: usize,
    arclength: f64,
    theta: f64,
}

fn billiard(cli: &Cli, s: &Surface, start: CrossSectionPoint, steps: usize, csv: Option<&std::path::PathBuf>) -> Result<(), CliError> {
    let flow = Flow::new(s);
    let section = CrossSection::standard(s);
    let row = |i: usize, p: &CrossSectionPoint| BilliardRow { step: i, cell: p.edge.cell, edge: p.edge.edge, arclength: p.arclength, theta: p.theta() };
    let mut rows = vec![row(0, &start)];
    let mut p = start;
    for i in 1..=steps {
        p = section.next(&flow, &p, Budget::default()).map_err(validation)?.end;
        rows.push(row(i, &p));
    }
    if let Some(path) = csv {
        write_file(path, &csv_rows(&rows)?)?;
    }
    match cli.format {
        Some(Format::Csv) => emit(None, &csv_rows(&rows)?),
        Some(Format::Json) => emit(None, &json(json!({ "points": rows }))?),
        _ => {
            let l = rows.last().unwrap();
            println!("{steps} bounces; last on edge {}:{} at arclength {:.9}, theta {:.9}", l.cell, l.edge, l.arclength, l.theta);
            Ok(())
        }
    }
}
