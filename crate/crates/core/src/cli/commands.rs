use serde::Serialize;
use serde_json::json;

use polyflow::catalog::{amenability_check, angle_parameter, make_family, rational_angle_grid, FamilySpec};
use polyflow::geometry::{validate_conditions, vertex_angles, Surface};
use polyflow::holonomy::{rotational_holonomy, RotationalGroup, DEFAULT_CAP};
use polyflow::io::write_surface;
use polyflow::unfolding::{canonical_translation_cover, classify_direction, is_square_tiled};

use super::args::{Cli, Command, Format};
use super::dynamics;
use super::output::{emit, json, load, validation};
use super::CliError;

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Make { family, params, out } => {
            let s = make_family(&family_spec(family, params)?).map_err(validation)?;
            emit(out.as_ref(), &write_surface(&s))
        }
        Command::Validate { surface } => validate(cli, &load(surface)?),
        Command::Classify { surface, arithmetic, bound, theta } => {
            classify(cli, &load(surface)?, *arithmetic, *bound, theta.angle()?)
        }
        Command::Unfold { surface, out } => {
            let cover = canonical_translation_cover(&load(surface)?).map_err(validation)?;
            eprintln!("degree {}", cover.degree);
            emit(out.as_ref(), &write_surface(&cover.total))
        }
        Command::Amenability { family, params, angle_param, max_den } => {
            let spec = family_spec(family, params)?;
            let param = match angle_param.as_deref().or_else(|| angle_parameter(family)) {
                Some(p) => p.to_string(),
                None => return Err(CliError::Usage(format!("family {family} has no angle parameter; pass --angle-param"))),
            };
            let report = amenability_check(&spec, &param, &rational_angle_grid(*max_den));
            if cli.format == Some(Format::Json) {
                emit(None, &json(&report)?)
            } else {
                for p in &report.points {
                    let n = p.n.map_or("-".to_string(), |n| n.to_string());
                    println!("{}={}\trational={}\tN={n}", report.parameter, p.value, p.rational);
                }
                println!("even N at {} of {} rational points ({:.4})", report.n_even, report.n_rational, report.even_fraction);
                Ok(())
            }
        }
        other => dynamics::run(cli, other),
    }
}

fn family_spec(family: &str, params: &[String]) -> Result<FamilySpec, CliError> {
    let mut spec = FamilySpec::new(family);
    for kv in params {
        spec.set(kv).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(spec)
}

#[derive(Serialize)]
struct VertexRow {
    kind: String,
    angle: String,
    corners: usize,
    truncated: bool,
}

fn validate(cli: &Cli, s: &Surface) -> Result<(), CliError> {
    let vm = vertex_angles(s);
    let report = validate_conditions(s, s.bbox(), cli.tolerance);
    let vertices: Vec<VertexRow> = vm
        .classes
        .iter()
        .map(|v| VertexRow {
            kind: format!("{:?}", v.kind),
            angle: v.total_angle.to_string(),
            corners: v.corners.len(),
            truncated: v.truncated,
        })
        .collect();
    if cli.format == Some(Format::Json) {
        return emit(
            None,
            &json(json!({
                "cells": s.cells().len(),
                "gluings": s.gluings().len(),
                "boundary_edges": s.boundary().len(),
                "vertices": vertices,
                "conditions": report,
            }))?,
        );
    }
    println!(
        "valid: {} cells, {} gluings, {} boundary edges, {} vertices ({} singular)",
        s.cells().len(),
        s.gluings().len(),
        s.boundary().len(),
        vm.classes.len(),
        vm.singular().count()
    );
    for v in vertices.iter().filter(|v| v.kind != "RegularInterior" && v.kind != "RegularBoundary") {
        println!("  {} angle {}π", v.kind, v.angle);
    }
    println!(
        "condition A: {}; condition B flag: {}; condition C: {}",
        report.condition_a, report.condition_b_flag, report.condition_c
    );
    Ok(())
}

fn classify(cli: &Cli, s: &Surface, arithmetic: bool, bound: i64, theta: Option<polyflow::angle::Angle>) -> Result<(), CliError> {
    let group = rotational_holonomy(s, DEFAULT_CAP).map_err(validation)?;
    let (rational, n, dihedral) = match &group {
        RotationalGroup::Finite { n, dihedral, .. } => (true, Some(*n), *dihedral),
        RotationalGroup::ExceedsCap { .. } => (false, None, false),
    };
    let tiling = if arithmetic { Some(is_square_tiled(s, bound)) } else { None };
    if cli.format == Some(Format::Json) {
        let arith = tiling.as_ref().map(|t| match t {
            Ok(t) => json!({ "square_tiled": true, "tiling": t }),
            Err(e) => json!({ "square_tiled": false, "reason": e.to_string() }),
        });
        let direction = match (&tiling, theta) {
            (Some(Ok(t)), Some(a)) => Some(classify_direction(a, t)),
            _ => None,
        };
        return emit(
            None,
            &json(json!({ "rational": rational, "n": n, "dihedral": dihedral, "arithmetic": arith, "direction": direction }))?,
        );
    }
    match n {
        Some(n) => println!("rational, N={n}"),
        None => println!("irrational (holonomy exceeds {DEFAULT_CAP} elements)"),
    }
    match tiling {
        Some(Ok(t)) => {
            let aspect = t.aspect.map_or("irrational".to_string(), |q| q.to_string());
            println!(
                "square-tiled: {} squares, unit {}x{}, shear {}, aspect {aspect}",
                t.len(),
                t.unit[0],
                t.unit[1],
                t.shear
            );
            if let Some(a) = theta {
                println!("direction {a}: {:?}", classify_direction(a, &t));
            }
        }
        Some(Err(e)) => println!("NotSquareTiled: {e}"),
        None => {}
    }
    Ok(())
}
