use std::path::Path;
use std::process::{Command, Output};

use polyflow::catalog::{make_family, FamilySpec};
use polyflow::io::read_surface;

fn polyflow(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyflow")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn make_then_classify_torus_barrier() {
    let dir = tempfile::tempdir().unwrap();
    let o = polyflow(dir.path(), &["make", "--family", "torus_barrier", "--param", "l=1/2", "--param", "eta=0", "--out", "t.surf"]);
    assert!(o.status.success());
    let o = polyflow(dir.path(), &["classify", "t.surf"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "rational, N=1");
}

#[test]
fn written_surface_reads_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let o = polyflow(dir.path(), &["make", "--family", "band_tilted_rect", "--param", "theta=1/5"]);
    let back = read_surface(&stdout(&o)).unwrap();
    let direct = make_family(&FamilySpec::new("band_tilted_rect").with("theta", "1/5")).unwrap();
    assert_eq!(back, direct);
}

#[test]
fn trace_writes_an_svg() {
    let dir = tempfile::tempdir().unwrap();
    polyflow(dir.path(), &["make", "--family", "torus_barrier", "--param", "l=1/2", "--out", "t.surf"]);
    let o = polyflow(
        dir.path(),
        &["trace", "t.surf", "--start", "0.1,0.4", "--theta-rad", "0.7", "--events", "200", "--svg", "orbit.svg"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(dir.path().join("orbit.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 200);
}

#[test]
fn horizontal_barrier_band_is_transient() {
    let dir = tempfile::tempdir().unwrap();
    polyflow(dir.path(), &["make", "--family", "band_horizontal_barriers", "--out", "h.surf"]);
    let o = polyflow(dir.path(), &["recurrence", "h.surf", "--theta", "1/3", "--orbits", "100", "--returns", "1000", "--seed", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("verdict: TransientEvidence"));
}

#[test]
fn seeded_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    polyflow(dir.path(), &["make", "--family", "band_barriers", "--out", "b.surf"]);
    let run = |csv: &str, report: &str| {
        let o = polyflow(
            dir.path(),
            &["recurrence", "b.surf", "--theta-rad", "0.9", "--orbits", "40", "--returns", "300", "--seed", "11", "--csv", csv, "--report", report],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap();
        (read(csv), read(report))
    };
    let a = run("a.csv", "a.json");
    let b = run("b.csv", "b.json");
    assert_eq!(a, b);
    let header = String::from_utf8(a.0).unwrap();
    assert!(header.starts_with("index,theta,status,"));
    assert!(String::from_utf8(a.1).unwrap().contains("\"schema\": 1"));
    let mc = |seed: &str| stdout(&polyflow(dir.path(), &["--format", "json", "--seed", seed, "centering", "b.surf", "--theta", "1/3", "--method", "mc", "--samples", "5000"]));
    assert_eq!(mc("3"), mc("3"));
}

#[test]
fn exit_statuses() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(polyflow(dir.path(), &["frobnicate"]).status.code(), Some(64));
    assert_eq!(polyflow(dir.path(), &["classify", "missing.surf", "--unknown-flag"]).status.code(), Some(64));
    assert_eq!(polyflow(dir.path(), &["classify", "missing.surf"]).status.code(), Some(74));
    std::fs::write(dir.path().join("bad.surf"), "cell\nv 0 0\nv 1 0\n").unwrap();
    assert_eq!(polyflow(dir.path(), &["validate", "bad.surf"]).status.code(), Some(2));
    assert_eq!(polyflow(dir.path(), &["make", "--family", "torus_barrier", "--param", "l=3"]).status.code(), Some(2));
    assert_eq!(polyflow(dir.path(), &["--help"]).status.code(), Some(0));
    // exact and float angles are never coerced into each other
    polyflow(dir.path(), &["make", "--family", "torus_barrier", "--out", "t.surf"]);
    let o = polyflow(dir.path(), &["trace", "t.surf", "--start", "0.1,0.4", "--theta", "0.7"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn classify_arithmetic_reports_tilings() {
    let dir = tempfile::tempdir().unwrap();
    polyflow(dir.path(), &["make", "--family", "origami_staircase", "--out", "o.surf"]);
    let o = stdout(&polyflow(dir.path(), &["classify", "o.surf", "--arithmetic", "--theta", "1/2"]));
    assert!(o.contains("square-tiled: 3 squares"), "{o}");
    polyflow(dir.path(), &["make", "--family", "torus_barrier", "--param", "eta=1/7", "--out", "t.surf"]);
    let o = stdout(&polyflow(dir.path(), &["classify", "t.surf", "--arithmetic"]));
    assert!(o.contains("NotSquareTiled"), "{o}");
}

#[test]
fn unfold_and_amenability() {
    let dir = tempfile::tempdir().unwrap();
    polyflow(dir.path(), &["make", "--family", "band_rect_obstacles", "--out", "r.surf"]);
    let o = polyflow(dir.path(), &["unfold", "r.surf", "--out", "cover.surf"]);
    assert!(o.status.success());
    let cover = read_surface(&std::fs::read_to_string(dir.path().join("cover.surf")).unwrap()).unwrap();
    assert!(cover.boundary().is_empty());
    let o = stdout(&polyflow(dir.path(), &["amenability", "--family", "band_tilted_rect", "--max-den", "8"]));
    assert!(o.trim_end().ends_with("(1.0000)"), "{o}");
}
