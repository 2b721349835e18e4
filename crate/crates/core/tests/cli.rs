use std::fs;
use std::path::Path;
use std::process::Command;

use ellgrid::geometry::PolylineBoundary;

fn ellgrid(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ellgrid")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// x and y blocks of a GMV file.
fn gmv_coords(path: &Path) -> (Vec<f64>, Vec<f64>) {
    let s = fs::read_to_string(path).unwrap();
    let mut blocks = s.split("\n\n").map(|b| {
        b.lines()
            .last()
            .unwrap()
            .split_whitespace()
            .map(|t| t.parse::<f64>().unwrap())
            .collect::<Vec<_>>()
    });
    (blocks.next().unwrap(), blocks.next().unwrap())
}

#[test]
fn square_boundary_file_gives_uniform_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("square.csv");
    let mut buf = Vec::new();
    PolylineBoundary::unit_square(9, 9).unwrap().write_csv(&mut buf).unwrap();
    fs::write(&csv, buf).unwrap();
    let gmv = dir.path().join("m.gmv");
    let (code, err) = ellgrid(&["--nx", "9", "--ny", "9", "--boundary", p(&csv), "--out-gmv", p(&gmv)]);
    assert_eq!(code, 0, "{err}");
    let (x, y) = gmv_coords(&gmv);
    assert_eq!(x.len(), 81);
    for k in 0..81 {
        assert!((x[k] - (k % 9) as f64 / 8.0).abs() < 1e-8);
        assert!((y[k] - (k / 9) as f64 / 8.0).abs() < 1e-8);
    }
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.m"), dir.path().join("b.m"));
    for out in [&a, &b] {
        let (code, err) = ellgrid(&["--nx", "17", "--ny", "13", "--cluster", "bound:X:0.5", "--max-iter", "1000", "--out-matlab", p(out)]);
        assert_eq!(code, 0, "{err}");
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn no_control_ignores_clustering() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.gmv"), dir.path().join("b.gmv"));
    let (c1, _) = ellgrid(&["--nx", "17", "--ny", "17", "--cluster", "two:Y:0.3:0.7", "--no-control", "--out-gmv", p(&a)]);
    let (c2, _) = ellgrid(&["--nx", "17", "--ny", "17", "--out-gmv", p(&b)]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn unconverged_run_exits_two_and_still_writes() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("res.txt");
    let (code, err) = ellgrid(&["--max-iter", "1", "--tol", "0", "--out-residuals", p(&log)]);
    assert_eq!(code, 2, "{err}");
    let s = fs::read_to_string(&log).unwrap();
    assert_eq!(s.lines().count(), 1);
    assert!(s.starts_with("1 "));
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let cases: [&[&str]; 5] = [
        &["--out-svg", p(&out)],
        &["--nx", "2", "--out-svg", p(&out)],
        &["--cluster", "near:Z:0.5", "--out-svg", p(&out)],
        &["--omega", "2.5", "--out-svg", p(&out)],
        &["--boundary", "/nonexistent/boundary.csv", "--out-svg", p(&out)],
    ];
    for (k, args) in cases.iter().enumerate() {
        let args: Vec<&str> = if k == 0 { vec![] } else { args.to_vec() };
        let (code, _) = ellgrid(&args);
        assert_eq!(code, 1, "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(ellgrid(&["--help"]).0, 0);
}
