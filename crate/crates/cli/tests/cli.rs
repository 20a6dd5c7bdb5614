use std::path::Path;

use mub_entropy::format::{BasisSetJson, PureStateJson, StateJson};
use mub_entropy::LogBase;
use mub_entropy_cli::{
    dispatch_with, emit_csv, parse_csv, render_svg, run_sweep, ChartSpec, EXIT_FAILED, EXIT_OK,
    EXIT_USAGE,
};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn eur(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eur").chain(args.iter().copied());
    let code = dispatch_with(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sweep_writes_one_row_per_count() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let r = eur(&[
        "bounds",
        "sweep",
        "--dim",
        "7",
        "--base",
        "2",
        "--out",
        path_str(&csv),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert_eq!(parse_csv(&text).unwrap().len(), 8);
}

#[test]
fn sweep_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let file = eur(&["bounds", "sweep", "--dim", "11", "--out", path_str(&csv)]);
    let piped = eur(&["bounds", "sweep", "--dim", "11"]);
    assert_eq!(file.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), piped.out);
}

#[test]
fn composite_dimension_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let r = eur(&[
        "mubs",
        "gen",
        "--dim",
        "6",
        "--count",
        "2",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("not prime"), "{}", r.err);
    assert!(!out.exists());
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(eur(&["nonsense"]).code, EXIT_USAGE);
    assert_eq!(eur(&["bounds", "sweep"]).code, EXIT_USAGE);
    assert_eq!(
        eur(&["bounds", "sweep", "--dim", "5", "--base", "10"]).code,
        EXIT_USAGE
    );
    assert_eq!(eur(&["entropy", "eval", "--dim", "3"]).code, EXIT_USAGE);
    assert_eq!(
        eur(&["minimize", "--dim", "37", "--count", "1"]).code,
        EXIT_USAGE
    );
    let help = eur(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.out.contains("figure1"));
}

#[test]
fn failed_sweep_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let r = eur(&["bounds", "sweep", "--dim", "1", "--out", path_str(&csv)]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(!csv.exists());
    let missing = dir.path().join("no/such/dir/s.csv");
    let r = eur(&["bounds", "sweep", "--dim", "5", "--out", path_str(&missing)]);
    assert_eq!(r.code, EXIT_FAILED);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn empty_rows_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    assert!(emit_csv(&[], &csv).is_err());
    assert!(!csv.exists());
}

#[test]
fn csv_round_trips_to_six_digits() {
    let rows = run_sweep(1009, LogBase::two()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    emit_csv(&rows, &csv).unwrap();
    let back = parse_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(back.len(), rows.len());
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-5 * b.abs().max(1e-300) || a == b;
    for (a, b) in back.iter().zip(&rows) {
        assert_eq!(a.m, b.m);
        assert_eq!(a.best, b.best);
        assert!(rel(a.weak_pairwise, b.weak_pairwise));
        assert!(rel(a.weak_subtraction, b.weak_subtraction));
        assert!(rel(a.intermediate, b.intermediate));
        assert!(rel(a.refined, b.refined));
    }
}

#[test]
fn generated_sets_verify_and_corrupted_sets_fail() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    assert_eq!(
        eur(&[
            "mubs",
            "gen",
            "--dim",
            "5",
            "--count",
            "4",
            "--out",
            path_str(&file)
        ])
        .code,
        EXIT_OK
    );
    let r = eur(&["mubs", "verify", "--in", path_str(&file), "--tol", "1e-10"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    assert!(r.out.contains("PASS"));

    let mut json: BasisSetJson =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(json.bases.len(), 4);
    json.bases[2] = json.bases[0].clone();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&json).unwrap()).unwrap();
    let r = eur(&["mubs", "verify", "--in", path_str(&bad), "--format", "json"]);
    assert_eq!(r.code, EXIT_FAILED);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["passed"], false);
    assert!((v["max_unbiasedness_error"].as_f64().unwrap() - 0.8).abs() < 1e-12);
}

#[test]
fn entropy_eval_reads_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let pure = dir.path().join("zero.json");
    std::fs::write(&pure, r#"{"dim":2,"amplitudes":[[1,0],[0,0]]}"#).unwrap();
    let r = eur(&[
        "entropy",
        "eval",
        "--dim",
        "2",
        "--state",
        path_str(&pure),
        "--format",
        "json",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!((v["entropy_sum"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((v["purity_sum"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!(v["larsen_residual"].as_f64().unwrap() < 1e-12);

    let mixed = dir.path().join("mixed.json");
    std::fs::write(
        &mixed,
        r#"{"dim":2,"rows":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#,
    )
    .unwrap();
    let r = eur(&[
        "entropy",
        "eval",
        "--dim",
        "2",
        "--state",
        path_str(&mixed),
        "--base",
        "e",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!((v["entropy_sum"].as_f64().unwrap() - 3.0 * std::f64::consts::LN_2).abs() < 1e-12);
    assert!((v["purity_sum"].as_f64().unwrap() - 1.5).abs() < 1e-12);

    let r = eur(&["entropy", "eval", "--dim", "3", "--state", path_str(&pure)]);
    assert_ne!(r.code, EXIT_OK);

    let r = eur(&[
        "entropy", "eval", "--dim", "5", "--count", "3", "--random", "1", "--seed", "3",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("best lower bound"));
    assert!(!r.out.contains("larsen"));
}

#[test]
fn identity_check_passes() {
    let r = eur(&[
        "identity",
        "check",
        "--dim",
        "5",
        "--samples",
        "100",
        "--seed",
        "1",
        "--tol",
        "1e-9",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("PASS"));
    let r = eur(&[
        "identity",
        "check",
        "--dim",
        "3",
        "--samples",
        "5",
        "--tol",
        "0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["passed"] == true, r.code == EXIT_OK);
}

#[test]
fn seeded_commands_are_byte_reproducible() {
    for args in [
        &[
            "minimize",
            "--dim",
            "3",
            "--count",
            "2",
            "--restarts",
            "4",
            "--seed",
            "9",
            "--format",
            "json",
        ][..],
        &[
            "entropy", "eval", "--dim", "7", "--random", "3", "--seed", "5", "--format", "json",
        ][..],
        &[
            "identity",
            "check",
            "--dim",
            "3",
            "--samples",
            "20",
            "--seed",
            "2",
        ][..],
    ] {
        let a = eur(args);
        let b = eur(args);
        assert_eq!(a.code, EXIT_OK, "{args:?}: {}", a.err);
        assert_eq!(a.out, b.out, "{args:?}");
    }
}

#[test]
fn minimize_prints_argmin_state() {
    let r = eur(&[
        "minimize",
        "--dim",
        "2",
        "--count",
        "2",
        "--restarts",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert!((v["min_value"].as_f64().unwrap() - 1.0).abs() < 1e-4);
    let argmin: PureStateJson = serde_json::from_value(v["argmin"].clone()).unwrap();
    assert!(argmin.to_state::<f64>().is_ok());
    let state: StateJson = serde_json::from_value(v["argmin"].clone()).unwrap();
    assert!(matches!(state, StateJson::Pure(_)));

    let r = eur(&["minimize", "--dim", "3", "--count", "1", "--restarts", "2"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("argmin"));
}

fn plot(svg: &str) -> (roxmltree::Document<'_>,) {
    (roxmltree::Document::parse(svg).expect("well-formed SVG"),)
}

#[test]
fn svg_structure_and_consistency_with_csv() {
    let rows = run_sweep(1009, LogBase::two()).unwrap();
    let svg = render_svg(&rows, &ChartSpec::for_sweep(&rows, 1009, "bits")).unwrap();
    let (doc,) = plot(&svg);
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let attr = |n: &str| root.attribute(n).unwrap().parse::<f64>().unwrap();
    let (x0, x1, y0, y1) = (
        attr("data-x-min"),
        attr("data-x-max"),
        attr("data-y-min"),
        attr("data-y-max"),
    );
    let (left, top, w, h) = (
        attr("data-left"),
        attr("data-top"),
        attr("data-plot-width"),
        attr("data-plot-height"),
    );
    assert!(
        y0 < 0.0,
        "axis must extend below zero for the subtraction bound"
    );

    let polylines: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("polyline"))
        .collect();
    assert!(polylines.len() >= 3);
    let span = y1 - y0;
    for line in polylines {
        let name = line.attribute("data-series").unwrap();
        let dashed = line.attribute("stroke-dasharray").is_some();
        assert_eq!(dashed, name.starts_with("weak_"), "{name}");
        let points: Vec<(f64, f64)> = line
            .attribute("points")
            .unwrap()
            .split_whitespace()
            .map(|p| {
                let (a, b) = p.split_once(',').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            })
            .collect();
        assert_eq!(points.len(), rows.len());
        for ((px, py), row) in points.iter().zip(&rows) {
            let m = x0 + (px - left) / w * (x1 - x0);
            let y = y0 + (1.0 - (py - top) / h) * (y1 - y0);
            let want = match name {
                "refined" => row.refined,
                "intermediate" => row.intermediate,
                "weak_pairwise" => row.weak_pairwise,
                "weak_subtraction" => row.weak_subtraction,
                other => panic!("unexpected series {other}"),
            };
            assert!((m - row.m as f64).abs() < 0.5);
            assert!(
                (y - want).abs() <= 0.005 * span,
                "{name} M={}: {y} vs {want}",
                row.m
            );
        }
    }
}

#[test]
fn single_row_chart_is_valid() {
    let rows = run_sweep(5, LogBase::two()).unwrap()[2..3].to_vec();
    let svg = render_svg(&rows, &ChartSpec::for_sweep(&rows, 5, "bits")).unwrap();
    let (doc,) = plot(&svg);
    assert_eq!(
        doc.descendants()
            .filter(|n| n.has_tag_name("circle"))
            .count(),
        4
    );
}

#[test]
fn figure1_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let svg = dir.path().join("f.svg");
    let r = eur(&["figure1", "--csv", path_str(&csv), "--svg", path_str(&svg)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(
        parse_csv(&std::fs::read_to_string(&csv).unwrap())
            .unwrap()
            .len(),
        1010
    );
    roxmltree::Document::parse(&std::fs::read_to_string(&svg).unwrap()).unwrap();
    assert!(r.out.contains("weak bounds cross"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_eur");
    let ok = std::process::Command::new(bin)
        .args(["bounds", "sweep", "--dim", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), 5);
    let bad = std::process::Command::new(bin)
        .args(["mubs", "gen", "--dim", "9", "--out", "/dev/null"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}
