//! Binary-level tests: exit-code discipline, error codes on the
//! diagnostic stream, output formats, and determinism of primary output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cadc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cadc"))
}

fn run(args: &[&str]) -> Output {
    cadc().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cadc-test-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn build_f1(dir: &Path) -> PathBuf {
    let out = dir.join("f1.state");
    let o = run(&[
        "build",
        "--vars",
        "x1,x2",
        "--polys",
        "x1^2 + x2^2 - 1; x1^3 - x2^2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    out
}

#[test]
fn build_reports_cell_counts() {
    let dir = tmpdir("build");
    let state = build_f1(&dir);
    let o = run(&[
        "build",
        "--vars",
        "x1,x2",
        "--polys",
        "x1^2 + x2^2 - 1; x1^3 - x2^2",
        "--out",
        state.to_str().unwrap(),
    ]);
    let out = stdout(&o);
    assert!(out.contains("cells level=1 total=9 open=5"), "{out}");
    assert!(out.contains("cells level=2 total=17 open=17"), "{out}");
}

#[test]
fn build_is_byte_deterministic() {
    let dir = tmpdir("determinism");
    let a = dir.join("a.state");
    let b = dir.join("b.state");
    for out in [&a, &b] {
        let o = run(&[
            "build",
            "--vars",
            "x1,x2",
            "--polys",
            "x1^2 + x2^2 - 1; x1^3 - x2^2",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let ba = std::fs::read(&a).unwrap();
    let bb = std::fs::read(&b).unwrap();
    assert_eq!(ba, bb, "identical invocations must write identical states");
}

#[test]
fn build_empty_input_is_error_2() {
    let dir = tmpdir("empty");
    let polys = dir.join("empty.txt");
    std::fs::write(&polys, "# nothing here\n").unwrap();
    let o = run(&[
        "build",
        "--vars",
        "x1,x2",
        "--polys",
        polys.to_str().unwrap(),
        "--out",
        dir.join("x.state").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E_EMPTY_INPUT"), "{}", stderr(&o));
}

#[test]
fn build_unknown_variable_is_error_2() {
    let dir = tmpdir("unknownvar");
    let o = run(&[
        "build",
        "--vars",
        "x1,x2",
        "--polys",
        "x3 + 1",
        "--out",
        dir.join("x.state").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E_UNKNOWN_VAR"), "{}", stderr(&o));
}

#[test]
fn add_zero_polynomial_is_error_2() {
    let dir = tmpdir("addzero");
    let state = build_f1(&dir);
    let o = run(&[
        "add",
        "--state",
        state.to_str().unwrap(),
        "--poly",
        "0",
        "--out",
        dir.join("y.state").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E_ZERO_POLY"), "{}", stderr(&o));
}

#[test]
fn add_duplicate_reports_and_succeeds() {
    let dir = tmpdir("adddup");
    let state = build_f1(&dir);
    let o = run(&[
        "add",
        "--state",
        state.to_str().unwrap(),
        "--poly",
        "x1^2 + x2^2 - 1",
        "--out",
        dir.join("dup.state").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("duplicate input, state unchanged"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn add_reports_new_unchanged_split() {
    let dir = tmpdir("addsplit");
    let state = build_f1(&dir);
    let o = run(&[
        "add",
        "--state",
        state.to_str().unwrap(),
        "--poly",
        "x1^3 + x2^2",
        "--out",
        dir.join("f3.state").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("new base points: 1"), "{out}");
    assert!(out.contains("cells level=1 total=11 new=3 unchanged=8"), "{out}");
    assert!(out.contains("cells level=2 total=26 new=13 unchanged=13"), "{out}");
    // Timing is a diagnostic, not primary output.
    assert!(!out.contains("ms"), "timing leaked to stdout: {out}");
    assert!(stderr(&o).contains("projection:"), "{}", stderr(&o));
}

#[test]
fn cells_bad_level_is_usage_error() {
    let dir = tmpdir("cellslevel");
    let state = build_f1(&dir);
    let o = run(&[
        "cells",
        "--state",
        state.to_str().unwrap(),
        "--level",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn cells_text_lists_base_cells() {
    let dir = tmpdir("cellstext");
    let state = build_f1(&dir);
    let o = run(&["cells", "--state", state.to_str().unwrap(), "--level", "1"]);
    let out = stdout(&o);
    assert!(out.contains("a1 = {x1 < -1}"), "{out}");
    assert!(out.contains("a9 = {1 < x1}"), "{out}");
    assert!(out.contains("root(x^3 + x^2 - 1"), "{out}");
}

#[test]
fn cells_json_is_valid() {
    let dir = tmpdir("cellsjson");
    let state = build_f1(&dir);
    let o = run(&[
        "cells",
        "--state",
        state.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 9 + 17);
}

#[test]
fn check_passes_on_fresh_and_added_states() {
    let dir = tmpdir("check");
    let state = build_f1(&dir);
    let o = run(&["check", "--state", state.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));

    let f3 = dir.join("f3.state");
    run(&[
        "add",
        "--state",
        state.to_str().unwrap(),
        "--poly",
        "x1^3 + x2^2",
        "--out",
        f3.to_str().unwrap(),
    ]);
    let o2 = run(&["check", "--state", f3.to_str().unwrap()]);
    assert_eq!(o2.status.code(), Some(0), "{}", stdout(&o2));
}

#[test]
fn check_fails_on_corrupted_state() {
    let dir = tmpdir("checkfail");
    let state = build_f1(&dir);
    // Move the base section at x1 = 1 to x1 = 2 without touching its
    // neighbours: the tree no longer matches a recomputation.
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&state).unwrap()).unwrap();
    let cells = doc["tree"]["levels"][0]["cells"].as_array_mut().unwrap();
    let section = &mut cells[7];
    assert_eq!(section["kind"], "section");
    section["lower"]["root"]["value"] = "2/1".into();
    section["upper"]["root"]["value"] = "2/1".into();
    section["sample"][0] = "2/1".into();
    let bad = dir.join("bad.state");
    std::fs::write(&bad, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let o = run(&["check", "--state", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"), "{}", stdout(&o));
}

#[test]
fn load_rejects_schema_violations_with_code() {
    let dir = tmpdir("schema");
    let state = build_f1(&dir);
    let text = std::fs::read_to_string(&state).unwrap();
    let bad = dir.join("trunc.state");
    std::fs::write(&bad, &text[..text.len() / 3]).unwrap();
    let o = run(&["cells", "--state", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E_SCHEMA"), "{}", stderr(&o));
}

#[test]
fn plot_svg_and_csv() {
    let dir = tmpdir("plot");
    let state = build_f1(&dir);
    let svg = dir.join("f1.svg");
    let o = run(&[
        "plot",
        "--state",
        state.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
        "--window",
        "-2,2,-2,2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    // Four dashed vertical projection-root lines: −1, 0, α1, 1.
    assert_eq!(svg_text.matches("stroke-dasharray=\"6,4\"").count(), 4);

    let csv = dir.join("f1.csv");
    let o2 = run(&[
        "plot",
        "--state",
        state.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o2.status.code(), Some(0));
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("index,lower,upper,sample\n"));
    assert_eq!(csv_text.lines().count(), 1 + 9 + 17);
    assert!(csv_text.contains("0.754878") || csv_text.contains("0.754877"), "{csv_text}");
}

#[test]
fn plot_f2_has_six_projection_root_lines() {
    let dir = tmpdir("plotf2");
    let state = dir.join("f2.state");
    let o = run(&[
        "build",
        "--vars",
        "x1,x2",
        "--polys",
        "x1^2 + x2^2 - 1; x1^3 - x2^2; x2 - x1",
        "--out",
        state.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = dir.join("f2.svg");
    let o2 = run(&[
        "plot",
        "--state",
        state.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
        "--window=-2,2,-2,2",
    ]);
    assert_eq!(o2.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    // ±1/√2 join −1, 0, α1, 1: six dashed projection-root lines.
    assert_eq!(text.matches("stroke-dasharray=\"6,4\"").count(), 6);
}

#[test]
fn cells_lists_eleven_after_add() {
    let dir = tmpdir("cells11");
    let state = build_f1(&dir);
    let f3 = dir.join("f3.state");
    run(&[
        "add",
        "--state",
        state.to_str().unwrap(),
        "--poly",
        "x1^3 + x2^2",
        "--out",
        f3.to_str().unwrap(),
    ]);
    let o = run(&["cells", "--state", f3.to_str().unwrap(), "--level", "1"]);
    let out = stdout(&o);
    assert!(out.contains("a11 = {1 < x1}"), "{out}");
    assert!(out.contains("a4 = {x1 = root("), "{out}");
}

#[test]
fn plot_rejects_non_bivariate_states() {
    let dir = tmpdir("plot3");
    let state = dir.join("tri.state");
    let o = run(&[
        "build",
        "--vars",
        "x1,x2,x3",
        "--polys",
        "x1 + x2 + x3",
        "--out",
        state.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o2 = run(&[
        "plot",
        "--state",
        state.to_str().unwrap(),
        "--out",
        dir.join("t.svg").to_str().unwrap(),
    ]);
    assert_eq!(o2.status.code(), Some(64));
}

#[test]
fn plot_rejects_bad_window() {
    let dir = tmpdir("plotwin");
    let state = build_f1(&dir);
    let o = run(&[
        "plot",
        "--state",
        state.to_str().unwrap(),
        "--out",
        dir.join("w.svg").to_str().unwrap(),
        "--window",
        "2,-2,0,1",
    ]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn bench_single_pair_is_deterministic() {
    let o1 = run(&[
        "bench", "--dims", "2", "--count", "1", "--seed", "9", "--format", "json",
    ]);
    assert_eq!(o1.status.code(), Some(0), "{}", stderr(&o1));
    let v1: serde_json::Value = serde_json::from_str(&stdout(&o1)).unwrap();
    assert_eq!(v1["equivalence_failures"], 0);
    assert_eq!(v1["pairs_run"], 1);
    let o2 = run(&[
        "bench", "--dims", "2", "--count", "1", "--seed", "9", "--format", "json",
    ]);
    let v2: serde_json::Value = serde_json::from_str(&stdout(&o2)).unwrap();
    assert_eq!(v2["equivalence_failures"], 0);
}

#[test]
fn bench_rejects_bad_flags() {
    let o = run(&["bench", "--dims", "4", "--count", "1"]);
    assert_eq!(o.status.code(), Some(64));
    let o2 = run(&["bench", "--dims", "2", "--count", "0"]);
    assert_eq!(o2.status.code(), Some(64));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let o = run(&["build", "--nonsense"]);
    assert_eq!(o.status.code(), Some(64));
    let o2 = run(&["--help"]);
    assert_eq!(o2.status.code(), Some(0));
}
