use std::io::Write;
use std::process::{Command, Stdio};

use regioncalc::cli::run;
use regioncalc::format::parse_matrix;
use regioncalc_core::Gf2Matrix;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn call(args: &[&str], input: &str) -> Out {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("regioncalc").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut stdout, &mut stderr);
    Out {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = call(&full, "");
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

/// Runs `regioncalc a | regioncalc b` through the real binary.
fn pipe(a: &[&str], b: &[&str]) -> (i32, String) {
    let bin = env!("CARGO_BIN_EXE_regioncalc");
    let first = Command::new(bin).args(a).output().unwrap();
    assert!(first.status.success());
    let mut second = Command::new(bin)
        .args(b)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    second.stdin.take().unwrap().write_all(&first.stdout).unwrap();
    let out = second.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn grid_classes_through_pipe() {
    let (code, out) = pipe(&["gen", "grid", "1", "1"], &["classes", "--rule", "modified"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "classes=2"), "{out}");
}

#[test]
fn example_matrix_through_pipe() {
    let (code, out) = pipe(&["gen", "planar", "fig8_kinked"], &["matrix", "--rule", "original"]);
    assert_eq!(code, 0);
    let m = parse_matrix(&out).unwrap();
    let expected =
        Gf2Matrix::from_strs(&["11000", "10110", "01111", "00001", "11100", "00110", "11011"]);
    assert!(m.permutation_equivalent(&expected), "{out}");
}

#[test]
fn torus_rank_identity_through_pipe() {
    let (code, out) = pipe(&["gen", "torus_pq", "12", "8"], &["verify-thm4"]);
    assert_eq!(code, 0);
    assert!(out.contains("holds=true"));
}

#[test]
fn output_is_deterministic() {
    let d = gen(&["meridian", "6"]);
    for args in [
        &["info"][..],
        &["matrix", "--rule", "original"],
        &["homology"],
        &["moves", "trial", "--steps", "30", "--seed", "4"],
        &["gl", "--json"],
    ] {
        let a = call(args, &d);
        let b = call(args, &d);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn info_and_faces() {
    let d = gen(&["grid", "2", "2"]);
    let out = call(&["info"], &d);
    assert_eq!(out.code, 0);
    for line in ["crossings=4", "components=4", "genus=1", "regions=4"] {
        assert!(out.stdout.lines().any(|l| l == line), "{line}\n{}", out.stdout);
    }
    let faces = call(&["faces"], &d);
    assert!(faces.stdout.starts_with("face0.region="));
}

#[test]
fn rank_solve_equivalent() {
    let d = gen(&["planar", "trefoil"]);
    let out = call(&["rank", "--rule", "original"], &d);
    assert!(out.stdout.contains("rank=3"), "{}", out.stdout);
    let out = call(&["solve", "--crossings", "0"], &d);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("solvable=true"));
    let out = call(&["solve", "--crossings", "nope"], &d);
    assert_eq!(out.code, 2);

    let dir = std::env::temp_dir().join(format!("regioncalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let other = dir.join("other.txt");
    std::fs::write(&other, d.replacen("over=1", "over=0", 1)).unwrap();
    let out = call(&["equivalent", other.to_str().unwrap()], &d);
    assert_eq!((out.code, out.stdout.contains("equivalent=true")), (0, true));

    let hopf = gen(&["planar", "hopf"]);
    std::fs::write(&other, hopf.replacen("over=1", "over=0", 1)).unwrap();
    let out = call(&["equivalent", other.to_str().unwrap()], &hopf);
    assert_eq!((out.code, out.stdout.contains("equivalent=false")), (1, true));
}

#[test]
fn colorable_tait_linking() {
    let out = call(&["colorable"], &gen(&["grid", "1", "1"]));
    assert_eq!((out.code, out.stdout.as_str()), (1, "colorable=false\n"));
    let hopf = gen(&["planar", "hopf"]);
    let out = call(&["tait"], &hopf);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("nullity=2"));
    let out = call(&["linking"], &hopf);
    assert!(out.stdout.contains("unknotting_criterion=false"));
    let flipped = call(&["linking", "--reverse", "1"], &hopf);
    assert!(flipped.stdout.contains("lk1=0,-1") || flipped.stdout.contains("lk1=0,1"));
    assert_ne!(out.stdout, flipped.stdout);
    assert_eq!(call(&["linking", "--reverse", "3"], &hopf).code, 2);
}

#[test]
fn homology_json() {
    let out = call(&["homology", "--json"], &gen(&["grid", "2", "2"]));
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["n_rank"], 2);
    assert_eq!(v["null_basis"].as_array().unwrap().len(), 2);
}

#[test]
fn moves_list_apply_trial() {
    let d = gen(&["planar", "trefoil"]);
    let list = call(&["moves", "list"], &d);
    assert!(list.stdout.starts_with("count="));
    let applied = call(&["moves", "apply", "--site", "0"], &d);
    assert_eq!(applied.code, 0);
    let info = call(&["info"], &applied.stdout);
    assert!(info.stdout.contains("crossings=4"), "{}", info.stdout);
    assert_eq!(call(&["moves", "apply", "--site", "100000"], &d).code, 2);
    let trial = call(&["moves", "trial", "--steps", "50", "--seed", "9"], &d);
    assert_eq!(trial.code, 0);
    assert!(trial.stdout.contains("constant=true"));
}

#[test]
fn gl_limits() {
    let d = gen(&["grid", "2", "2"]);
    let out = call(&["gl"], &d);
    assert!(out.stdout.contains("component_count=8"));
    let out = call(&["gl", "--rule", "original", "--limit", "3"], &d);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("limit 3"));

    let bin = env!("CARGO_BIN_EXE_regioncalc");
    let mut child = Command::new(bin)
        .arg("gl")
        .env("REGIONCALC_GL_LIMIT", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(d.as_bytes()).unwrap();
    assert_eq!(child.wait().unwrap().code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["frobnicate"], "").code, 2);
    assert_eq!(call(&["gen", "grid", "1"], "").code, 2);
    assert_eq!(call(&["gen", "planar", "unknot9"], "").code, 2);
    assert_eq!(call(&["matrix", "--rule", "both"], "").code, 2);
    let out = call(&["info"], "surface_diagram v1\nmarker 0 a b\n");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("edge label"));
    assert_eq!(call(&["--help"], "").code, 0);
}
