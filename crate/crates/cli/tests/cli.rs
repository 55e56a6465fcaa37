//! End-to-end runs of the `unireduce` binary on small hand-checkable inputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_unireduce"));
    cmd.args(args).env_remove("UNIREDUCE_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output {
        status,
        stdout,
        stderr,
    } = cmd.output().expect("binary runs");
    Run {
        code: status.code().expect("exited normally"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with(args, &[])
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn real_matrix(rows: &[&[f64]]) -> Value {
    json!({"rows": rows.iter().map(|r| r.iter().map(|&x| [x, 0.0]).collect::<Vec<_>>()).collect::<Vec<_>>()})
}

fn vector(entries: &[f64]) -> Value {
    json!({"entries": entries.iter().map(|&x| [x, 0.0]).collect::<Vec<_>>()})
}

/// Closes `generators` and returns the path of the written group file.
fn group(dir: &TempDir, name: &str, generators: Vec<Value>) -> PathBuf {
    let input = write(
        dir,
        &format!("{name}.in.json"),
        &json!({"generators": generators}),
    );
    let out = dir.path().join(format!("{name}.json"));
    let r = run(&["closure", "--in", s(&input), "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    out
}

fn s3_generators() -> Vec<Value> {
    vec![
        real_matrix(&[&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]),
        real_matrix(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]),
    ]
}

fn pauli_generators() -> Vec<Value> {
    vec![
        real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]]),
        real_matrix(&[&[1.0, 0.0], &[0.0, -1.0]]),
    ]
}

fn identity(n: usize) -> Value {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    real_matrix(&refs)
}

#[test]
fn closure_orders_and_cap() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s3.in.json", &json!({"generators": s3_generators()}));
    let out = dir.path().join("s3.json");
    let r = run(&["closure", "--in", s(&input), "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json(), json!({"order": 6, "dim": 3}));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["elements"].as_array().unwrap().len(), 6);

    let input = write(&dir, "id.in.json", &json!({"generators": [identity(2)]}));
    let r = run(&[
        "closure",
        "--in",
        s(&input),
        "--out",
        s(&dir.path().join("id.json")),
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["order"], 1);

    let (c, si) = (1f64.cos(), 1f64.sin());
    let rotation = real_matrix(&[&[c, -si], &[si, c]]);
    let input = write(&dir, "rot.in.json", &json!({"generators": [rotation]}));
    let r = run(&[
        "closure",
        "--in",
        s(&input),
        "--out",
        s(&dir.path().join("rot.json")),
    ]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    let r = run(&[
        "closure",
        "--in",
        s(&input),
        "--out",
        s(&dir.path().join("rot.json")),
        "--cap",
        "50",
    ]);
    assert_eq!(r.code, 3);
}

#[test]
fn closure_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (name, gens) in [("s3", s3_generators()), ("pauli", pauli_generators())] {
        let first = group(&dir, name, gens);
        let second = dir.path().join(format!("{name}.again.json"));
        let r = run(&["closure", "--in", s(&first), "--out", s(&second)]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(
            std::fs::read(&first).unwrap(),
            std::fs::read(&second).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn closure_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let r = run(&[
        "closure",
        "--in",
        s(&bad),
        "--out",
        s(&dir.path().join("o.json")),
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("malformed JSON"), "{}", r.stderr);

    let shear = write(
        &dir,
        "shear.json",
        &json!({"generators": [real_matrix(&[&[1.0, 1.0], &[0.0, 1.0]])]}),
    );
    let r = run(&[
        "closure",
        "--in",
        s(&shear),
        "--out",
        s(&dir.path().join("o.json")),
    ]);
    assert_eq!(r.code, 1, "{}", r.stderr);

    let r = run(&[
        "closure",
        "--in",
        s(&dir.path().join("missing.json")),
        "--out",
        s(&bad),
    ]);
    assert_eq!(r.code, 1);
    let r = run(&["frobnicate"]);
    assert_eq!(r.code, 1);
}

#[test]
fn defect_examples() {
    let dir = TempDir::new().unwrap();
    let xi = write(&dir, "xi3.json", &vector(&[0.3, -0.5, 0.8]));

    let trivial = group(&dir, "trivial", vec![identity(3)]);
    let r = run(&["defect", "--group", s(&trivial), "--xi", s(&xi)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["weak_defect"], 0.0);

    let minus = group(
        &dir,
        "minus",
        vec![real_matrix(&[&[-1.0, 0.0], &[0.0, -1.0]])],
    );
    let xi2 = write(&dir, "xi2.json", &vector(&[0.6, 0.8]));
    let r = run(&["defect", "--group", s(&minus), "--xi", s(&xi2)]);
    let report = r.json();
    assert_eq!(report["weak_defect"], 0.0);
    assert!((report["strong_defect"].as_f64().unwrap() - 2.0).abs() < 1e-15);

    let s3 = group(&dir, "s3", s3_generators());
    let e1 = write(&dir, "e1.json", &vector(&[1.0, 0.0, 0.0]));
    let r = run(&["defect", "--group", s(&s3), "--xi", s(&e1)]);
    assert_eq!(r.json()["weak_defect"], 1.0);
    assert_eq!(r.json()["moduli"].as_array().unwrap().len(), 6);

    let r = run(&["defect", "--group", s(&s3), "--xi", s(&xi2)]);
    assert_eq!(r.code, 1, "dimension mismatch: {}", r.stderr);
    let zero = write(&dir, "zero.json", &vector(&[0.0, 0.0, 0.0]));
    let r = run(&["defect", "--group", s(&s3), "--xi", s(&zero)]);
    assert_eq!(r.code, 1);
}

#[test]
fn eigenvector_examples() {
    let dir = TempDir::new().unwrap();
    let s3 = group(&dir, "s3", s3_generators());
    let u = 1.0 / 3f64.sqrt();
    let uniform = write(&dir, "uniform.json", &vector(&[u, u, u]));
    let r = run(&["eigenvector", "--group", s(&s3), "--xi", s(&uniform)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let cert = r.json();
    assert_eq!(cert["method"], "monomial");
    assert!(cert["distance_sq"].as_f64().unwrap() < 1e-28, "{cert}");
    assert_eq!(cert["bound_holds"], true);

    let flip = group(
        &dir,
        "flip",
        vec![real_matrix(&[&[1.0, 0.0], &[0.0, -1.0]])],
    );
    let xi = write(&dir, "xi.json", &vector(&[0.9999f64.sqrt(), 0.01]));
    let r = run(&[
        "eigenvector",
        "--group",
        s(&flip),
        "--xi",
        s(&xi),
        "--method",
        "truncate",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let cert = r.json();
    let eta = cert["eta"]["entries"].as_array().unwrap();
    assert!((eta[0][0].as_f64().unwrap() - 0.9999f64.sqrt()).abs() < 1e-15);
    assert_eq!(eta[1], json!([0.0, 0.0]));
    assert!((cert["eps"].as_f64().unwrap() - 2e-4).abs() < 1e-15);
    assert!((cert["distance_sq"].as_f64().unwrap() - 1e-4).abs() < 1e-15);

    let pauli = group(&dir, "pauli", pauli_generators());
    let xi = write(&dir, "xi2.json", &vector(&[0.6, 0.8]));
    let r = run(&[
        "eigenvector",
        "--group",
        s(&pauli),
        "--xi",
        s(&xi),
        "--method",
        "truncate",
    ]);
    assert_eq!(r.code, 4, "{}", r.stderr);

    // transpositions are not scalar multiples of commutators in S3
    for (method, code) in [("average", 0), ("rho", 1), ("monomial", 0), ("auto", 0)] {
        let r = run(&[
            "eigenvector",
            "--group",
            s(&s3),
            "--xi",
            s(&uniform),
            "--method",
            method,
        ]);
        assert_eq!(r.code, code, "{method}: {}", r.stderr);
    }
    let r = run(&[
        "eigenvector",
        "--group",
        s(&s3),
        "--xi",
        s(&uniform),
        "--method",
        "magic",
    ]);
    assert_eq!(r.code, 1);
}

#[test]
fn decompose_examples() {
    let dir = TempDir::new().unwrap();
    for (name, gens, sizes) in [
        ("pauli", pauli_generators(), json!([2])),
        ("s3", s3_generators(), json!([1, 2])),
        ("trivial", vec![identity(3)], json!([1, 1, 1])),
    ] {
        let g = group(&dir, name, gens);
        let r = run(&["decompose", "--group", s(&g)]);
        assert_eq!(r.code, 0, "{name}: {}", r.stderr);
        assert_eq!(r.json()["block_sizes"], sizes, "{name}");
        assert!(r.json()["seed"].is_u64());
    }
}

#[test]
fn verify_examples() {
    for (suite, seed, trials) in [
        ("lemmas", "42", "1000"),
        ("bounds", "7", "500"),
        ("pipeline", "1", "100"),
    ] {
        let r = run(&[
            "verify", "--suite", suite, "--seed", seed, "--trials", trials,
        ]);
        assert_eq!(r.code, 0, "{suite}: {}", r.stdout);
        let report = r.json();
        assert_eq!(report["failures"], json!([]));
        assert_eq!(report["suite"], suite);
        let wall: f64 = r
            .stderr
            .trim()
            .strip_prefix("wall_time: ")
            .and_then(|t| t.strip_suffix(" s"))
            .and_then(|t| t.parse().ok())
            .unwrap_or_else(|| panic!("wall time line: {}", r.stderr));
        assert!(wall < 60.0, "{suite} took {wall} s");
    }
    assert_eq!(
        run(&["verify", "--suite", "lemmas", "--seed", "1", "--trials", "0"]).code,
        1
    );
    assert_eq!(
        run(&["verify", "--suite", "nope", "--seed", "1", "--trials", "3"]).code,
        1
    );
}

#[test]
fn tolerance_override() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s3.in.json", &json!({"generators": s3_generators()}));
    let out = dir.path().join("s3.json");
    let r = run_with(
        &["closure", "--in", s(&input), "--out", s(&out)],
        &[("UNIREDUCE_TOL", "1e-7")],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["tol"]["eq_tol"], 1e-7);

    // a generator off by 1e-6 only closes once eq_tol absorbs the error
    let swap = real_matrix(&[&[0.0, 1.0], &[1.0, 0.0]]);
    let (c, si) = (1e-6f64.cos(), 1e-6f64.sin());
    let nearly_swap = real_matrix(&[&[-si, c], &[c, si]]);
    let input = write(
        &dir,
        "pair.in.json",
        &json!({"generators": [swap, nearly_swap]}),
    );
    let out = dir.path().join("pair.json");
    let strict = run(&[
        "closure",
        "--in",
        s(&input),
        "--out",
        s(&out),
        "--cap",
        "200",
    ]);
    assert_eq!(strict.code, 3, "{}", strict.stderr);
    let loose = run_with(
        &["closure", "--in", s(&input), "--out", s(&out)],
        &[("UNIREDUCE_TOL", "1e-4")],
    );
    assert_eq!(loose.code, 0, "{}", loose.stderr);
    assert_eq!(loose.json()["order"], 2);

    let r = run_with(
        &["closure", "--in", s(&input), "--out", s(&out)],
        &[("UNIREDUCE_TOL", "tight")],
    );
    assert_eq!(r.code, 1);
}
