use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use imkit::states::io::parse_states;

fn imkit() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_imkit"));
    c.env_remove("IMKIT_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    imkit().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Parses CSV text into (header, rows).
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

const STATES: &str = r#"[
  {"id": "plus_i", "dim": 2, "re": [[0.5, 0], [0, 0.5]], "im": [[0, -0.5], [0.5, 0]]},
  {"id": "mixed", "dim": 2, "re": [[0.5, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]},
  {"dim": 3, "re": [0.6, 0, 0], "im": [0, 0.8, 0]}
]"#;

#[test]
fn compute_panels() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.json", STATES);
    let o = run(&["--cmd", "compute", "--in", s(&input)]);
    assert_eq!(code(&o), 0);
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 3);
    let m_re: f64 = rows[0][col(&h, "m_re")].parse().unwrap();
    assert!((m_re - 0.2928932).abs() < 1e-7);
    for name in [
        "m_tr",
        "m_rel",
        "m_g",
        "m_g_prime",
        "m_re",
        "m_t_half",
        "m_tsallis_0.5",
        "m_gqjsd_0.5",
    ] {
        assert_eq!(rows[1][col(&h, name)], "0", "{name}");
    }
    assert_eq!(rows[2][col(&h, "id")], "state2");
}

#[test]
fn compute_json_carries_states_back() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.json", STATES);
    let out = dir.path().join("out.json");
    let o = run(&[
        "--cmd",
        "compute",
        "--in",
        s(&input),
        "--format",
        "json",
        "--out",
        s(&out),
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let states: Vec<Value> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["state"].clone())
        .collect();
    let again = parse_states(&Value::Array(states).to_string()).unwrap();
    assert_eq!(again, parse_states(STATES).unwrap());
    assert_eq!(v[0]["id"], "plus_i");
}

#[test]
fn compute_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad_trace = write(
        &dir,
        "t.json",
        r#"{"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}"#,
    );
    let o = run(&["--cmd", "compute", "--in", s(&bad_trace)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("trace"));

    let not_psd = write(
        &dir,
        "p.json",
        r#"{"dim": 2, "re": [[1.5, 0], [0, -0.5]], "im": [[0, 0], [0, 0]]}"#,
    );
    assert_eq!(code(&run(&["--cmd", "compute", "--in", s(&not_psd)])), 3);

    let malformed = write(&dir, "m.json", r#"{"dim": 2, "re": [[1, 0],"#);
    assert_eq!(code(&run(&["--cmd", "compute", "--in", s(&malformed)])), 2);

    let wrong_shape = write(
        &dir,
        "w.json",
        r#"{"dim": 3, "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}"#,
    );
    assert_eq!(
        code(&run(&["--cmd", "compute", "--in", s(&wrong_shape)])),
        2
    );

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["--cmd", "compute", "--in", s(&missing)])), 2);
    assert_eq!(code(&run(&["--cmd", "compute"])), 2);
}

#[test]
fn audit_full_qubit_ensemble_is_clean() {
    let o = run(&["--cmd", "audit", "--dim", "2", "--n", "1000"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("0 violations"));
    for check in [
        "sandwich_lower",
        "trace_norm_upper",
        "lemma2_cap",
        "qubit_complementarity",
    ] {
        assert!(out.contains(check), "{check} missing from summary");
    }
}

#[test]
fn audit_qutrit_relation_is_clean() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.csv");
    let o = run(&[
        "--cmd",
        "audit",
        "--dim",
        "3",
        "--n",
        "2000",
        "--check",
        "qutrit_compl",
        "--out",
        s(&out),
    ]);
    assert_eq!(code(&o), 0);
    let (h, rows) = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(h, ["check", "state_id", "lhs", "rhs", "slack", "pass"]);
    assert_eq!(rows.len(), 2000);
    assert!(rows.iter().all(|r| r[5] == "true"));
}

#[test]
fn audit_usage_errors() {
    assert_eq!(
        code(&run(&[
            "--cmd",
            "audit",
            "--dim",
            "4",
            "--check",
            "qutrit_compl"
        ])),
        2
    );
    assert_eq!(code(&run(&["--cmd", "audit", "--check", "nonsense"])), 2);
    assert_eq!(code(&run(&["--cmd", "audit", "--tol", "nonsense=1"])), 2);
    assert_eq!(code(&run(&["--cmd", "audit", "--rank", "5"])), 2);
    assert_eq!(code(&run(&["--cmd", "bogus"])), 2);
}

#[test]
fn audit_violation_exits_one_and_still_writes() {
    // With zero tolerance, roundoff in an exact identity counts as a violation.
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.csv");
    let o = run(&[
        "--cmd",
        "audit",
        "--n",
        "200",
        "--check",
        "pure_compl",
        "--tol",
        "equality=0",
        "--out",
        s(&out),
    ]);
    assert_eq!(code(&o), 1);
    let (_, rows) = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().any(|r| r[5] == "false"));
}

#[test]
fn audit_output_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "4", "4"].iter().enumerate() {
        let out = dir.path().join(format!("a{i}.csv"));
        let o = imkit()
            .args([
                "--cmd",
                "audit",
                "--dim",
                "3",
                "--n",
                "300",
                "--out",
                s(&out),
            ])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert!(!outputs[0].contains(&b'\r'));
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);

    let other = dir.path().join("b.csv");
    run(&[
        "--cmd",
        "audit",
        "--dim",
        "3",
        "--n",
        "300",
        "--seed",
        "8",
        "--out",
        s(&other),
    ]);
    assert_ne!(std::fs::read(&other).unwrap(), outputs[0]);
}

#[test]
fn seed_falls_back_to_environment() {
    let a = imkit()
        .args(["--cmd", "figure", "--figure", "5", "--n", "50"])
        .env("IMKIT_SEED", "11")
        .output()
        .unwrap();
    let b = run(&[
        "--cmd", "figure", "--figure", "5", "--n", "50", "--seed", "11",
    ]);
    let c = run(&["--cmd", "figure", "--figure", "5", "--n", "50"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

fn figure(which: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let o = run(&["--cmd", "figure", "--figure", which]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = csv_rows(&stdout(&o));
    let rows = rows
        .into_iter()
        .map(|r| r.iter().map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    (h, rows)
}

#[test]
fn figure_two_end_points() {
    let (h, rows) = figure("2");
    assert_eq!(rows.len(), 101);
    let (g, re) = (col(&h, "m_g"), col(&h, "m_re"));
    assert!(rows[0][g].abs() < 1e-12 && rows[0][re].abs() < 1e-12);
    assert!((rows[100][g] - 0.5).abs() < 1e-12);
    assert!((rows[100][re] - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
}

#[test]
fn figure_three_rows_are_bracketed() {
    let (h, rows) = figure("3");
    let (f1, f2, re) = (col(&h, "f1"), col(&h, "f2"), col(&h, "m_re"));
    for r in &rows {
        assert!(r[f2] <= r[re] + 1e-8 && r[re] <= r[f1] + 1e-8);
        assert!((r[re] - r[f2]).abs() < 1e-9);
    }
}

#[test]
fn figure_one_covers_the_half_disk() {
    let (h, rows) = figure("1");
    let (y, xz, m) = (col(&h, "r_y"), col(&h, "r_xz"), col(&h, "m_re"));
    let half: Vec<&Vec<f64>> = rows
        .iter()
        .filter(|r| r[0].is_nan() && r[xz] >= 0.0)
        .collect();
    assert!(half.len() > 15_000);
    for r in half {
        assert!(r[y] * r[y] + r[xz] * r[xz] <= 1.0 + 1e-12);
        assert!(r[m] >= 0.0 && r[m] <= 1.0 - 0.5f64.sqrt() + 1e-12);
    }
}

#[test]
fn figure_four_and_five() {
    let (h, rows) = figure("4");
    let rhs = col(&h, "rhs");
    assert!((rows[100][rhs] - 2.5).abs() < 1e-12);
    for r in &rows {
        assert!(r[col(&h, "lhs_y")] >= r[rhs] - 1e-8 && r[col(&h, "lhs_diag")] >= r[rhs] - 1e-8);
    }
    let (h, rows) = figure("5");
    assert_eq!(rows.len(), 2000);
    let (p, rhs) = (col(&h, "purity"), col(&h, "rhs"));
    for r in &rows {
        assert!((r[rhs] - 31.0 * r[p] / 14.0).abs() < 1e-12);
        assert!(r[col(&h, "slack")] > 0.0);
    }
}

#[test]
fn figure_errors() {
    assert_eq!(code(&run(&["--cmd", "figure", "--figure", "6"])), 2);
    assert_eq!(code(&run(&["--cmd", "figure"])), 2);
}

#[test]
fn sweep_examples() {
    let o = run(&[
        "--cmd",
        "sweep",
        "--family",
        "plus-i",
        "--measure",
        "m_tr",
        "--steps",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["p", "m_tr"]);
    for (r, want) in rows.iter().zip([0.0, 0.5, 1.0]) {
        assert!((r[1].parse::<f64>().unwrap() - want).abs() < 1e-12);
    }

    let o = run(&[
        "--cmd",
        "sweep",
        "--family",
        "bloch-ry",
        "--measure",
        "m_g",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for row in v.as_array().unwrap() {
        let (r_y, g) = (row["r_y"].as_f64().unwrap(), row["m_g"].as_f64().unwrap());
        assert!((g - 0.5 * (1.0 - (1.0 - r_y * r_y).sqrt())).abs() < 1e-9);
    }
}

#[test]
fn sweep_errors() {
    assert_eq!(code(&run(&["--cmd", "sweep", "--family", "plus-i"])), 2);
    assert_eq!(
        code(&run(&[
            "--cmd",
            "sweep",
            "--family",
            "ghz",
            "--measure",
            "m_re"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "--cmd",
            "sweep",
            "--family",
            "plus-i",
            "--measure",
            "m_bogus"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "--cmd",
            "sweep",
            "--family",
            "plus-i",
            "--measure",
            "m_re",
            "--alpha",
            "0"
        ])),
        2
    );
}
