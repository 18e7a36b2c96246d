//! The `digraphon` binary end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_digraphon");

/// `W'`: value 1/2 between the two halves in both directions.
const W_PRIME: &str =
    r#"{"k":2,"measures":[0.5,0.5],"values":[[0.0,0.5],[0.5,0.0]],"bound":1.0,"type":"digraphon"}"#;
const TWO_BLOCK: &str =
    r#"{"k":2,"measures":[0.5,0.5],"values":[[0.4,0.1],[0.3,0.2]],"bound":1.0,"type":"digraphon"}"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("DIGRAPHON_THREADS", "2")
        .output()
        .unwrap()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr)
        .unwrap_or_else(|_| panic!("stderr: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn spectrum_of_w_prime() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "w.json", W_PRIME);
    let o = run(&["spectrum", "--kernel", k.to_str().unwrap()]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["seed"], 0);
    assert_eq!(doc["config"]["command"]["name"], "spectrum");
    let points = doc["result"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert_eq!(doc["result"]["includes_zero_spectral_point"], true);

    let o = run(&[
        "--format",
        "csv",
        "spectrum",
        "--kernel",
        k.to_str().unwrap(),
    ]);
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("re,"))
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    let want = [[0.25, 0.0, 1.0], [-0.25, 0.0, 1.0], [0.0, 0.0, 0.0]];
    assert_eq!(rows.len(), 3);
    for (r, w) in rows.iter().zip(&want) {
        assert!(r.iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-12), "{r:?}");
    }
}

#[test]
fn trace_check_on_w_prime_csv() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "w.json", W_PRIME);
    let o = run(&[
        "--format",
        "csv",
        "trace-check",
        "--kernel",
        k.to_str().unwrap(),
        "--ell-max",
        "6",
    ]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "abs_error").unwrap();
    let errors: Vec<f64> = lines
        .map(|l| l.split(',').nth(col).unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 4);
    assert!(errors.iter().all(|e| *e < 1e-8));
}

#[test]
fn csv_output_carries_config_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "w.json", TWO_BLOCK);
    let out = dir.path().join("out");
    let o = run(&[
        "--out",
        out.to_str().unwrap(),
        "--format",
        "csv",
        "--seed",
        "9",
        "spectrum",
        "--kernel",
        k.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out.join("spectrum-seed9.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config:"));
    assert_eq!(lines.next().unwrap(), "# seed: 9");
    assert!(text.lines().any(|l| l == "0,0,0"));
    // No temporary files remain after the rename.
    let names: Vec<_> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names.len(), 1);
}

#[test]
fn trace_check_errors_are_tiny() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "w.json", TWO_BLOCK);
    let o = run(&[
        "trace-check",
        "--kernel",
        k.to_str().unwrap(),
        "--ell-max",
        "5",
    ]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = doc["result"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!(r["abs_error"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn seeded_runs_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "w.json", TWO_BLOCK);
    let out = dir.path().join("out");
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let o = Command::new(BIN)
            .args([
                "--out",
                out.to_str().unwrap(),
                "--seed",
                "17",
                "converge",
                "--kernel",
                k.to_str().unwrap(),
                "--sizes",
                "10,20",
                "--seeds",
                "3",
                "--epsilon",
                "0.02",
            ])
            .env("DIGRAPHON_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(std::fs::read(out.join("converge-seed17.json")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);

    let sample = |seed: &str| {
        run(&[
            "--seed",
            seed,
            "sample",
            "--kernel",
            k.to_str().unwrap(),
            "--n",
            "30",
        ])
        .stdout
    };
    assert_eq!(sample("4"), sample("4"));
    assert_ne!(sample("4"), sample("5"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"k":2,"measures":[1.0],"values":[[0.0]],"bound":0.0}"#,
    );
    let o = run(&["spectrum", "--kernel", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["exit_code"], 2);

    let o = run(&["spectrum"]);
    assert_eq!(o.status.code(), Some(2));

    let k = write(dir.path(), "w.json", TWO_BLOCK);
    let o = Command::new(BIN)
        .args(["spectrum", "--kernel", k.to_str().unwrap()])
        .env("DIGRAPHON_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oversized_cut_norm_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let k = 25;
    let values: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if (i + j) % 2 == 0 { 0.5 } else { -0.5 })
                .collect()
        })
        .collect();
    let doc = serde_json::json!({"k": k, "measures": vec![1.0 / k as f64; k], "values": values, "bound": 1.0});
    let p = write(dir.path(), "big.json", &doc.to_string());
    let o = run(&["cutnorm", "--kernel", p.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let err = stderr_json(&o);
    assert_eq!(err["exit_code"], 3);
    assert!(err["message"].as_str().unwrap().contains("24"));
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    for cmd in [
        "spectrum",
        "cutnorm",
        "trace-check",
        "sample",
        "converge",
        "step-converge",
        "section5",
    ] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
}
