use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonclassical"))
        .args(args)
        .env_remove("NONCLASSICAL_OUT_DIR")
        .output()
        .expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

/// Twice the magnitude of the smallest eigenvalue of the partial transpose
/// of `rho` mixed with vacuum on a balanced beam splitter, by power
/// iteration on `2 - M`.
fn np_oracle(p: f64, x: f64) -> f64 {
    let (h, b) = (p / 2.0, x / 2f64.sqrt());
    let m = [[1.0 - p, b, b, h], [b, h, 0.0, 0.0], [b, 0.0, h, 0.0], [h, 0.0, 0.0, 0.0]];
    let mut v = [0.3, -0.5, -0.5, 0.7];
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let mut w = [0.0; 4];
        for i in 0..4 {
            w[i] = 2.0 * v[i] - (0..4).map(|j| m[i][j] * v[j]).sum::<f64>();
        }
        let n = w.iter().map(|c| c * c).sum::<f64>().sqrt();
        lambda = n;
        v = w.map(|c| c / n);
    }
    2.0 * (2.0 - lambda).min(0.0).abs()
}

#[test]
fn measure_json_values() {
    let o = run(&["measure", "--p", "0.5", "--x", "0.25", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let get = |k: &str| v[k].as_f64().unwrap();
    assert!((get("tau") - 4.0 / 7.0).abs() < 1e-12);
    assert!((get("distance") - 0.5).abs() < 1e-12);
    assert!((get("concurrence_potential") - 0.5).abs() < 1e-12);
    assert!((get("negativity_potential") - np_oracle(0.5, 0.25)).abs() < 1e-9);
    assert!((get("negativity_potential") - ((2.0 * std::f64::consts::PI / 9.0).cos() - 0.5)).abs() < 1e-12);
}

#[test]
fn measure_phase_does_not_change_measures() {
    let a = run(&["measure", "--p", "0.3", "--x", "0.2", "--format", "json"]);
    let b = run(&["measure", "--p", "0.3", "--x", "0.2", "--phase", "-2.1", "--format", "json"]);
    let (a, b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_str(&stdout(&a)).unwrap(), serde_json::from_str(&stdout(&b)).unwrap());
    for k in ["tau", "distance", "concurrence_potential", "negativity_potential"] {
        assert!((a[k].as_f64().unwrap() - b[k].as_f64().unwrap()).abs() < 1e-12, "{k}");
    }
}

#[test]
fn measure_numeric_depth_csv() {
    let o = run(&["measure", "--p", "0.5", "--x", "0.25", "--format", "csv", "--numeric-depth"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let head: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    let i = head.iter().position(|h| *h == "tau_numeric_vs_analytic").unwrap();
    assert!(row[i] < 1e-4);
    assert!(row.iter().all(|v| v.is_finite()));
}

#[test]
fn invalid_states_exit_2() {
    for args in [
        &["measure", "--p", "0.5", "--x", "0.6"][..],
        &["measure", "--p", "-0.1", "--x", "0"],
        &["measure", "--p", "0.5", "--x", "-0.1"],
        &["measure", "--p", "nan", "--x", "0"],
        &["measure", "--p", "0.5"],
        &["figures", "--precision", "18"],
        &["figures", "--panel", "bogus"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    std::fs::write(&file, "").unwrap();
    let out = file.join("sub");
    let o = run(&["figures", "--panel", "D_vs_tau", "--n-mc", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn figures_are_deterministic_and_finite() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = |d: &Path| {
        vec!["figures".to_string(), "--n-mc".into(), "3000".into(), "--seed".into(), "11".into(), "--samples".into(), "64".into(), "--out".into(), d.display().to_string()]
    };
    assert_eq!(run(&args(a.path()).iter().map(String::as_str).collect::<Vec<_>>()).status.code(), Some(0));
    // second run through the environment variable
    let o = Command::new(env!("CARGO_BIN_EXE_nonclassical"))
        .args(["figures", "--n-mc", "3000", "--seed", "11", "--samples", "64"])
        .env("NONCLASSICAL_OUT_DIR", b.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));

    let m = manifest(a.path());
    let files = m["files"].as_array().unwrap();
    assert_eq!(files.len(), 15);
    for f in files {
        let name = f["path"].as_str().unwrap();
        let x = std::fs::read(a.path().join(name)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(name)).unwrap(), "{name} differs");
        let text = String::from_utf8(x).unwrap();
        let mut lines = text.lines();
        let head = lines.next().unwrap();
        if name.ends_with(".cloud.csv") {
            assert_eq!(head, "abscissa,ordinate,p,x_abs");
        }
        let mut rows = 0;
        for line in lines {
            for cell in line.split(',') {
                let v: f64 = cell.parse().unwrap();
                assert!(v.is_finite() && (-1e-12..=1.0 + 1e-12).contains(&v), "{name}: {v}");
            }
            rows += 1;
        }
        assert_eq!(rows, f["rows"].as_u64().unwrap() as usize);
    }
    assert_eq!(std::fs::read(a.path().join("manifest.json")).unwrap(), std::fs::read(b.path().join("manifest.json")).unwrap());

    assert_eq!(m["seed"], 11);
    let tau0 = m["tau0"]["estimate"].as_f64().unwrap();
    assert!((0.3149..=0.3159).contains(&tau0), "tau0 = {tau0}");
    let br = m["tau0"]["bracket"].as_array().unwrap();
    assert!(br[0].as_f64().unwrap() <= tau0 && tau0 <= br[1].as_f64().unwrap());
}

#[test]
fn tau0_only_with_np_panel() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["figures", "--panel", "D_vs_NP", "--n-mc", "100", "--samples", "16", "--out", d.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m = manifest(d.path());
    assert!(m.get("tau0").is_none());
    assert_eq!(m["files"].as_array().unwrap().len(), 5);
}

#[test]
fn precision_controls_digits() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["figures", "--panel", "D_vs_tau", "--n-mc", "5", "--samples", "4", "--precision", "3", "--out", d.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(d.path().join("D_vs_tau.mixed.csv")).unwrap();
    let cell = text.lines().nth(2).unwrap().split(',').next().unwrap();
    let mantissa = cell.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 3, "{cell}");
}

#[test]
fn verify_tables_pass() {
    let o = run(&["verify", "--suite", "tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 of 3 checks passed"));
}

#[test]
fn verify_all_json() {
    let o = run(&["verify", "--suite", "all", "--seed", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] != true).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["suite"], "all");
}

#[test]
fn vacuum_measures_are_zero() {
    let o = run(&["measure", "--p", "0", "--x", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for k in ["tau", "distance", "concurrence_potential", "negativity_potential"] {
        assert_eq!(v[k].as_f64().unwrap(), 0.0, "{k}");
    }
}

#[test]
fn qpd_dump() {
    let d = tempfile::tempdir().unwrap();
    let f = d.path().join("w.csv");
    let o = run(&["qpd", "--p", "1", "--x", "0", "--s", "0", "--points", "21", "--precision", "17", "--out", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&f).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re_alpha,im_alpha,value"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let c: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [c[0], c[1], c[2]]
        })
        .collect();
    assert_eq!(rows.len(), 21 * 21);
    // Wigner function of |1>: (2/pi)(4|a|^2 - 1) exp(-2|a|^2)
    for [re, im, w] in rows {
        let r2 = re * re + im * im;
        let exact = 2.0 / std::f64::consts::PI * (4.0 * r2 - 1.0) * (-2.0 * r2).exp();
        assert!((w - exact).abs() < 1e-12, "({re}, {im}): {w} vs {exact}");
    }
    assert_eq!(run(&["qpd", "--p", "0.5", "--x", "0", "--s", "1"]).status.code(), Some(2));
}
