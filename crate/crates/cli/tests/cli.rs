use std::f64::consts::PI;
use std::process::{Command, Output};

fn plate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plate")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = plate(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn num(v: &serde_json::Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn ball_disk_at_zero_tension() {
    let v = json(&["ball", "--d", "2", "--r", "1", "--tau", "0"]);
    assert!((num(&v, "gamma") - 104.36).abs() < 5e-3);
    assert!((num(&v, "rigidity") - PI / 192.0).abs() < 1e-9);
    assert!((num(&v, "grad_norm_sq") - 6.92801).abs() < 1e-4);
    // α = γ₀²·√(2/π) with γ₀⁴ = Γ
    let alpha = num(&v, "gamma").sqrt() * (2.0 / PI).sqrt();
    assert!((num(&v, "alpha") - alpha).abs() < 1e-10 * alpha);
    assert!(v.get("warnings").is_none());
}

#[test]
fn ball_three_dimensional_dirichlet_eigenvalue() {
    let v = json(&["ball", "--d", "3", "--r", "1", "--tau", "0"]);
    assert!((num(&v, "lambda") - PI * PI).abs() < 1e-12);
}

#[test]
fn ball_negative_tension_reports_rigidity_only() {
    let v = json(&["ball", "--d", "2", "--tau", "-5"]);
    assert!(v["gamma"].is_null());
    assert!(num(&v, "rigidity") > PI / 192.0);
    let at_buckling = json(&["ball", "--d", "2", "--tau", "-14.681970642123893"]);
    assert!(at_buckling["rigidity"].is_null());
    assert!(at_buckling["warnings"][0].as_str().unwrap().contains("buckling"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["ball", "--d", "1"][..],
        &["ball", "--r", "-1"],
        &["twoball", "--tau", ""],
        &["twoball"],
        &["verify", "nonsense"],
        &["grid-eig", "--shape", "disk", "--tau", "-1"],
        &["grid-eig", "--shape", "mask"],
        &["criteria", "--perimeter", "1"],
        &["ball", "-d", "2"],
    ] {
        let out = plate(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn twoball_sweep_is_decreasing_and_deterministic() {
    let svg = std::env::temp_dir().join(format!("plate-twoball-{}.svg", std::process::id()));
    let args = ["twoball", "--d", "3,2", "--tau", "100,0,10,1", "--svg", svg.to_str().unwrap()];
    let a = plate(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = plate(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,tau,a,E"));
    let rows: Vec<(u32, f64, f64, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 2 * 4 * 99);
    // sorted by (d, tau, a) whatever the argument order
    assert!(rows.windows(2).all(|w| (w[0].0, w[0].1, w[0].2) < (w[1].0, w[1].1, w[1].2)));
    for curve in rows.chunks(99) {
        assert!(curve.windows(2).all(|w| w[1].3 < w[0].3));
    }
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert!(plot.starts_with("<svg") && plot.matches("<polyline").count() == 8);
    let _ = std::fs::remove_file(svg);
}

#[test]
fn grid_eig_on_a_mask_file() {
    let dir = std::env::temp_dir().join(format!("plate-mask-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let n = 24;
    let mut text = format!("{n} {n} {}\n", 1.0 / n as f64);
    for _ in 0..n {
        text.push_str(&"1".repeat(n));
        text.push('\n');
    }
    let path = dir.join("square.txt");
    std::fs::write(&path, text).unwrap();
    let v = json(&["grid-eig", "--shape", "mask", "--mask", path.to_str().unwrap(), "--tau", "0"]);
    // the unit square clamped plate, Γ ≈ 1294.93, with an O(h) mask boundary
    assert!((num(&v, "gamma") / 1294.93 - 1.0).abs() < 0.3, "{v}");
    assert_eq!(v["nodes"], 576);
    assert!(v["sign"]["min_over_max"].as_f64().unwrap() > -1e-3);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn grid_torsion_compares_with_the_disk() {
    let v = json(&["grid-torsion", "--shape", "square", "--unit-area", "--h", "0.03125", "--tau", "1"]);
    assert!(num(&v, "rigidity") < num(&v, "disk_rigidity"));
    assert_eq!(v["shape"], "square");
}

#[test]
fn criteria_for_named_shapes_and_threshold() {
    let v = json(&["criteria", "--shape", "rect", "--aspect", "8"]);
    assert!((num(&v, "value") - 7.95).abs() < 5e-3 && v["passes"] == true);
    assert!((num(&v, "threshold") - 6.92801).abs() < 1e-4);
    let d = json(&["criteria", "--shape", "disk"]);
    assert!((num(&d, "value") - PI * PI / 4.0).abs() < 1e-12 && d["passes"] == false);
    // Γ(Ω,0) equal to the disk value gives τ_Ω = 0
    let g = (3.19622061658254f64 / (1.0 / PI).sqrt()).powi(4);
    let t = json(&["criteria", "--perimeter", "4", "--area", "1", "--omega-gamma0", &g.to_string(), "--omega-lambda", "30"]);
    assert!(num(&t, "tau_threshold").abs() < 1e-6);
    let bad = json(&["criteria", "--perimeter", "4", "--area", "1", "--omega-gamma0", "100", "--omega-lambda", "1"]);
    assert!(bad["inconclusive"].is_string());
}

#[test]
fn specfn_constants() {
    let v = json(&["specfn", "--d", "2", "--zeros", "2"]);
    assert!((num(&v, "gamma_nu") - 3.19622).abs() < 1e-4);
    assert!((v["zeros"][0].as_f64().unwrap() - 2.404825557695773).abs() < 1e-13);
    let half = json(&["specfn", "--nu", "0.5", "--x", "2"]);
    // J_{1/2}(x) = √(2/(πx))·sin x
    assert!((num(&half, "j") - (2.0 / (PI * 2.0)).sqrt() * 2f64.sin()).abs() < 1e-13);
}

#[test]
fn verify_slopes_passes_and_is_byte_identical() {
    let args = ["verify", "slopes", "--h", "0.0625", "--tau", "0,1"];
    let a = plate(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, plate(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_talenti_with_seed() {
    let args = ["verify", "talenti", "--trials", "12", "--seed", "7", "--h", "0.0625"];
    let a = plate(&args);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["seed"], 7);
    assert_eq!(v["records"].as_array().unwrap().len(), 24);
    assert_eq!(v["summary"]["all_pass"], true);
    let one_thread = Command::new(env!("CARGO_BIN_EXE_plate")).args(args).env("PLATE_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, one_thread.stdout);
}

#[test]
fn verify_all_combines_the_suites() {
    let v = json(&["verify", "all", "--h", "0.0625", "--tau", "0", "--trials", "4"]);
    for key in ["szego", "saintvenant", "talenti", "slopes"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["all_pass"], true);
}

#[test]
fn output_file_flag() {
    let path = std::env::temp_dir().join(format!("plate-out-{}.json", std::process::id()));
    let out = plate(&["specfn", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["gamma_nu"].is_number());
    let _ = std::fs::remove_file(path);
}
