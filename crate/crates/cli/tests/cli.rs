use std::process::{Command, Output};

fn hdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdc"))
        .args(args)
        .env_remove("HDC_FORMAT")
        .env_remove("HDC_DIGITS")
        .env_remove("HDC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hdc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn ball_values() {
    assert_eq!(stdout(&["ball", "volume", "3"]).trim(), "4.1887902048");
    assert_eq!(stdout(&["ball", "volume", "2", "--radius", "2"]).trim(), "12.5663706144");
    assert_eq!(stdout(&["ball", "area", "3"]).trim(), "12.5663706144");
    assert_eq!(stdout(&["ball", "shell", "100", "0.01"]).trim(), "0.6339676587");
    assert_eq!(stdout(&["--digits", "3", "ball", "volume", "100"]).trim(), "2.368e-40");
}

#[test]
fn leak_values() {
    assert_eq!(stdout(&["leak", "threshold"]).trim(), "5");
    assert_eq!(stdout(&["leak", "radius", "9"]).trim(), "2.0000000000");
    assert_eq!(stdout(&["leak", "ratio", "2"]).trim(), "0.1347530211");
}

#[test]
fn centroid_values() {
    assert_eq!(stdout(&["centroid", "coeff", "13", "3", "--exact"]).trim(), "23/312");
    assert_eq!(stdout(&["centroid", "coeff", "13", "8"]).trim(), "0.0737179487");
    assert_eq!(stdout(&["centroid", "coeff", "3", "1", "--vector", "--digits", "4"]).trim().matches(',').count(), 2);
    assert_eq!(stdout(&["centroid", "pairs", "13"]).trim(), "3 8");
    assert_eq!(stdout(&["centroid", "pairs", "12"]).trim(), "none");
    let tri = stdout(&["centroid", "triangle", "0", "0", "3", "0", "0", "-3", "--digits", "2"]);
    assert_eq!(tri.trim(), "vertex=(1.00,-1.00) edge=(1.06,-1.06) solid=(1.00,-1.00)");
}

#[test]
fn table_csv() {
    let out = stdout(&["centroid", "table", "--max-n", "21"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "N,k1,k2,a,b,coordinate_exact,coordinate_decimal");
    assert_eq!(lines[1], "13,3,8,2,3,23/312,0.0737179487");
    assert_eq!(lines.len(), 3);
}

#[test]
fn verify_passes() {
    let out = stdout(&["centroid", "verify", "--max-n", "60"]);
    assert!(out.trim().ends_with("PASS"), "{out}");
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        vec!["--format", "json", "ball", "volume", "7"],
        vec!["--format", "json", "leak", "ratio", "40"],
        vec!["--format", "json", "centroid", "coeff", "40", "8"],
        vec!["--format", "json", "centroid", "table", "--max-n", "65"],
        vec!["--format", "json", "--samples", "20000", "mc", "leakfrac", "4"],
        vec!["--format", "json", "--samples", "20000", "mc", "skeleton", "4", "2"],
    ] {
        let text = stdout(&args);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), text.trim_end(), "{args:?}");
    }
}

#[test]
fn csv_single_record() {
    let out = stdout(&["--format", "csv", "ball", "volume", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("quantity,N,radius,value,ln"));
    assert!(lines.next().unwrap().starts_with("volume,3,1.0,4.1887902048,"));
}

#[test]
fn env_defaults_apply() {
    let out = Command::new(env!("CARGO_BIN_EXE_hdc"))
        .args(["ball", "volume", "3"])
        .env("HDC_DIGITS", "3")
        .env("HDC_FORMAT", "text")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "4.189");
}

#[test]
fn monte_carlo_is_deterministic() {
    let args = ["--samples", "50000", "--seed", "9", "mc", "ballvol", "5"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert!(a.contains("±") && a.contains("reference 5.2637890139") && a.trim().ends_with("PASS"), "{a}");
    let other = stdout(&["--samples", "50000", "--seed", "10", "mc", "ballvol", "5"]);
    assert_ne!(a, other);
}

#[test]
fn monte_carlo_commands_report() {
    assert!(stdout(&["mc", "gauss", "2", "--quadrature"]).contains("PASS"));
    assert!(stdout(&["--samples", "200000", "mc", "gauss", "3"]).contains("PASS"));
    assert!(stdout(&["--samples", "200000", "mc", "shell", "30", "0.05"]).contains("PASS"));
    assert!(stdout(&["--samples", "200000", "mc", "leakfrac", "6"]).contains("PASS"));
    assert!(stdout(&["--samples", "100000", "mc", "skeleton", "3", "1"]).contains("PASS"));
}

#[test]
fn sweeps_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.csv");
    stdout(&["ball", "sweep", "--max-n", "50", "--emit", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("N,omega,Omega,asymptotic,prop5_bound"));
    assert_eq!(text.lines().count(), 51);

    let path = dir.path().join("leak.csv");
    stdout(&["leak", "sweep", "--max-n", "30", "--emit", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("N,inner_radius,ratio,envelope,leaks"));
    assert!(text.lines().nth(4).unwrap().ends_with(",true"));
    assert!(text.lines().nth(3).unwrap().ends_with(",false"));
}

#[test]
fn exit_codes() {
    assert_eq!(hdc(&["ball", "volume", "0"]).status.code(), Some(2));
    assert_eq!(hdc(&["ball", "shell", "3", "2"]).status.code(), Some(2));
    assert_eq!(hdc(&["centroid", "coeff", "3", "5"]).status.code(), Some(2));
    assert_eq!(hdc(&["centroid", "triangle", "0", "0", "1", "1", "2", "2"]).status.code(), Some(2));
    assert_eq!(hdc(&["--digits", "0", "ball", "volume", "3"]).status.code(), Some(2));
    assert_eq!(hdc(&["nonsense"]).status.code(), Some(2));
    let capped = hdc(&["--resource-cap", "50", "centroid", "verify", "--max-n", "60"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("resource"));
    assert_eq!(hdc(&["mc", "ballvol", "20"]).status.code(), Some(2));
}
