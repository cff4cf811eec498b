use std::collections::BTreeMap;
use std::process::{Command, Output};

fn kzeros(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzeros")).args(args).env_remove("KZEROS_PRECISION").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// (nu, re, im) triples from zero CSV output.
fn parse_zero_csv(s: &str) -> Vec<(f64, f64, f64)> {
    s.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn zeros_half_odd_csv() {
    let o = kzeros(&["zeros", "--nu", "2.5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("nu,zero_index,re,im,residual\n"));
    assert!(s.contains("-1.5,+0.8660254"));
    assert!(s.contains("-1.5,-0.8660254"));
}

#[test]
fn below_range_is_a_domain_error() {
    let o = kzeros(&["zeros", "--nu", "1.4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no zeros for nu < 1.5"));
    assert_eq!(kzeros(&["zeros", "--nu", "-3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(kzeros(&["zeros"]).status.code(), Some(2));
    assert_eq!(kzeros(&["zeros", "--nu", "abc"]).status.code(), Some(2));
    assert_eq!(kzeros(&["zeros", "--nu", "2", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(kzeros(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kzeros(&["moments", "--nu", "3.5", "--max-k", "2"]).status.code(), Some(2));
}

#[test]
fn verify_at_nu4() {
    let o = kzeros(&["zeros", "--nu", "9.5", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let z = parse_zero_csv(&s);
    assert_eq!(z.len(), 9);
    assert_eq!(z.iter().filter(|t| t.2 >= 0.0).count(), 5);
    assert!(z.iter().any(|t| (t.1 + 6.29702).abs() < 1e-5 && t.2 == 0.0));
    assert!(s.contains("# verify residual pass"));
    assert!(!s.contains("FAIL"));
}

#[test]
fn json_round_trips_losslessly() {
    let o = kzeros(&["zeros", "--nu", "4.2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let zs = kzeros::zeros::solve_zeros(4.2, &kzeros::Precision::default()).unwrap();
    let arr = v["zeros"].as_array().unwrap();
    assert_eq!(arr.len(), zs.len());
    for (j, z) in arr.iter().zip(&zs.zeros) {
        assert_eq!(j[0].as_f64().unwrap().to_bits(), z.re.to_bits());
        assert_eq!(j[1].as_f64().unwrap().to_bits(), z.im.to_bits());
    }
    assert_eq!(v["method"], "CharPolyPolished");
    assert_eq!(v["metadata"]["target_rel_tol"].as_f64(), Some(1e-12));
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn precision_from_environment() {
    let run = |val: &str| {
        Command::new(env!("CARGO_BIN_EXE_kzeros"))
            .args(["zeros", "--nu", "2", "--format", "json"])
            .env("KZEROS_PRECISION", val)
            .output()
            .unwrap()
    };
    let o = run("1e-10");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["metadata"]["target_rel_tol"].as_f64(), Some(1e-10));
    assert_eq!(run("nope").status.code(), Some(2));
    assert_eq!(run("-1").status.code(), Some(2));
}

#[test]
fn near_half_odd_input_is_snapped() {
    let o = kzeros(&["zeros", "--nu", "3.5000000000001", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nu"].as_f64(), Some(3.5));
    assert_eq!(v["method"], "HalfOddPoly");
}

#[test]
fn table_rows() {
    let o = kzeros(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = parse_zero_csv(&stdout(&o));
    let at = |nu: f64| rows.iter().filter(move |t| (t.0 - nu).abs() < 1e-9).map(|t| (t.1, t.2)).collect::<Vec<_>>();
    let r8 = at(8.0);
    assert_eq!(r8.len(), 8);
    for (re, im) in [(-2.76414, 5.88671), (-4.22315, 3.96507), (-4.98828, 2.17708), (-5.29076, 0.433578)] {
        for s in [1.0, -1.0] {
            assert!(r8.iter().any(|z| (z.0 - re).abs() <= 1e-4 && (z.1 - s * im).abs() <= 1e-4));
        }
    }
    // table column order: largest imaginary part first
    assert!((r8[0].1 - 5.88671).abs() < 1e-4);
    assert!(at(6.0).iter().any(|z| (z.0 + 3.96156).abs() <= 1e-4 && (z.1 - 0.433345).abs() <= 1e-4));
    assert_eq!(rows.iter().map(|t| t.0.to_bits()).collect::<std::collections::BTreeSet<_>>().len(), 81);
}

#[test]
fn table_single_point_and_stability() {
    let a = kzeros(&["table", "--from", "1.5", "--to", "1.5"]);
    assert_eq!(stdout(&a), "nu,zero_index,re,im,residual\n1.5,0,-1,+0,".to_string() + stdout(&a).lines().nth(1).unwrap().rsplit(',').next().unwrap() + "\n");
    let b = kzeros(&["table", "--from", "4", "--to", "5", "--step", "0.1"]);
    let c = kzeros(&["table", "--from", "4", "--to", "5", "--step", "0.1"]);
    assert_eq!(b.stdout, c.stdout);
    let j = kzeros(&["table", "--from", "1.5", "--to", "1.7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn sweep_tracks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tracks.csv");
    let o = kzeros(&["sweep", "--from", "1.5", "--to", "9.5", "--step", "0.1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("nu,track_id,re,im,residual,note"));
    let mut tracks: BTreeMap<u64, std::collections::BTreeSet<usize>> = BTreeMap::new();
    let mut merges = Vec::new();
    let mut through_25 = false;
    for l in lines {
        let f: Vec<&str> = l.split(',').collect();
        let nu: f64 = f[0].parse().unwrap();
        tracks.entry((nu * 10.0).round() as u64).or_default().insert(f[1].parse().unwrap());
        if f[5] == "merge" {
            merges.push(nu);
        }
        if nu == 2.5 && f[2] == "-1.5" && f[3].starts_with("+0.866025") {
            through_25 = true;
        }
    }
    let counts: Vec<usize> = tracks.values().map(|s| s.len()).collect();
    let mut transitions = Vec::new();
    for (i, w) in counts.windows(2).enumerate() {
        if w[0] != w[1] {
            transitions.push((16 + i, w[1]));
        }
    }
    assert_eq!(transitions, vec![(35, 2), (55, 3), (75, 4), (95, 5)]);
    assert_eq!(merges, vec![1.5, 3.5, 5.5, 7.5, 9.5]);
    assert!(through_25);
}

#[test]
fn sweep_empty_range() {
    assert_eq!(kzeros(&["sweep", "--from", "3", "--to", "2", "--step", "0.1"]).status.code(), Some(2));
    assert_eq!(kzeros(&["sweep", "--from", "3", "--to", "3", "--step", "0.1"]).status.code(), Some(2));
}

#[test]
fn xn_and_moments() {
    let o = kzeros(&["xn", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let x: f64 = s.lines().find(|l| l.starts_with("x_n,")).unwrap()[4..].parse().unwrap();
    assert!((x - 3.64674).abs() < 1e-5);
    assert!(s.contains("residual_K_alpha_x_over_pi,"));
    let o = kzeros(&["moments", "--nu", "2.5", "--max-k", "4"]);
    assert_eq!(stdout(&o), "nu,k,value,abs_err\n2.5,1,0,0\n2.5,2,0,0\n2.5,3,0,0\n2.5,4,0,0\n");
}

#[test]
fn check_levels() {
    let o = kzeros(&["check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("checks passed"));
    let o = kzeros(&["check", "--level", "full"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
