use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ring-ritz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Rows of the CSV table that follows `header` in a multi-table dump.
fn csv_rows<'a>(text: &'a str, header: &str) -> Vec<Vec<&'a str>> {
    let mut lines = text.lines().skip_while(|l| *l != header);
    assert_eq!(lines.next(), Some(header), "missing table {header}");
    lines.take_while(|l| !l.is_empty()).map(|l| l.split(',').collect()).collect()
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("reproduce"));
}

#[test]
fn usage_error_exits_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--r1", "1", "--r2", "2", "--n", "5"]).status.code(), Some(1));
}

#[test]
fn equal_radii_coulomb_exits_two() {
    let out = run(&["solve", "--r1", "2", "--r2", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_lowercase();
    assert!(err.contains("singular"), "{err}");
}

#[test]
fn solve_smoke() {
    let out = run(&["solve", "--r1", "1", "--r2", "2", "--n", "4", "--min-coeff", "1e-3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = csv_rows(&text, "state,energy,k,l,c");
    assert!(!rows.is_empty());
    for r in &rows {
        let (k, l): (i32, i32) = (r[2].parse().unwrap(), r[3].parse().unwrap());
        assert_eq!(k + l, 0);
    }
}

#[test]
fn table1_matches_published_coefficients() {
    let out = run(&["reproduce", "table1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = csv_rows(&text, "k,l,c,published,abs_dev");
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert!(r[4].parse::<f64>().unwrap() < 1e-6, "{r:?}");
    }
    let energy = csv_rows(&text, "quantity,value");
    let error = energy.iter().find(|r| r[0] == "abs_error").unwrap();
    assert!(error[1].parse::<f64>().unwrap() < 1e-5);
}

#[test]
fn table2_is_symmetric() {
    let out = run(&["reproduce", "table2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = csv_rows(&text, "k,l,c,published,abs_dev");
    assert_eq!(rows.len(), 15);
    let c = |k: &str| rows.iter().find(|r| r[0] == k).unwrap()[2].parse::<f64>().unwrap();
    for k in 1..=7 {
        assert!((c(&k.to_string()) - c(&(-k).to_string())).abs() < 1e-10);
    }
    assert!(rows.iter().all(|r| r[4].parse::<f64>().unwrap() < 1e-6));
}

#[test]
fn fig1_node_counts() {
    let out = run(&["reproduce", "fig1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let nodes = csv_rows(&text, "label,energy,nodes");
    let counts: Vec<&str> = nodes.iter().map(|r| *r.last().unwrap()).collect();
    assert_eq!(counts, ["2", "0"]);
    assert_eq!(csv_rows(&text, "omega,value,label").len(), 2 * 512);
}

#[test]
fn harmonic_energies_odd_branch() {
    let out = run(&["reproduce", "harmonic-energies"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = csv_rows(&text, "quantity,characteristic,energy");
    let odd = rows.iter().find(|r| r[0] == "odd_branch_lowest_b2").unwrap();
    assert!((odd[2].parse::<f64>().unwrap() - 2.660).abs() < 1e-3);
    let nearest = rows.iter().find(|r| r[0] == "matrix_level_nearest_odd_n16").unwrap();
    assert!((nearest[2].parse::<f64>().unwrap() - odd[2].parse::<f64>().unwrap()).abs() < 1e-6);
}

#[test]
fn untimed_output_is_byte_stable() {
    let a = run(&["reproduce", "sweep", "--no-timing"]);
    let b = run(&["reproduce", "sweep", "--no-timing"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_output_parses() {
    let out = run(&["--format", "json", "mathieu", "--q", "-6.4", "--branch", "odd", "--order", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let value = v[0]["value"].as_f64().unwrap();
    assert!((value - 1.0274).abs() < 5e-4);
}

#[test]
fn out_directory_holds_one_file_per_table() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("t1");
    let out = run(&["reproduce", "table1", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(target.join("table1_coefficients.csv").is_file());
    assert!(target.join("table1_energy.csv").is_file());
}
