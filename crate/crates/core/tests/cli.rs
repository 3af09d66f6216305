//! End-to-end checks of the polybasis binary: file contents, summaries,
//! error reporting, and byte-level determinism across reruns.

use std::fmt::Write as _;
use std::path::Path;
use std::process::{Command, Output};

use polybasis::basis::{c_multipolar, ScaleConfig, C0, HBAR};
use polybasis::hilbert::gauss_laguerre_rule;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polybasis"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success for {args:?}\nstderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty(), "data must go to files, not stdout");
    out
}

fn run_err(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary runs");
    assert!(!out.status.success(), "expected failure for {args:?}");
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).expect("output file exists")
}

/// Parses the trailing "# summary: a=1, b=2" line into (key, value) pairs.
fn summary_fields(text: &str) -> Vec<(String, String)> {
    let line = text
        .lines()
        .find(|l| l.starts_with("# summary:"))
        .expect("summary line present");
    line.trim_start_matches("# summary:")
        .split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').expect("key=value");
            (k.trim().to_string(), v.trim().to_string())
        })
        .collect()
}

fn summary_f64(text: &str, key: &str) -> f64 {
    summary_fields(text)
        .iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("summary key {key}"))
        .1
        .parse()
        .expect("summary value parses")
}

#[test]
fn basis_table_grid_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("t1.csv");
    let out2 = dir.path().join("t2.csv");
    let args = |out: &Path| {
        vec![
            "basis-table".to_string(),
            "--n".into(),
            "2,3,4".into(),
            "--j".into(),
            "1".into(),
            "--k-points".into(),
            "100".into(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let a1 = args(&out1);
    run_ok(&a1.iter().map(String::as_str).collect::<Vec<_>>());
    let text = read(&out1);

    // header plus 3 pairs x 100 samples
    assert_eq!(text.lines().count(), 301);
    assert_eq!(text.lines().next().unwrap(), "n,j,k [1/m],c_nj [m]");

    // k = 0 rows vanish exactly for j >= 1
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[2].parse::<f64>().unwrap() == 0.0 {
            assert_eq!(cells[3].parse::<f64>().unwrap(), 0.0, "row {line}");
        }
    }

    // spot value against the library
    let scale = ScaleConfig::default();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let k: f64 = row[2].parse().unwrap();
    let c: f64 = row[3].parse().unwrap();
    assert_eq!(c, c_multipolar(2, 1, k, &scale).unwrap());

    // rerun to a second path is byte-identical
    let a2 = args(&out2);
    run_ok(&a2.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
}

#[test]
fn basis_table_rejects_inadmissible_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let stderr = run_err(&[
        "basis-table",
        "--n",
        "2",
        "--j",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stderr.contains("invalid --j"), "{stderr}");
    assert!(stderr.contains("inadmissible"), "{stderr}");
}

#[test]
fn gram_small_matrix_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    run_ok(&[
        "gram",
        "--n-max",
        "2",
        "--order",
        "64",
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = read(&out);

    // 6 indices (m in -1..=1, two helicities) -> 36 entries
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 36);

    for cells in &rows {
        let diag = cells[0..4] == cells[4..8];
        let v: f64 = cells[8].parse().unwrap();
        if diag {
            assert!((v - 1.0).abs() < 1e-10, "diagonal {cells:?}");
        } else {
            assert!(v.abs() < 1e-10, "off-diagonal {cells:?}");
        }
    }

    // scalar product is real-symmetric here, and entries are computed by a
    // commutative product, so transposed entries match bitwise
    for cells in &rows {
        let key: Vec<&String> = cells[0..8].iter().collect();
        let flipped: Vec<&String> =
            cells[4..8].iter().chain(cells[0..4].iter()).collect();
        let twin = rows
            .iter()
            .find(|r| r[0..8].iter().collect::<Vec<_>>() == flipped)
            .unwrap_or_else(|| panic!("transpose of {key:?}"));
        assert_eq!(cells[8], twin[8]);
    }
}

#[test]
fn gram_summary_certifies_orthonormality() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g6.csv");
    run_ok(&[
        "gram",
        "--n-max",
        "6",
        "--order",
        "200",
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = read(&out);
    assert!(summary_f64(&text, "max_off_diagonal") < 1e-10);
    assert!(summary_f64(&text, "max_diagonal_deviation") < 1e-10);
    // 85 indices per helicity for n <= 6
    let data_rows = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .count();
    assert_eq!(data_rows, 170 * 170);
}

/// Samples the (n, j) = (3, 1) profile on the rule's nodes as an input file.
fn write_unit_spectrum(path: &Path, order: usize) {
    let scale = ScaleConfig::default();
    let rule = gauss_laguerre_rule(order, 1.0).unwrap();
    let mut text = String::from("j,m,lambda,k [1/m],re,im\n");
    for &k in rule.nodes() {
        let c = c_multipolar(3, 1, k, &scale).unwrap();
        let _ = writeln!(text, "1,0,1,{k:.17e},{c:.17e},0.0");
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn project_recovers_unit_coefficient_and_energy() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("spec.csv");
    let out = dir.path().join("coeffs.csv");
    write_unit_spectrum(&input, 120);
    run_ok(&[
        "project",
        input.to_str().unwrap(),
        "--n-max",
        "5",
        "--order",
        "120",
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = read(&out);

    // one channel (j=1, m=0, lambda=1), n runs over 2..=5
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    for cells in &rows {
        let n: u32 = cells[0].parse().unwrap();
        let re: f64 = cells[4].parse().unwrap();
        let im: f64 = cells[5].parse().unwrap();
        let expect = if n == 3 { 1.0 } else { 0.0 };
        assert!((re - expect).abs() < 1e-9, "n={n} re={re}");
        assert!(im.abs() < 1e-12, "n={n} im={im}");
    }

    // |3 1 0 +> carries one photon of energy 3 hbar c0 k0
    assert!((summary_f64(&text, "photon_number") - 1.0).abs() < 1e-10);
    let energy = summary_f64(&text, "energy_joules");
    let expect = 3.0 * HBAR * C0;
    assert!((energy / expect - 1.0).abs() < 1e-10, "energy {energy}");
    assert!(summary_f64(&text, "residual") < 1e-9);
}

#[test]
fn project_errors_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.csv");

    // missing column in the header
    let bad = dir.path().join("missing.csv");
    std::fs::write(&bad, "j,m,lambda,k,re\n").unwrap();
    let stderr = run_err(&[
        "project",
        bad.to_str().unwrap(),
        "--n-max",
        "4",
        "--order",
        "32",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stderr.contains("missing column \"im\""), "{stderr}");

    // malformed cell reports its line number
    let bad = dir.path().join("mangled.csv");
    std::fs::write(&bad, "j,m,lambda,k,re,im\n1,0,1,oops,1.0,0.0\n").unwrap();
    let stderr = run_err(&[
        "project",
        bad.to_str().unwrap(),
        "--n-max",
        "4",
        "--order",
        "32",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stderr.contains("line 2"), "{stderr}");

    // off-node sampling points at the resampling knobs
    let bad = dir.path().join("offnode.csv");
    let mut text = String::from("j,m,lambda,k,re,im\n");
    let rule = gauss_laguerre_rule(32, 1.0).unwrap();
    for &k in rule.nodes() {
        let _ = writeln!(text, "1,0,1,{},1.0,0.0", k * 1.5);
    }
    std::fs::write(&bad, text).unwrap();
    let stderr = run_err(&[
        "project",
        bad.to_str().unwrap(),
        "--n-max",
        "4",
        "--order",
        "32",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stderr.contains("--order"), "{stderr}");
}

#[test]
fn timetrace_all_satisfies_split_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    run_ok(&[
        "timetrace",
        "--n",
        "2",
        "--j",
        "1",
        "--l",
        "1",
        "--r",
        "5",
        "--kind",
        "all",
        "--ct-min",
        "-15",
        "--ct-max",
        "15",
        "--ct-step",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    let text = read(&out);

    // 301 grid points, three kinds each, one header
    assert_eq!(text.lines().count(), 1 + 3 * 301);
    let mut max_split: f64 = 0.0;
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 6);
        max_split = max_split.max(cells[5].parse::<f64>().unwrap());
    }
    assert!(max_split < 1e-8, "split residual {max_split}");
}

#[test]
fn timetrace_empty_window_and_scale_guard() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("empty.csv");
    run_ok(&[
        "timetrace",
        "--n",
        "2",
        "--j",
        "1",
        "--l",
        "0",
        "--r",
        "3",
        "--ct-min",
        "5",
        "--ct-max",
        "-5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(read(&out).lines().count(), 1, "header only");

    let stderr = run_err(&[
        "timetrace",
        "--n",
        "2",
        "--j",
        "1",
        "--l",
        "0",
        "--r",
        "3",
        "--ct-min",
        "0",
        "--ct-max",
        "1",
        "--k0",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(stderr.contains("invalid --k0"), "{stderr}");
}

#[test]
fn json_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("spec.csv");
    write_unit_spectrum(&input, 64);
    let out1 = dir.path().join("p1.json");
    let out2 = dir.path().join("p2.json");
    for out in [&out1, &out2] {
        run_ok(&[
            "project",
            input.to_str().unwrap(),
            "--n-max",
            "4",
            "--order",
            "64",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    let b1 = std::fs::read(&out1).unwrap();
    assert_eq!(b1, std::fs::read(&out2).unwrap());
    let text = String::from_utf8(b1).unwrap();
    assert!(text.contains("\"command\": \"project\""));
    assert!(text.contains("\"photon_number\""));
}

#[test]
fn unwritable_output_path_fails_cleanly() {
    let stderr = run_err(&[
        "basis-table",
        "--n",
        "2",
        "--j",
        "1",
        "--out",
        "/nonexistent_dir_zz/t.csv",
    ]);
    assert!(stderr.starts_with("error:"), "{stderr}");
}
