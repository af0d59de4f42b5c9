//! CLI integration: exit codes, artifact round trips, and the sweep table
//! against closed forms.

use cohinfo::cli::{self, StateFile};
use cohinfo::states::{isotropic, DensityMatrix, IsotropicParams};

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(&args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn h2(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

fn parse_field(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .and_then(|v| v.split_whitespace().next())
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("field {key} missing in output:\n{out}"))
}

#[test]
fn ci_on_isotropic_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("iso.json");
    let rho = isotropic(IsotropicParams::new(0.9, 2).unwrap());
    std::fs::write(&path, serde_json::to_string(&StateFile::from_density(&rho)).unwrap()).unwrap();

    let (code, out, _) = run_cli(&["ci", "--state", path.to_str().unwrap(), "--side", "B"]);
    assert_eq!(code, 0);
    let clipped = parse_field(&out, "clipped");
    assert!((clipped - 0.37250815633860335).abs() < 1e-10, "clipped {clipped}");
}

#[test]
fn ci_on_two_qubit_maximally_mixed_clips_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mixed.json");
    let rho = DensityMatrix::maximally_mixed((2, 2));
    std::fs::write(&path, serde_json::to_string(&StateFile::from_density(&rho)).unwrap()).unwrap();

    let (code, out, _) = run_cli(&["ci", "--state", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(parse_field(&out, "clipped"), 0.0);
    assert!((parse_field(&out, "raw") + 1.0).abs() < 1e-9);
}

#[test]
fn capacity_writes_json_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cap.json");
    let (code, out, _) = run_cli(&[
        "capacity", "--kind", "dephasing", "--param", "0.1", "--n", "1", "--restarts", "4",
        "--seed", "0", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!((parse_field(&out, "best_ci_per_copy") - (1.0 - h2(0.1))).abs() < 1e-4);

    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["note"], "finite-n lower bound");
    assert_eq!(v["manifest"]["params"]["restarts"], 4);
    assert_eq!(v["manifest"]["seed_source"], "flag");
    assert_eq!(v["per_restart"].as_array().unwrap().len(), 4);
    let best = v["best_ci_per_copy"].as_f64().unwrap();
    assert!((best - (1.0 - h2(0.1))).abs() < 1e-4);
}

#[test]
fn capacity_identity_n2_is_one() {
    let (code, out, _) = run_cli(&[
        "capacity", "--kind", "identity", "--n", "2", "--restarts", "2",
    ]);
    assert_eq!(code, 0);
    assert!((parse_field(&out, "best_ci_per_copy") - 1.0).abs() < 1e-6);
}

#[test]
fn capacity_erasure_at_half_is_zero() {
    let (code, out, _) = run_cli(&[
        "capacity", "--kind", "erasure", "--param", "0.5", "--restarts", "4", "--seed", "0",
    ]);
    assert_eq!(code, 0);
    // Raw CI is (1-2p)S(input) <= 0 at every input for p = 1/2.
    assert!(parse_field(&out, "best_ci_per_copy").abs() <= 1e-9);
}

#[test]
fn capacity_budget_error_is_input_failure() {
    let (code, _, err) = run_cli(&["capacity", "--kind", "dephasing", "--param", "0.1", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "stderr: {err}");
}

#[test]
fn capacity_from_kraus_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ad.json");
    let ch = cohinfo::channels::standard_channel(
        cohinfo::channels::StandardKind::AmplitudeDamping,
        0.25,
    )
    .unwrap();
    std::fs::write(
        &path,
        serde_json::to_string(&cli::ChannelFile::from_channel(&ch)).unwrap(),
    )
    .unwrap();
    let (code, out, _) = run_cli(&[
        "capacity", "--channel", path.to_str().unwrap(), "--restarts", "4", "--seed", "1",
    ]);
    assert_eq!(code, 0);
    // Frozen from the diagonal-grid closed form at γ = 0.25.
    assert!((parse_field(&out, "best_ci_per_copy") - 0.4150374992785735).abs() < 1e-4);
}

#[test]
fn verify_hashing_suite_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("reports");
    let (code, out, _) = run_cli(&[
        "verify", "hashing", "--trials", "50", "--seed", "1", "--out", out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stdout: {out}");
    let text = std::fs::read_to_string(out_dir.join("hashing.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["check_name"], "hashing");
    assert_eq!(v["summary"]["passed"], v["summary"]["total"]);
    assert!(v["manifest"]["params"]["trials"].as_u64() == Some(50));
    for inst in v["instances"].as_array().unwrap() {
        assert!(inst["pass"].as_bool().unwrap());
        assert!(inst["margin"].is_f64());
    }
}

#[test]
fn verify_lemma_suite_exits_three_on_failed_gate() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = run_cli(&[
        "verify", "lemma", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 3, "stdout: {out} stderr: {err}");
    assert!(out.contains("18/19"), "stdout: {out}");
    assert!(err.contains("verification failure"));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let (code, _, err) = run_cli(&["verify", "bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown suite"));
}

#[test]
fn sweep_dephasing_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("deph.csv");
    let (code, _, err) = run_cli(&[
        "sweep", "--kind", "dephasing", "--from", "0", "--to", "0.5", "--step", "0.05",
        "--seed", "0", "--restarts", "4", "--out", csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(err.is_empty(), "unexpected monotonicity warning: {err}");

    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,maximize_ci,maximally_mixed_ci,twirled_choi_hashing_rate"
    );
    assert!(!text.contains('\r'), "CSV must use LF line endings");
    let mut rows = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(cols.len(), 4);
        let (p, best) = (cols[0], cols[1]);
        assert!((best - (1.0 - h2(p))).abs() < 1e-4, "p={p}: {best} vs {}", 1.0 - h2(p));
        rows += 1;
    }
    assert_eq!(rows, 11);

    // Sidecar manifest records the run.
    let sidecar = format!("{}.manifest.json", csv_path.to_str().unwrap());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(sidecar).unwrap()).unwrap();
    assert_eq!(v["params"]["monotone_non_increasing"], true);
}

#[test]
fn sweep_depolarizing_zero_row_is_all_ones() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("depol.csv");
    let (code, _, _) = run_cli(&[
        "sweep", "--kind", "depolarizing", "--from", "0", "--to", "0", "--step", "0.1",
        "--restarts", "2", "--out", csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let row = text.lines().nth(1).unwrap();
    let cols: Vec<f64> = row.split(',').map(|x| x.parse().unwrap()).collect();
    for (i, c) in cols.iter().enumerate().skip(1) {
        assert!((c - 1.0).abs() < 1e-6, "column {i} is {c}");
    }
}

#[test]
fn sweep_erasure_quarter_row() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("erasure.csv");
    let (code, _, _) = run_cli(&[
        "sweep", "--kind", "erasure", "--from", "0.25", "--to", "0.25", "--step", "0.1",
        "--restarts", "4", "--out", csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let row = text.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    let best: f64 = cols[1].parse().unwrap();
    assert!((best - 0.5).abs() < 1e-4, "erasure 0.25 best {best}");
    // The qutrit-output Choi state has no hashing rate.
    assert_eq!(cols[3], "NaN");
}

#[test]
fn sweep_rejects_invalid_range() {
    let (code, _, err) = run_cli(&[
        "sweep", "--kind", "dephasing", "--from", "0.5", "--to", "0.2", "--step", "0.1",
        "--out", "/tmp/never.csv",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid range"));
}
