use std::path::Path;
use std::process::{Command, Output};

fn h2beta(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h2beta"))
        .args(args)
        .env("H2BETA_OUT_DIR", out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classify_dirichlet() {
    let dir = tempfile::tempdir().unwrap();
    let o = h2beta(dir.path(), &["classify", "--weight", "dirichlet", "--property", "slowly-oscillating", "--window", "4096"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&dir.path().join("classify.json"));
    assert_eq!(v["verdict"], "HoldsUpToN");
}

#[test]
fn passing_suite_exits_zero_and_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = h2beta(d.path(), &["verify", "schur", "--seed", "11"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ra = std::fs::read(a.path().join("report.json")).unwrap();
    let rb = std::fs::read(b.path().join("report.json")).unwrap();
    assert_eq!(ra, rb);
    let v = read_json(&a.path().join("report.json"));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["seed"], 11);
}

#[test]
fn failing_check_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/constants.txt")).unwrap();
    let text = text
        .lines()
        .map(|l| if l.starts_with("stationary_kappa") { "stationary_kappa = 1e-6" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let cpath = dir.path().join("tight.txt");
    std::fs::write(&cpath, text).unwrap();
    let o = h2beta(dir.path(), &["verify", "stationary-phase", "--constants", cpath.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&dir.path().join("report.json"));
    assert_eq!(v["pass"], false);
    assert!(dir.path().join("stationary_phase.csv").exists());
}

#[test]
fn usage_and_config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&h2beta(dir.path(), &["verify", "nope"])), 1);
    assert_eq!(code(&h2beta(dir.path(), &["frobnicate"])), 1);
    assert_eq!(code(&h2beta(dir.path(), &["classify", "--weight", "hardy"])), 1);

    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[run]\nseed = 1\nN = \"many\"\n").unwrap();
    let o = h2beta(dir.path(), &["--config", cfg.to_str().unwrap(), "verify", "schur"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 5"), "{err}");
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    std::fs::write(&file, "x").unwrap();
    let o = h2beta(&file.join("sub"), &["coeffs", "--symbol", "monomial:k=2", "--power", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn config_names_and_section_export() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[weights.w]\nkind = \"bergman\"\n\n[symbols.s]\nkind = \"monomial\"\nk = 2\n\n[run]\nN = 32\n").unwrap();
    let o = h2beta(dir.path(), &["--config", cfg.to_str().unwrap(), "section-norm", "--weight", "w", "--symbol", "s", "--export"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&dir.path().join("section_norm.json"));
    assert_eq!(v["N"], 32);
    assert!(v["sigma"].as_f64().unwrap() <= 1.0 + 1e-10);
    assert!(dir.path().join("section.csv").exists());
}

#[test]
fn divergence_probe_flags_alternating() {
    let dir = tempfile::tempdir().unwrap();
    let o = h2beta(dir.path(), &["section-norm", "--weight", "alternating", "--symbol", "monomial:k=2", "--n-list", "32,64,128"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_json(&dir.path().join("divergence.json"))["divergent"], true);
}
