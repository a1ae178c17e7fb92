use std::path::Path;
use std::process::Command;

fn qdesign(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdesign"))
        .args(args)
        .env_remove("QDESIGN_SEED")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_passes_and_fails_with_the_documented_codes() {
    let (code, stdout, _) = qdesign(&["design", "verify", "--name", "icosahedron", "--t", "5", "--tol", "1e-9"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("pass: true"));
    let (code, stdout, _) = qdesign(&["design", "verify", "--name", "icosahedron", "--t", "7"]);
    assert_eq!(code, 2);
    assert!(stdout.contains("pass: false"));
}

#[test]
fn bad_arguments_exit_with_one() {
    for args in [
        vec!["design", "verify", "--bogus"],
        vec!["eur", "compare", "--a", "9"],
        vec!["eur", "ico-best", "--alpha-grid", "3:0:4"],
        vec!["entdetect", "scan", "--family", "nope"],
        vec!["entdetect", "scan", "--family", "rho-x-phi", "--a", "3"],
        vec!["design", "verify", "--name", "no-such-design"],
        vec!["selftest", "--suite", "nope"],
        vec!["frobnicate"],
    ] {
        assert_eq!(qdesign(&args).0, 1, "{args:?}");
    }
    assert_eq!(qdesign(&["--help"]).0, 0);
}

#[test]
fn search_without_convergence_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let (code, _, stderr) = qdesign(&[
        "design", "search", "--d", "2", "--K", "24", "--t", "7", "--max-iters", "5", "--restarts", "1",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 3, "{stderr}");
    assert!(!out.exists());
}

#[test]
fn search_writes_a_certifiable_design_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tetra.json");
    let path = out.to_str().unwrap();
    assert_eq!(qdesign(&["design", "search", "--d", "2", "--K", "4", "--t", "2", "--out", path]).0, 0);
    assert!(Path::new(&format!("{path}.manifest.json")).exists());
    assert_eq!(qdesign(&["design", "verify", "--file", path]).0, 0);
    assert_eq!(qdesign(&["selftest", "--suite", "designs", "--design-file", path]).0, 0);
}

#[test]
fn selftest_rejects_a_broken_design_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    // Two orthogonal vectors are a 1-design but claimed here as a 3-design.
    std::fs::write(
        &path,
        r#"{"dim": 2, "strength": 3, "vectors": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}"#,
    )
    .unwrap();
    let (code, stdout, _) = qdesign(&["selftest", "--suite", "eur", "--design-file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stdout.contains("eur:") && stdout.contains("FAILED"));
    assert!(!stdout.contains("qcore:"));
    assert_eq!(qdesign(&["selftest"]).0, 0);
}

#[test]
fn csv_schemas_and_precision() {
    let (code, stdout, stderr) = qdesign(&["eur", "compare", "--design", "snub-cube", "--a", "2", "--steps", "3"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("alpha,q1,q2,q_ras,q_ket"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "2.0000000000000000e0");
    // 17 significant digits: one leading digit and sixteen decimals.
    let mantissa = first[1].split('e').next().unwrap();
    assert_eq!(mantissa.len(), 18);
    assert!((first[1].parse::<f64>().unwrap() - 18f64.ln()).abs() < 1e-12);
    // With no output file the manifest goes to stderr.
    assert!(stderr.contains("\"command\": \"eur compare\""));

    let (_, stdout, _) = qdesign(&["entdetect", "scan", "--family", "unbiasedness", "--sets", "3"]);
    assert_eq!(stdout.lines().next(), Some("U,x_critical"));
    let (_, stdout, _) = qdesign(&["entdetect", "scan", "--family", "isotropic", "--grid", "3", "--a", "2"]);
    assert_eq!(stdout.lines().next(), Some("param1,param2,lhs,rhs,violated"));
    let (_, stdout, _) = qdesign(&["eur", "diagram", "--L", "3", "--a", "3", "--samples", "5", "--resolution", "4"]);
    assert_eq!(stdout.lines().next(), Some("c_a,H_alpha,alpha,kind"));
    assert_eq!(stdout.lines().count(), 1 + 10 + 2 * 8);
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qdesign"));
        cmd.args(["eur", "diagram", "--L", "4", "--a", "2", "--samples", "20"]).args(extra);
        match env {
            Some(v) => cmd.env("QDESIGN_SEED", v),
            None => cmd.env_remove("QDESIGN_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("42"), &[]), run(None, &["--seed", "42"]));
    assert_ne!(run(Some("42"), &[]), run(None, &[]));
}
