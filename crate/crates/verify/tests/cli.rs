use std::process::Command;

fn verify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const SMALL: [&str; 8] = ["--prec", "20", "--tcap", "16", "--degcap", "16", "--samples", "2"];

#[test]
fn passing_check_exits_zero() {
    let mut args = vec!["--check", "eq2-omega", "--p", "3", "--format", "json"];
    args.extend(SMALL);
    let (code, out) = verify(&args);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
}

#[test]
fn failing_check_exits_one_and_shows_the_sample() {
    let mut args = vec!["--check", "ec-imag-upper", "--p", "2", "--format", "json"];
    args.extend(SMALL);
    let (code, out) = verify(&args);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["samples"][0]["status"], "fail");
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["--check", "nope"],
        vec!["--p", "2"],
        vec!["--check", "eq2-omega", "--prec", "0"],
        vec!["--check", "gauss-product", "--prime", "1,0,1"],
        vec!["--check", "eq2-omega", "--config", "/nonexistent/file.cfg"],
        vec!["--check", "eq2-omega", "--format", "xml"],
    ] {
        assert_eq!(verify(&args).0, 2, "{args:?}");
    }
}

#[test]
fn flags_override_the_config_file() {
    let dir = std::env::temp_dir().join(format!("verify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("run.cfg");
    std::fs::write(&file, "check=eq2-omega\np=2\nprec=20\ntcap=16\nformat=text\n").unwrap();
    let out_path = dir.join("out.json");
    let (code, stdout) = verify(&[
        "--config",
        file.to_str().unwrap(),
        "--p",
        "3",
        "--format",
        "json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["params"]["q"], 3);
    assert_eq!(v["params"]["prec"], 20);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn spec_examples() {
    let (code, out) = verify(&["--check", "lem55-telescope", "--p", "2", "--degree", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["residual_valuation"], "exact");
    for idx in ["0", "1"] {
        let (code, out) =
            verify(&["--check", "thm3-omega-gauss", "--p", "2", "--prime", "1,1,1", "--root-index", idx, "--format", "tsv"]);
        assert_eq!(code, 0, "{out}");
    }
    let (code, out) = verify(&["--check", "thm1-psi1", "--p", "3", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("identity: e_C(z) ψ_1(z)"));
}

#[test]
fn list_names_every_check() {
    let (code, out) = verify(&["--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), carlitz_verify::entries().len());
}
