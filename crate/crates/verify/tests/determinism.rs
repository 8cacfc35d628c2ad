use carlitz_verify::{emit, run, run_check, CheckConfig, CheckReport, Format, Status, VerifyError};

fn cfg(check: &str) -> CheckConfig {
    CheckConfig { check: Some(check.into()), p: 3, samples: 3, prec: 30, tcap: 20, degcap: 20, ..CheckConfig::default() }
}

fn json(r: &CheckReport) -> String {
    emit(&[r.normalized()], Format::Json)
}

#[test]
fn identical_configs_give_identical_json() {
    for check in ["thm1-psi1", "thm2-hI-const", "lem31-bound", "cor52-chieval", "gauss-product"] {
        let a = run_check(&cfg(check)).unwrap();
        let b = run_check(&cfg(check)).unwrap();
        assert_eq!(json(&a), json(&b), "{check}");
    }
}

#[test]
fn seed_changes_the_samples() {
    let a = run_check(&cfg("eq1-agf")).unwrap();
    let b = run_check(&CheckConfig { seed: 7, ..cfg("eq1-agf") }).unwrap();
    assert_ne!(json(&a), json(&b));
}

#[test]
fn report_schema() {
    let r = run_check(&cfg("eq2-omega")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit(&[r], Format::Json)).unwrap();
    for key in ["check", "params", "status", "residual_valuation", "samples", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["status"], "pass");
    assert!(v["residual_valuation"].is_i64());
    let r = run_check(&cfg("lem55-telescope")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit(&[r], Format::Json)).unwrap();
    assert_eq!(v["residual_valuation"], "exact");
}

#[test]
fn run_all_is_in_registry_order() {
    let c = CheckConfig { check: None, all: true, p: 2, samples: 2, prec: 20, tcap: 16, degcap: 16, ..CheckConfig::default() };
    let reports = run(&c).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
    let expected: Vec<&str> =
        carlitz_verify::entries().iter().filter(|e| e.needs.min_q <= 2).map(|e| e.name).collect();
    assert_eq!(names, expected);
    let text = emit(&reports.iter().map(|r| r.normalized()).collect::<Vec<_>>(), Format::Json);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["manifest"].as_array().unwrap().len(), reports.len());
    assert_eq!(v["manifest"][0]["check"], "thm1-psi1");
    let again = run(&c).unwrap();
    assert_eq!(text, emit(&again.iter().map(|r| r.normalized()).collect::<Vec<_>>(), Format::Json));
    assert!(reports.iter().any(|r| r.status == Status::Fail));
}

#[test]
fn unknown_and_inapplicable_checks() {
    assert!(matches!(run_check(&cfg("no-such-check")), Err(VerifyError::UnknownCheck(_))));
    let c = CheckConfig { p: 2, ..cfg("thm2-hI-const") };
    assert!(matches!(run_check(&c), Err(VerifyError::ConfigInvalid(_))));
    let c = CheckConfig { primes: vec![vec![1, 0, 1]], p: 2, ..cfg("gauss-product") };
    assert!(matches!(run_check(&c), Err(VerifyError::ConfigInvalid(_))));
}

#[test]
fn text_and_tsv_renderings() {
    let r = run_check(&cfg("eq5-pelsid")).unwrap();
    let text = emit(&[r.clone()], Format::Text);
    assert!(text.starts_with("check eq5-pelsid\n  identity: L(χ_t, 1) (θ - t) ω(t) = π̃\n"));
    assert!(text.contains("status PASS"));
    let tsv = emit(&[r], Format::Tsv);
    let mut rows = tsv.lines();
    assert_eq!(rows.next(), Some("check\tsample\tstatus\tresidual_valuation\tdetails"));
    assert!(rows.next().unwrap().starts_with("eq5-pelsid\tidentity\tpass\t"));
}
