use std::process::Command;

use serde_json::Value;

fn fibfock(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fibfock"))
        .args(args)
        .env_remove("CF_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, Vec<u8>) {
    let out = fibfock(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    (serde_json::from_slice(&out.stdout).expect("json"), out.stdout)
}

/// Documented top-level layout plus the payload keys each command promises.
fn assert_schema(report: &Value, command: &str, payload_keys: &[&str]) {
    let obj = report.as_object().expect("object");
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(keys, ["schema_version", "command", "config", "payload", "provenance"]);
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["command"], command);
    assert!(report["config"].is_object());
    assert!(report["provenance"].as_array().is_some_and(|p| !p.is_empty() && p.iter().all(Value::is_string)));
    for k in payload_keys {
        assert!(report["payload"].get(k).is_some(), "{command}: payload lacks `{k}`");
    }
}

#[test]
fn every_subcommand_matches_schema_and_round_trips() {
    let cases: [(&[&str], &str, &[&str]); 7] = [
        (&["recognize", "6765"], "recognize", &["query", "is_fibonacci", "indicator", "method", "certificate", "certificate_verified"]),
        (&["convergents", "--count", "6"], "convergents", &["rows"]),
        (&["hurwitz", "--count", "10"], "hurwitz", &["rows", "summary"]),
        (&["sweep", "--max", "1000"], "sweep", &["rows", "summary"]),
        (&["enumerate", "--cutoff", "5"], "enumerate", &["rows", "counts"]),
        (&["simulate", "--cutoff", "1", "--shots", "300", "--seed", "3"], "simulate", &["shots", "seed", "counts"]),
        (&["superselect-demo"], "superselect-demo", &["purity", "explicit_purity", "expectation", "cross_element", "evolution"]),
    ];
    for (args, command, keys) in cases {
        let (report, bytes) = json(args);
        assert_schema(&report, command, keys);
        let mut again = serde_json::to_string_pretty(&report).unwrap();
        again.push('\n');
        assert_eq!(again.as_bytes(), bytes.as_slice(), "{command} does not round-trip");
    }
}

#[test]
fn recognize_fibonacci_with_certificate() {
    let (r, _) = json(&["recognize", "6765"]);
    assert_eq!(r["payload"]["is_fibonacci"], true);
    assert_eq!(r["payload"]["certificate"]["method"], "floor_ceiling");
    assert_eq!(r["payload"]["certificate_verified"], true);
    assert_eq!(r["payload"]["query"], "6765");

    let (r, _) = json(&["recognize", "6766", "--method", "exact", "--policy", "literal:10"]);
    assert_eq!(r["payload"]["is_fibonacci"], false);
    assert_eq!(r["payload"]["certificate"]["method"], "exact_interval");

    // Far past 64 bits: F_100.
    let (r, _) = json(&["recognize", "354224848179261915075", "--method", "brute"]);
    assert_eq!(r["payload"]["is_fibonacci"], true);
}

#[test]
fn convergents_csv() {
    let out = fibfock(&["convergents", "--count", "4", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "index,p,q,fraction\n1,1,1,1/1\n2,1,2,1/2\n3,2,3,2/3\n4,3,5,3/5\n"
    );
}

#[test]
fn hurwitz_parity_summary() {
    let (r, _) = json(&["hurwitz", "--count", "40"]);
    let s = &r["payload"]["summary"];
    assert_eq!((s["holds"].as_u64(), s["fails"].as_u64()), (Some(20), Some(20)));
    assert_eq!(s["parity_consistent"], true);
}

#[test]
fn sweep_policy_overrides() {
    let (r, _) = json(&["sweep", "--max", "10000", "--policy", "literal:100", "--policy", "rigorous:8"]);
    assert_eq!(r["config"]["literal"], "literal:100");
    assert_eq!(r["config"]["rigorous"], "rigorous:8");
    assert_eq!(r["payload"]["summary"]["rigorous_misclassifications"], 0);
    let (r, _) = json(&["sweep", "--max", "10000"]);
    assert!(r["payload"]["summary"]["literal_misclassifications"].as_u64().unwrap() >= 1);
}

#[test]
fn enumerate_counts_partition() {
    let (r, _) = json(&["enumerate", "--cutoff", "20"]);
    let c = &r["payload"]["counts"];
    assert_eq!(c["total"], 231);
    assert_eq!(c["expected_total"], 231);
    assert_eq!(c["vacuum"], 1);
    assert_eq!(c["fibonacci"], 21);
    assert_eq!(c["fibonacci"].as_u64().unwrap() + c["non_fibonacci"].as_u64().unwrap() + 1, 231);
}

#[test]
fn simulate_is_byte_identical() {
    let args = ["simulate", "--cutoff", "1", "--shots", "3000", "--seed", "7"];
    let (first, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(a, b);
    let band = 3.0 * (3000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    for row in first["payload"]["counts"].as_array().unwrap() {
        assert!((row["count"].as_f64().unwrap() - 1000.0).abs() <= band);
    }
}

#[test]
fn seed_from_environment_and_flag_override() {
    let run = |seed_env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_fibfock"));
        cmd.args(["simulate", "--cutoff", "2", "--shots", "1000"]).args(extra);
        match seed_env {
            Some(s) => cmd.env("CF_SEED", s),
            None => cmd.env_remove("CF_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("5"), &[]), run(None, &["--seed", "5"]));
    assert_eq!(run(Some("99"), &["--seed", "5"]), run(None, &["--seed", "5"]));
    assert_ne!(run(Some("5"), &[]), run(Some("6"), &[]));
}

#[test]
fn superselect_demo_defaults() {
    let (r, _) = json(&["superselect-demo"]);
    let p = &r["payload"];
    assert_eq!(p["descriptor"], "mixed");
    assert!((p["purity"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
    assert!((p["explicit_purity"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
    assert!((p["explicit_trace"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
    assert!((p["literal_coefficient_trace"].as_f64().unwrap() - 2f64.sqrt()).abs() <= 1e-12);
    assert_eq!(p["cross_element"]["re"], 0.0);
    assert_eq!(p["cross_element"]["im"], 0.0);
    assert_eq!(p["evolution_passed"], true);

    let (r, _) = json(&["superselect-demo", "--w1", "1"]);
    assert_eq!(r["payload"]["descriptor"], "pure");
    assert!((r["payload"]["purity"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn exit_codes_and_diagnostics() {
    let domain = fibfock(&["recognize", "0", "--method", "exact"]);
    assert_eq!(domain.status.code(), Some(3));
    assert!(domain.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&domain.stderr).lines().count(), 1);

    for bad in [
        &["recognize"][..],
        &["recognize", "-4"],
        &["recognize", "7", "--method", "guess"],
        &["recognize", "7", "--policy", "rigorous"],
        &["simulate", "--cutoff", "1", "--shots", "10", "--weighting", "cubic"],
        &["frobnicate"],
        &[],
    ] {
        let out = fibfock(bad);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1, "{bad:?}");
    }

    assert_eq!(fibfock(&["simulate", "--cutoff", "1", "--shots", "0"]).status.code(), Some(3));
    assert_eq!(fibfock(&["superselect-demo", "--w1", "1.5"]).status.code(), Some(3));
    assert_eq!(fibfock(&["recognize", "0"]).status.code(), Some(0));
}

#[test]
fn out_path_receives_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hurwitz.csv");
    let out = fibfock(&["hurwitz", "--count", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("index,p,q,verdict,phi_side\n1,1,1,Holds,below\n"));

    let missing = dir.path().join("no/such/dir/x.json");
    let out = fibfock(&["convergents", "--count", "1", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
