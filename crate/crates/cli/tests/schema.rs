//! Every subcommand's JSON report must validate against the shipped schema.

use std::process::Command;

fn validator() -> jsonschema::Validator {
    let schema_path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../schemas/report.schema.json"
    );
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_zetaq"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("single JSON document")
}

#[test]
fn all_subcommand_reports_validate() {
    let dir = std::env::temp_dir().join("zetaq-schema-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let poly = dir.join("x2p1.poly");
    std::fs::write(&poly, "3 1 affine\nX1^2 + 1\n").unwrap();
    let poly = poly.to_str().unwrap();

    let commands: Vec<Vec<&str>> = vec![
        vec!["count", "--diag", "--p", "7", "--m", "2", "--coeffs", "-1,1,1,1", "--s", "1,2"],
        vec!["count", "--file", poly, "--s", "1,2,3"],
        vec!["zeta", "--p", "5", "--m", "4", "--coeffs", "1,1,1", "--order", "4"],
        vec!["simulate", "--p", "7", "--m", "3", "--coeffs", "1,1,1"],
        vec![
            "qpe", "--p", "7", "--m", "2", "--coeffs", "-1,1,1,1", "--b", "1,1,1,1",
            "--t-bits", "6", "--samples", "40", "--seed", "1", "--dump-dist",
        ],
        vec![
            "estimate", "--p", "5", "--m", "4", "--coeffs", "1,1,1", "--s", "1",
            "--t-bits", "9", "--seed", "2",
        ],
        vec!["orbits", "--file", poly, "--order", "4"],
    ];

    let v = validator();
    for args in commands {
        let doc = run_json(&args);
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}
