use std::path::PathBuf;

use pathcenter::io::cli::run;
use pathcenter::io::report::Report;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root()
        .join("fixtures")
        .join(format!("{name}.graph"))
        .to_string_lossy()
        .into_owned()
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut full = vec!["pathcenter", "--format", "json"];
    full.extend_from_slice(args);
    let out = run(full);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (serde_json::from_str(&out.stdout).unwrap(), out.code)
}

#[test]
fn reports_validate_and_round_trip() {
    let text = std::fs::read_to_string(root().join("../../schema/report.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let runs: Vec<Vec<String>> = vec![
        vec!["analyze".into(), fixture("exit_loop_feeding")],
        vec![
            "center".into(),
            fixture("cycle3"),
            "--algebra".into(),
            "path".into(),
        ],
        vec![
            "center".into(),
            fixture("R2"),
            "--algebra".into(),
            "cohn".into(),
        ],
        vec![
            "center".into(),
            fixture("feeding"),
            "--algebra".into(),
            "leavitt".into(),
        ],
        vec![
            "center".into(),
            fixture("two_loops"),
            "--algebra".into(),
            "leavitt".into(),
        ],
        vec![
            "gprimes".into(),
            fixture("toeplitz"),
            "--check-len".into(),
            "2".into(),
        ],
        vec![
            "gprimes".into(),
            fixture("two_loops"),
            "--check-len".into(),
            "2".into(),
        ],
        vec![
            "oracle".into(),
            fixture("R1"),
            "--algebra".into(),
            "leavitt".into(),
            "--max-len".into(),
            "2".into(),
            "--deg-window".into(),
            "-1".into(),
            "1".into(),
            "--verify".into(),
        ],
        vec![
            "oracle".into(),
            fixture("cycle2"),
            "--algebra".into(),
            "path".into(),
            "--max-len".into(),
            "2".into(),
            "--deg".into(),
            "2".into(),
        ],
    ];
    for args in runs {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (value, _) = json(&refs);
        let errors: Vec<String> = validator
            .iter_errors(&value)
            .map(|e| format!("{e} at {}", e.instance_path()))
            .collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        let report: Report = serde_json::from_value(value.clone()).unwrap();
        assert_eq!(serde_json::to_value(&report).unwrap(), value);
        let mut broken = value.clone();
        broken["graph"]["vertices"] = serde_json::json!(["not an id"]);
        assert!(!validator.is_valid(&broken));
    }
}

#[test]
fn json_is_deterministic() {
    let args = ["gprimes", &fixture("two_loops"), "--check-len", "2"];
    let first = run(["pathcenter", "--format", "json"].into_iter().chain(args));
    let second = run(["pathcenter", "--format", "json"].into_iter().chain(args));
    assert_eq!(first, second);
}
