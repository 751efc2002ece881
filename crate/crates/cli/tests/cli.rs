use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn config(name: &str) -> String {
    root().join("configs").join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validator(schema: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema").join(schema)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn a1_adjoint_window_has_six_classes() {
    let o = strata(&["straight-classes", "--config", &config("a1_ad"), "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 6);
    assert!(validator("classes.schema.json").is_valid(&v));
}

#[test]
fn restriction_example_separates_length_zero_classes() {
    let o = strata(&["straight-classes", "--config", &config("a1xa1_swap_trivial_gamma"), "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert!(rows.len() >= 2);
    let kappas: std::collections::BTreeSet<&str> = rows.iter().map(|r| r.split('\t').nth(1).unwrap()).collect();
    assert_eq!(kappas.len(), rows.len());
    assert!(rows.iter().all(|r| r.split('\t').nth(2) == Some("(0,0)")));
}

#[test]
fn verify_reports_validate_and_pass() {
    let report = validator("report.schema.json");
    for (cfg, theorem, bound) in [
        ("a1_ad", "gamma", "4"),
        ("a1xa1_swap", "partial", "4"),
        ("a2_swap", "inject", "6"),
        ("b2_swap", "length-add", "3"),
        ("a2_id", "bij", "3"),
        ("b2_id", "min1", "3"),
        ("g2_id", "min2", "3"),
    ] {
        let o = strata(&["verify", "--config", &config(cfg), "--theorem", theorem, "--bound", bound]);
        assert_eq!(o.status.code(), Some(0), "{cfg} {theorem}: {}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(report.is_valid(&v), "{cfg} {theorem}");
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn partial_counts_exceed_whole_omega_counts() {
    let o = strata(&["verify", "--config", &config("a1xa1_swap"), "--theorem", "partial", "--bound", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["classes"].as_u64().unwrap() > v["details"]["classes_for_whole_omega"].as_u64().unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(strata(&["verify", "--config", &config("a2_swap"), "--theorem", "bij"]).status.code(), Some(1));
    assert_eq!(strata(&["verify", "--config", &config("a2_swap"), "--theorem", "nope"]).status.code(), Some(1));
    assert_eq!(strata(&["verify", "--config", "/nonexistent.json", "--theorem", "gamma"]).status.code(), Some(1));
    assert_eq!(strata(&["figure", "--config", &config("a1_ad")]).status.code(), Some(1));
    assert_eq!(strata(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(strata(&["--help"]).status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("strata-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"cartan_type": "A1", "colour": "red"}"#).unwrap();
    assert_eq!(strata(&["straight-classes", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
    // a window too large for the element cap is refused rather than truncated
    let o = strata(&["verify", "--config", &config("a2_id"), "--theorem", "gamma", "--max-elements", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn examples_match_golden_files() {
    let o = strata(&["examples"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("stated subspace: (1/3) alpha_2^vee + Q alpha_1^vee"));
    assert!(text.contains("stated subspace: (1/4)(alpha^vee + beta^vee) + Q alpha^vee"));
    assert!(text.contains("verdict: same sigma-conjugacy class, different W_a-sigma-conjugacy classes: yes"));
}

#[test]
fn figures_are_svg_and_flag_identity() {
    let o = strata(&["figure", "--config", &config("a2_swap")]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.contains("stroke-dasharray"));
    let o = strata(&["figure", "--config", &config("b2_id")]);
    assert!(stdout(&o).contains("whole plane"));
}

#[test]
fn every_verb_is_byte_deterministic() {
    let runs: Vec<Vec<String>> = vec![
        vec!["straight-classes".into(), "--config".into(), config("a2_swap"), "--bound".into(), "4".into()],
        vec!["straight-classes".into(), "--config".into(), config("b2_id"), "--format".into(), "tsv".into(), "--bound".into(), "4".into()],
        vec!["verify".into(), "--config".into(), config("a1xa1_swap"), "--theorem".into(), "gamma".into(), "--bound".into(), "4".into()],
        vec!["verify".into(), "--config".into(), config("b2_swap"), "--theorem".into(), "inject".into(), "--bound".into(), "4".into()],
        vec!["examples".into()],
        vec!["figure".into(), "--config".into(), config("b2_swap")],
    ];
    for args in runs {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (x, y) = (strata(&a), strata(&a));
        assert_eq!(x.status.code(), Some(0), "{args:?}");
        assert_eq!(x.stdout, y.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("strata-fig-{}.svg", std::process::id()));
    let o = strata(&["figure", "--config", &config("a2_swap"), "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = strata(&["figure", "--config", &config("a2_swap")]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}
