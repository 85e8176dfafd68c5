use std::process::{Command, Output};

use serde_json::Value;

fn itypes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itypes"))
        .args(args)
        .env_remove("ITYPES_THEORY_PATH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn leq_verdicts_and_exit_codes() {
    let o = itypes(&["leq", "--theory", "bcd", "omega", "omega -> omega"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true"));
    let o = itypes(&["leq", "--theory", "ao", "omega", "omega -> omega"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "false"));
    let o = itypes(&["leq", "--theory", "ba", "a", "a"]);
    assert_eq!(o.status.code(), Some(0));
    let o = itypes(&["leq", "--theory", "ba", "a ->", "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = itypes(&["leq", "--theory", "ba", "omega", "a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn leq_json_carries_a_proof() {
    let o = itypes(&["leq", "--theory", "bcd", "--output", "json", "(a -> b) & (a -> c)", "a -> b & c"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"], true);
    assert_eq!(v["proof"]["lhs"], "(a -> b) & (a -> c)");
    let o = itypes(&["leq", "--theory", "ba", "--output", "json", "a", "b"]);
    assert_eq!(json(&o)["proof"], Value::Null);
}

#[test]
fn check_verdicts() {
    let o = itypes(&["check", "--theory", "ba", "", "\\x. x x", "(a->b)&a -> b"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "yes"));
    let o = itypes(&["check", "--theory", "ehr", "", "(\\y.\\x.x)((\\x.x x)(\\x.x x))", "a -> a"]);
    assert!(matches!(o.status.code(), Some(1) | Some(3)), "{o:?}");
    let o = itypes(&["check", "--theory", "ao", "", "(\\y.\\x.x)((\\x.x x)(\\x.x x))", "a -> a"]);
    assert_eq!(o.status.code(), Some(0));
    let o = itypes(&["check", "--theory", "ba", "x:a", "x", "b"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "no"));
    let o = itypes(&["check", "--theory", "ba", "x a", "x", "a"]);
    assert_eq!(o.status.code(), Some(2));
    let o = itypes(&["check", "--theory", "ba", "", "\\x.", "a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_json_round_trips_the_derivation() {
    let o = itypes(&["check", "--theory", "bcd", "--output", "json", "", "\\x. x", "a -> a"]);
    let v = json(&o);
    assert_eq!(v["verdict"], "yes");
    let d = itypes::assign::Derivation::from_json(&v["derivation"]).unwrap();
    let spec = itypes::theory::named_theory(itypes::theory::NamedTheory::Bcd, 3);
    assert!(itypes::assign::check_derivation(&spec, &d).is_ok());
}

#[test]
fn infer_lists_types() {
    let o = itypes(&["infer", "--theory", "ba", "", "\\x.x", "--size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "a -> a"));
    let o = itypes(&["infer", "--theory", "ba", "--output", "json", "x:c", "x", "--size", "1"]);
    let v = json(&o);
    assert!(v["types"].as_array().unwrap().iter().any(|t| t == "c"));
}

#[test]
fn interp_uses_filter_environments() {
    let o = itypes(&["interp", "--theory", "bcd", "x=a -> b, y=a", "x y", "b"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "yes"));
    let o = itypes(&["interp", "--theory", "bcd", "x=empty", "x y", "omega"]);
    assert_eq!(o.status.code(), Some(0));
    let o = itypes(&["interp", "--theory", "bcd", "x=empty", "x y", "a"]);
    assert_eq!(o.status.code(), Some(1));
    let o = itypes(&["interp", "--theory", "ba", "x=empty", "x", "a"]);
    assert_eq!(o.status.code(), Some(2));
    let o = itypes(&["interp", "--theory", "ba", "x:a", "x", "a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_reports() {
    let o = itypes(&["classify", "--theory", "bcd", "--output", "json"]);
    let v = json(&o);
    assert_eq!(v["f_type_theory"], "No");
    assert_eq!(v["simple_adequate"], true);
    let o = itypes(&["classify", "--theory", "ehr"]);
    let out = stdout(&o);
    assert!(out.contains("strict: true"));
    assert!(out.contains("f_type_theory: Yes"));
}

#[test]
fn laws_pass_and_are_deterministic() {
    let a = itypes(&["laws", "--theory", "ba", "--size", "5", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).ends_with("0 failed"));
    let b = itypes(&["laws", "--theory", "ba", "--size", "5", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let o = itypes(&["laws", "--theory", "ao", "--size", "3", "--output", "json"]);
    let v = json(&o);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["failures"] == 0));
}

#[test]
fn theory_files() {
    let dir = std::env::temp_dir().join(format!("itypes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("arrow-atom.json"),
        r#"{"name": "bcd-phi", "atoms": ["a", "phi"], "omega": true,
            "rules": ["omega-top", "omega-eta", "arrow-inter", "eta"],
            "equations": {"phi": "a -> a"}}"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_itypes"))
        .args(["leq", "--theory", "file:arrow-atom.json", "phi", "a -> a"])
        .env("ITYPES_THEORY_PATH", &dir)
        .output()
        .unwrap();
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true"));
    std::fs::write(dir.join("no-eta.json"), r#"{"name": "no-eta", "atoms": ["a", "b"], "rules": ["arrow-inter"]}"#).unwrap();
    let path = dir.join("no-eta.json");
    let file = format!("file:{}", path.display());
    let o = itypes(&["leq", "--theory", &file, "a & b", "a"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true"));
    let o = itypes(&["leq", "--theory", &file, "a -> b", "a & b -> b"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(3), "unknown"));
    let o = itypes(&["leq", "--theory", "file:missing.json", "a", "a"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
