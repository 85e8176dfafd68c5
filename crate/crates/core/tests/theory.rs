use proptest::prelude::*;

use itypes::syntax::Type;
use itypes::theory::{named_theory, NamedTheory, Rule, TheoryError, TheorySpec, Violation};

#[test]
fn named_theories_validate() {
    for n in NamedTheory::ALL {
        for k in [0, 1, 5] {
            let spec = named_theory(n, k);
            assert!(spec.validate().is_empty(), "{n}: {:?}", spec.validate());
            assert!(spec.validates_ba());
            assert_eq!(spec.as_named(), Some(n));
        }
    }
}

#[test]
fn theory_files_round_trip_and_load_from_search_path() {
    let dir = std::env::temp_dir().join(format!("itypes-theories-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = r#"{
        "name": "lazy-arrow",
        "atoms": ["a", "b", "phi"],
        "omega": true,
        "rules": ["omega-top", "omega-lazy", "arrow-inter", "eta"],
        "equations": { "phi": "(a -> b) & (omega -> omega)" }
    }"#;
    std::fs::write(dir.join("lazy.json"), text).unwrap();

    let direct = TheorySpec::load(dir.join("lazy.json").to_str().unwrap()).unwrap();
    assert_eq!(direct.display_name(), "lazy-arrow");
    assert!(direct.validate().is_empty());
    assert!(direct.validates_ao());
    assert_eq!(TheorySpec::from_json(&direct.to_json()).unwrap(), direct);

    assert!(matches!(TheorySpec::load("lazy.json"), Err(TheoryError::Io { .. })));
    std::env::set_var("ITYPES_THEORY_PATH", &dir);
    let found = TheorySpec::load("lazy.json").unwrap();
    std::env::remove_var("ITYPES_THEORY_PATH");
    assert_eq!(found, direct);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_files_are_rejected() {
    assert!(matches!(
        TheorySpec::from_json(r#"{"rules": ["beta"]}"#),
        Err(TheoryError::UnknownRule(_))
    ));
    assert!(matches!(TheorySpec::from_json("{"), Err(TheoryError::Json(_))));
    let cyclic = r#"{"atoms": ["p", "q"], "rules": ["arrow-inter", "eta"],
        "equations": {"p": "q -> q", "q": "p -> p"}}"#;
    let spec = TheorySpec::from_json(cyclic).unwrap();
    assert!(spec.validate().iter().any(|v| matches!(v, Violation::EquationCycle(_))));
    assert!(matches!(spec.ensure_valid(), Err(TheoryError::Invalid(_))));
}

#[test]
fn omega_and_nu_are_exclusive() {
    let mut spec = named_theory(NamedTheory::Ehr, 0);
    spec.has_omega = true;
    spec.rules.insert(Rule::OmegaTop);
    assert!(spec.validate().contains(&Violation::OmegaNuConflict));
}

fn arb_rules() -> impl Strategy<Value = Vec<Rule>> {
    proptest::sample::subsequence(Rule::ALL.to_vec(), 0..=Rule::ALL.len())
}

proptest! {
    #[test]
    fn json_round_trip(rules in arb_rules(), omega in any::<bool>(), atoms in 0usize..4, arrow in any::<bool>()) {
        let mut spec = named_theory(NamedTheory::Ba, atoms);
        spec.name = Some("t".into());
        spec.has_omega = omega;
        spec.has_nu = !omega && rules.contains(&Rule::NuTop);
        spec.rules = rules.into_iter().collect();
        if arrow && atoms > 1 {
            spec.equations.insert("a0".into(), Type::arrow(Type::atom("a1"), Type::atom("a1")));
        }
        let back = TheorySpec::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn rule_names_round_trip(r in proptest::sample::select(Rule::ALL.to_vec())) {
        prop_assert_eq!(r.as_str().parse::<Rule>().unwrap(), r);
        prop_assert_eq!(r.to_string(), r.as_str());
    }
}
