use proptest::prelude::*;

use itypes::syntax::{parse_term, parse_type_unchecked, Term, Type};

fn arb_type() -> impl Strategy<Value = Type> {
    let leaf = prop_oneof![
        Just(Type::atom("a")),
        Just(Type::atom("b")),
        Just(Type::atom("a1")),
        Just(Type::omega()),
        Just(Type::nu()),
    ];
    leaf.prop_recursive(6, 50, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::arrow(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Type::inter(a, b)),
        ]
    })
}

fn arb_term() -> impl Strategy<Value = Term> {
    let var = prop_oneof![Just("x"), Just("y"), Just("z"), Just("f_1")];
    var.clone().prop_map(Term::var).prop_recursive(8, 50, 2, move |inner| {
        prop_oneof![
            (var.clone(), inner.clone()).prop_map(|(x, b)| Term::lam(x, b)),
            (inner.clone(), inner).prop_map(|(m, n)| Term::app(m, n)),
        ]
    })
}

/// Renames every binder to a name that occurs nowhere else.
fn rename_binders(m: &Term, env: &mut Vec<(String, String)>, next: &mut usize) -> Term {
    match m {
        Term::Var(x) => {
            let y = env.iter().rev().find(|(o, _)| o == x).map_or(x.clone(), |(_, n)| n.clone());
            Term::var(y)
        }
        Term::Lam(x, b) => {
            let fresh = format!("w{next}");
            *next += 1;
            env.push((x.clone(), fresh.clone()));
            let body = rename_binders(b, env, next);
            env.pop();
            Term::lam(fresh, body)
        }
        Term::App(f, a) => Term::app(rename_binders(f, env, next), rename_binders(a, env, next)),
    }
}

proptest! {
    #[test]
    fn type_print_then_parse_is_identity(t in arb_type()) {
        prop_assert_eq!(parse_type_unchecked(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn term_print_then_parse_is_identity(m in arb_term()) {
        let back = parse_term(&m.to_string()).unwrap();
        prop_assert!(back.alpha_eq(&m));
        prop_assert_eq!(back, m);
    }

    #[test]
    fn renaming_binders_preserves_alpha_class(m in arb_term()) {
        let r = rename_binders(&m, &mut Vec::new(), &mut 0);
        prop_assert!(r.alpha_eq(&m));
        prop_assert_eq!(r.free_vars(), m.free_vars());
        prop_assert_eq!(r.size(), m.size());
    }

    #[test]
    fn printed_types_keep_their_shape(a in arb_type(), b in arb_type()) {
        let arrow = Type::arrow(a.clone(), b.clone());
        let inter = Type::inter(a, b);
        prop_assert_eq!(parse_type_unchecked(&arrow.to_string()).unwrap(), arrow);
        prop_assert_eq!(parse_type_unchecked(&inter.to_string()).unwrap(), inter);
    }
}

#[test]
fn precedence_and_associativity() {
    let t = parse_type_unchecked("a -> b -> c").unwrap();
    assert_eq!(t, Type::arrow(Type::atom("a"), Type::arrow(Type::atom("b"), Type::atom("c"))));
    let t = parse_type_unchecked("a & b -> c").unwrap();
    assert_eq!(t, Type::arrow(Type::inter(Type::atom("a"), Type::atom("b")), Type::atom("c")));
    let m = parse_term("\\x. x y z").unwrap();
    assert_eq!(
        m,
        Term::lam("x", Term::app(Term::app(Term::var("x"), Term::var("y")), Term::var("z")))
    );
}

#[test]
fn alpha_equivalence_respects_capture() {
    let a = parse_term("\\x. \\y. x").unwrap();
    let b = parse_term("\\y. \\x. y").unwrap();
    let c = parse_term("\\y. \\y. y").unwrap();
    assert!(a.alpha_eq(&b));
    assert!(!a.alpha_eq(&c));
}
