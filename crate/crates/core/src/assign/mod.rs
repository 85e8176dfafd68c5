//! Type assignment `Γ |- M : A` for the basic, Ω and ν systems.

mod admissible;
mod derivation;
mod search;

use thiserror::Error;

pub use admissible::{
    admissible_rule_suite, eta_expand, generation_round_trip, hindley_rule_check, AdmissibleReport,
    Counterexample, GenerationMismatch, HindleyInstance, HindleyStatus, Judgment, StructuralRule,
};
pub use derivation::{check_derivation, Basis, Derivation, DerivationError, TypingRule, CHECK_ORACLE_BOUND};
pub use search::{InferResult, SearchBudget, Searcher, Verdict, INFER_CAP};

use crate::subtype::SubtypeError;
use crate::syntax::{parse_type, ParseError, Term, Type};
use crate::theory::TheorySpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssignError {
    #[error("theory {0} does not validate Ba; proof search needs arrow-inter and eta")]
    UnsupportedTheory(String),
    #[error("type universe of {size} types exceeds the cap of {cap}")]
    ResourceLimit { size: usize, cap: usize },
}

impl From<SubtypeError> for AssignError {
    fn from(e: SubtypeError) -> Self {
        match e {
            SubtypeError::UnsupportedTheory(t) => AssignError::UnsupportedTheory(t),
            SubtypeError::ResourceLimit { size, cap } => AssignError::ResourceLimit { size, cap },
        }
    }
}

pub fn derives(
    spec: &TheorySpec,
    ctx: &Basis,
    m: &Term,
    a: &Type,
    budget: SearchBudget,
) -> Result<Verdict, AssignError> {
    Ok(Searcher::new(spec, budget)?.derives(ctx, m, a))
}

pub fn infer_types(
    spec: &TheorySpec,
    ctx: &Basis,
    m: &Term,
    size_bound: usize,
    atoms: &[String],
    budget: SearchBudget,
) -> Result<InferResult, AssignError> {
    Searcher::new(spec, budget)?.infer_types(ctx, m, size_bound, atoms)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("basis entry `{0}` is not of the form `x:type`")]
    Malformed(String),
    #[error("variable `{0}` is declared twice")]
    Duplicate(String),
    #[error("in the type of `{var}`: {source}")]
    Type {
        var: String,
        #[source]
        source: ParseError,
    },
}

/// Parses `x:A, y:B` (empty or blank text is the empty basis).
pub fn parse_basis(src: &str, spec: &TheorySpec) -> Result<Basis, BasisError> {
    let mut out = Basis::new();
    for entry in src.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (x, t) = entry
            .split_once(':')
            .ok_or_else(|| BasisError::Malformed(entry.to_string()))?;
        let x = x.trim();
        let valid = x.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && x.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(BasisError::Malformed(entry.to_string()));
        }
        let ty = parse_type(t, spec).map_err(|source| BasisError::Type {
            var: x.to_string(),
            source,
        })?;
        if out.insert(x.to_string(), ty).is_some() {
            return Err(BasisError::Duplicate(x.to_string()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type_unchecked as ty};
    use crate::theory::{named_theory, NamedTheory};

    fn verdict(n: NamedTheory, ctx: &str, m: &str, a: &str) -> Verdict {
        let spec = named_theory(n, 0);
        let ctx = parse_basis(ctx, &spec).unwrap();
        let v = derives(&spec, &ctx, &parse_term(m).unwrap(), &ty(a).unwrap(), SearchBudget::default())
            .unwrap();
        if let Verdict::Yes(d) = &v {
            check_derivation(&spec, d).unwrap_or_else(|e| panic!("{m} : {a}: {e}"));
        }
        v
    }

    #[test]
    fn golden_typings() {
        use NamedTheory::*;
        assert!(verdict(Ba, "", "\\x. x x", "(a -> b) & a -> b").is_yes());
        assert!(verdict(Ao, "", "(\\y. \\x. x) ((\\x. x x) (\\x. x x))", "a -> a").is_yes());
        assert!(verdict(Ehr, "", "(\\y. \\x. x) (\\z. (\\x. x x) (\\x. x x))", "a -> a").is_yes());
        assert!(!verdict(Ehr, "", "(\\y. \\x. x) ((\\x. x x) (\\x. x x))", "a -> a").is_yes());
        assert!(verdict(Ba, "x:a", "x", "a").is_yes());
    }

    #[test]
    fn exact_refutations() {
        use NamedTheory::*;
        assert!(verdict(Ba, "x:a", "x", "b").is_no());
        assert!(verdict(Ba, "", "\\x. x", "a").is_no());
        assert!(verdict(Ba, "x:a -> b, y:c", "x y", "b").is_no());
        assert!(verdict(Ba, "x:a -> b, y:a", "x y", "b").is_yes());
        assert!(verdict(Bcd, "x:a", "x y", "b").is_no());
        assert!(verdict(Bcd, "", "x", "omega -> omega").is_yes());
    }

    #[test]
    fn basis_parsing() {
        let spec = named_theory(NamedTheory::Ba, 0);
        let b = parse_basis(" x : a -> b , y:a", &spec).unwrap();
        assert_eq!(b.len(), 2);
        assert!(matches!(parse_basis("x:a, x:b", &spec), Err(BasisError::Duplicate(_))));
        assert!(matches!(parse_basis("x a", &spec), Err(BasisError::Malformed(_))));
        assert!(matches!(parse_basis("x:omega", &spec), Err(BasisError::Type { .. })));
        assert!(parse_basis("  ", &spec).unwrap().is_empty());
    }

    #[test]
    fn derivation_json_round_trip() {
        let spec = named_theory(NamedTheory::Bcd, 0);
        let v = derives(
            &spec,
            &Basis::new(),
            &parse_term("\\x. x x").unwrap(),
            &ty("(a -> b) & a -> b").unwrap(),
            SearchBudget::default(),
        )
        .unwrap();
        let d = v.derivation().unwrap();
        let back = Derivation::from_json(&d.to_json()).unwrap();
        assert_eq!(&back, d);
    }

    #[test]
    fn checker_rejects_bad_leq() {
        let spec = named_theory(NamedTheory::Ba, 0);
        let mut ctx = Basis::new();
        ctx.insert("x".into(), ty("a").unwrap());
        let d = Derivation::ax(&ctx, "x").leq_to(&ty("b").unwrap());
        let err = check_derivation(&spec, &d).unwrap_err();
        assert!(err.path.is_empty());
        assert!(check_derivation(&spec, &Derivation::ax(&ctx, "x")).is_ok());
    }
}
