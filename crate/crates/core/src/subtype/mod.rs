//! Subtyping `A <= B` for theories that validate Ba.
//!
//! [`Subtyper`] is the decision procedure; every positive answer can be
//! turned into a [`LeqProof`] that [`check_proof`] verifies rule by rule.
//! [`leq_oracle`] saturates a finite universe of types and serves as an
//! independent cross-check.

mod decide;
mod normal;
mod oracle;
mod trace;

use thiserror::Error;

pub use decide::Subtyper;
pub use normal::{canonical, normalize, Conjunct, NormalType};
pub use oracle::{leq_oracle, oracle_atoms, OracleAnswer, OracleUniverse, DEFAULT_ORACLE_CAP};
pub use trace::{check_proof, LeqProof, LeqRule, TraceError};

use crate::syntax::Type;
use crate::theory::TheorySpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubtypeError {
    #[error("theory {0} does not validate Ba (needs arrow-inter and eta)")]
    UnsupportedTheory(String),
    #[error("type universe of {size} types exceeds the cap of {cap}")]
    ResourceLimit { size: usize, cap: usize },
}

pub fn leq(spec: &TheorySpec, a: &Type, b: &Type) -> Result<bool, SubtypeError> {
    Ok(Subtyper::new(spec)?.leq(a, b))
}

pub fn eq(spec: &TheorySpec, a: &Type, b: &Type) -> Result<bool, SubtypeError> {
    Ok(Subtyper::new(spec)?.eq(a, b))
}

/// `Some(proof)` when `a <= b`, `None` otherwise.
pub fn leq_with_proof(
    spec: &TheorySpec,
    a: &Type,
    b: &Type,
) -> Result<Option<LeqProof>, SubtypeError> {
    Ok(Subtyper::new(spec)?.prove(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type_unchecked as ty;
    use crate::theory::{named_theory, NamedTheory};

    fn holds(n: NamedTheory, a: &str, b: &str) -> bool {
        let spec = named_theory(n, 0);
        let (a, b) = (ty(a).unwrap(), ty(b).unwrap());
        let s = Subtyper::new(&spec).unwrap();
        let r = s.leq(&a, &b);
        if r {
            let p = s.prove(&a, &b).unwrap();
            assert_eq!((&p.lhs, &p.rhs), (&a, &b));
            check_proof(&spec, &p).unwrap_or_else(|e| panic!("{a} <= {b}: {e}"));
        }
        r
    }

    #[test]
    fn base_axioms() {
        use NamedTheory::*;
        assert!(holds(Bcd, "omega", "omega -> omega"));
        assert!(holds(Bcd, "omega -> omega", "omega"));
        assert!(holds(Bcd, "(a -> b) & (a -> c)", "a -> b & c"));
        assert!(holds(Ao, "a -> b", "omega -> omega"));
        assert!(!holds(Ao, "omega", "omega -> omega"));
        assert!(holds(Ehr, "a -> b", "nu"));
        assert!(!holds(Ehr, "nu", "a -> b"));
        assert!(!holds(Ba, "a", "b"));
        assert!(holds(Bcd, "(a -> b) & c", "a -> b"));
    }

    #[test]
    fn arrow_rules() {
        use NamedTheory::*;
        assert!(holds(Ba, "a -> b & c", "a & d -> b"));
        assert!(!holds(Ba, "a -> b", "c -> b"));
        assert!(holds(Ba, "(a -> b) & (c -> d)", "a & c -> b & d"));
        assert!(holds(Bcd, "a", "b -> omega"));
        assert!(!holds(Ao, "a", "b -> omega"));
        assert!(holds(Ao, "c -> d", "b -> omega"));
        assert!(holds(Bcd, "omega", "a -> omega -> omega"));
        assert!(!holds(Bcd, "omega", "a -> b"));
        assert!(holds(Ehr, "(a -> b) & nu", "nu & (a -> b)"));
    }

    #[test]
    fn equations_expand() {
        let mut spec = named_theory(NamedTheory::Ba, 2);
        spec.equations
            .insert("a0".into(), ty("(a1 -> a1) & (a0x -> a1)").unwrap());
        spec.atoms.insert("a0x".into());
        assert!(spec.validate().is_empty());
        let s = Subtyper::new(&spec).unwrap();
        for (a, b) in [("a0", "a1 -> a1"), ("(a1 -> a1) & (a0x -> a1)", "a0"), ("a0", "a0x & a1 -> a1")] {
            let (a, b) = (ty(a).unwrap(), ty(b).unwrap());
            let p = s.prove(&a, &b).expect("holds");
            check_proof(&spec, &p).unwrap();
        }
        assert!(!s.leq(&ty("a1 -> a1").unwrap(), &ty("a0").unwrap()));
    }

    #[test]
    fn unsupported_theory() {
        let mut spec = named_theory(NamedTheory::Ba, 0);
        spec.rules.remove(&crate::theory::Rule::ArrowInter);
        assert!(matches!(
            leq(&spec, &ty("a").unwrap(), &ty("a").unwrap()),
            Err(SubtypeError::UnsupportedTheory(_))
        ));
    }
}
