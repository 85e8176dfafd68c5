use std::fmt;

use crate::syntax::Type;
use crate::theory::TheorySpec;

/// A flattened, sorted, duplicate-free intersection.
///
/// Atoms sort before arrows; atoms by name, arrows by `(dom, cod)`.
/// Ω only survives as the sole conjunct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalType {
    pub conjuncts: Vec<Conjunct>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Conjunct {
    Atom(String),
    Arrow(NormalType, NormalType),
}

impl NormalType {
    /// The normal form of Ω alone.
    pub fn is_top(&self) -> bool {
        matches!(self.conjuncts.as_slice(), [Conjunct::Atom(a)] if a == crate::syntax::OMEGA)
    }

    pub fn denorm(&self) -> Type {
        Type::inter_all(self.conjuncts.iter().map(Conjunct::denorm))
            .expect("normal types have at least one conjunct")
    }
}

impl Conjunct {
    pub fn denorm(&self) -> Type {
        match self {
            Conjunct::Atom(a) => Type::atom(a.clone()),
            Conjunct::Arrow(d, c) => Type::arrow(d.denorm(), c.denorm()),
        }
    }
}

impl fmt::Display for NormalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.denorm().fmt(f)
    }
}

pub fn normalize(spec: &TheorySpec, t: &Type) -> NormalType {
    let mut conjuncts: Vec<Conjunct> = t
        .conjuncts()
        .into_iter()
        .map(|c| match c {
            Type::Atom(a) => Conjunct::Atom(a.clone()),
            Type::Arrow(d, c) => Conjunct::Arrow(normalize(spec, d), normalize(spec, c)),
            Type::Inter(..) => unreachable!("conjuncts are never intersections"),
        })
        .collect();
    conjuncts.sort();
    conjuncts.dedup();
    if spec.has_omega && conjuncts.len() > 1 {
        conjuncts.retain(|c| !matches!(c, Conjunct::Atom(a) if a == crate::syntax::OMEGA));
    }
    NormalType { conjuncts }
}

/// `denorm(normalize(t))`: the canonical representative of `t`.
pub fn canonical(spec: &TheorySpec, t: &Type) -> Type {
    normalize(spec, t).denorm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type_unchecked as ty;
    use crate::theory::{named_theory, NamedTheory};

    #[test]
    fn flattens_sorts_and_dedups() {
        let bcd = named_theory(NamedTheory::Bcd, 0);
        assert_eq!(canonical(&bcd, &ty("a & (a & b)").unwrap()), ty("a & b").unwrap());
        assert_eq!(canonical(&bcd, &ty("b & a & b").unwrap()), ty("a & b").unwrap());
        assert_eq!(canonical(&bcd, &ty("omega & a").unwrap()), ty("a").unwrap());
        assert!(normalize(&bcd, &ty("omega & omega").unwrap()).is_top());
        let ba = named_theory(NamedTheory::Ba, 0);
        assert_eq!(
            normalize(&ba, &ty("(a -> b) & (a -> b)").unwrap()).conjuncts.len(),
            1
        );
    }

    #[test]
    fn atoms_before_arrows_and_inner_normalization() {
        let ba = named_theory(NamedTheory::Ba, 0);
        assert_eq!(
            canonical(&ba, &ty("(b & a -> c) & z").unwrap()),
            ty("z & (a & b -> c)").unwrap()
        );
    }

    #[test]
    fn idempotent() {
        let bcd = named_theory(NamedTheory::Bcd, 0);
        let t = ty("(omega & (b -> a) & a) -> (a & a)").unwrap();
        let once = canonical(&bcd, &t);
        assert_eq!(canonical(&bcd, &once), once);
    }
}
