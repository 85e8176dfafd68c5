//! Finitely generated filters over the types of a theory.
//!
//! A filter generated by a finite set `F` equals the principal filter of
//! `/\ F`, so a filter is stored as its list of generators and every query
//! goes through their intersection.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::assign::{Basis, Searcher, Verdict};
use crate::subtype::{canonical, Subtyper};
use crate::syntax::{parse_type, ParseError, Term, Type};
use crate::theory::TheorySpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFilter {
    generators: Vec<Type>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("variable `{0}` denotes the empty filter, which no basis can approximate")]
    EmptyEnvFilter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl FiniteFilter {
    /// `↑∅`: `↑omega` when Ω is a constant, the empty set otherwise.
    pub fn empty() -> FiniteFilter {
        FiniteFilter {
            generators: Vec::new(),
        }
    }

    pub fn principal(t: Type) -> FiniteFilter {
        FiniteFilter {
            generators: vec![t],
        }
    }

    pub fn generated(generators: Vec<Type>) -> FiniteFilter {
        FiniteFilter { generators }
    }

    pub fn generators(&self) -> &[Type] {
        &self.generators
    }

    pub fn is_empty_generated(&self) -> bool {
        self.generators.is_empty()
    }

    /// `/\ generators`, or `None` for `↑∅`.
    pub fn generator(&self) -> Option<Type> {
        Type::inter_all(self.generators.iter().cloned())
    }

    /// The generator, reading `↑∅` as `↑omega` when Ω is available.
    fn effective_generator(&self, spec: &TheorySpec) -> Option<Type> {
        self.generator()
            .or_else(|| spec.has_omega.then(Type::omega))
    }

    /// `"empty"` or the canonical form of the generator.
    pub fn to_canonical_string(&self, spec: &TheorySpec) -> String {
        match self.generator() {
            None => "empty".to_string(),
            Some(g) => canonical(spec, &g).to_string(),
        }
    }

    pub fn parse(src: &str, spec: &TheorySpec) -> Result<FiniteFilter, ParseError> {
        if src.trim() == "empty" {
            return Ok(FiniteFilter::empty());
        }
        Ok(FiniteFilter::principal(parse_type(src, spec)?))
    }
}

impl fmt::Display for FiniteFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator() {
            None => f.write_str("empty"),
            Some(g) => g.fmt(f),
        }
    }
}

pub fn member(sub: &Subtyper, x: &FiniteFilter, a: &Type) -> bool {
    match x.generator() {
        None => sub.is_top(a),
        Some(g) => sub.leq(&g, a),
    }
}

/// `x ⊇ y` as sets of types.
pub fn includes(sub: &Subtyper, x: &FiniteFilter, y: &FiniteFilter) -> bool {
    match (x.generator(), y.generator()) {
        (_, None) => true,
        (None, Some(gy)) => sub.is_top(&gy),
        (Some(gx), Some(gy)) => sub.leq(&gx, &gy),
    }
}

/// `X · Y = ↑{ B | A -> B ∈ X for some A ∈ Y }`.
pub fn apply(sub: &Subtyper, x: &FiniteFilter, y: &FiniteFilter) -> FiniteFilter {
    let spec = sub.spec();
    let (Some(gx), Some(_)) = (x.effective_generator(spec), y.effective_generator(spec)) else {
        return FiniteFilter::empty();
    };
    let selected: Vec<Type> = sub
        .arrow_heads(&gx)
        .into_iter()
        .filter(|(dom, _)| member(sub, y, dom))
        .map(|(_, cod)| cod)
        .collect();
    FiniteFilter::generated(selected)
}

/// Whether `b ∈ x · ↑a ⇔ a -> b ∈ x`. `None` when Ω is a constant and
/// `omega -> omega ∉ x`, where the equivalence is not claimed.
pub fn prop_simple_check(sub: &Subtyper, x: &FiniteFilter, a: &Type, b: &Type) -> Option<bool> {
    if sub.spec().has_omega && !member(sub, x, &Type::omega_arrows(1)) {
        return None;
    }
    let lhs = member(sub, &apply(sub, x, &FiniteFilter::principal(a.clone())), b);
    let rhs = member(sub, x, &Type::arrow(a.clone(), b.clone()));
    Some(lhs == rhs)
}

/// The filter of the step-function join `⊔ (↑A ⇒ ↑B)` over `table`:
/// generated by the arrows `A -> B`, plus `nu` when ν is a constant and
/// `omega -> omega` when Ω is (every filter contains Ω, so `A -> omega`
/// belongs to the image of any function).
pub fn make_abstraction_filter(spec: &TheorySpec, table: &[(Type, Type)]) -> FiniteFilter {
    let mut gens: Vec<Type> = table
        .iter()
        .map(|(a, b)| Type::arrow(a.clone(), b.clone()))
        .collect();
    if spec.has_omega {
        gens.push(Type::omega_arrows(1));
    }
    if spec.has_nu {
        gens.push(Type::nu());
    }
    FiniteFilter::generated(gens)
}

/// Membership in the functionality set: filters holding `omega -> omega`
/// when Ω is a constant, `nu` when ν is, every filter otherwise.
pub fn phi_membership(sub: &Subtyper, x: &FiniteFilter) -> bool {
    let spec = sub.spec();
    if spec.has_omega {
        member(sub, x, &Type::omega_arrows(1))
    } else if spec.has_nu {
        member(sub, x, &Type::nu())
    } else {
        true
    }
}

pub type Env = BTreeMap<String, FiniteFilter>;

/// The least basis below `env` for the free variables of `m`.
pub fn env_basis(spec: &TheorySpec, m: &Term, env: &Env) -> Result<Basis, FilterError> {
    let mut ctx = Basis::new();
    for x in m.free_vars() {
        match env.get(&x).and_then(FiniteFilter::generator) {
            Some(g) => {
                ctx.insert(x, g);
            }
            // ↑∅ = ↑omega puts no constraint on x
            None if spec.has_omega => {}
            None => return Err(FilterError::EmptyEnvFilter(x)),
        }
    }
    Ok(ctx)
}

/// Whether `a` belongs to the interpretation of `m` in the filter
/// structure under `env`, i.e. whether some basis below `env` types `m`
/// with `a`.
pub fn interpret_member(
    searcher: &Searcher,
    m: &Term,
    env: &Env,
    a: &Type,
) -> Result<Verdict, FilterError> {
    let ctx = env_basis(searcher.spec(), m, env)?;
    Ok(searcher.derives(&ctx, m, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type_unchecked as ty;
    use crate::theory::{named_theory, NamedTheory};

    fn p(s: &str) -> FiniteFilter {
        FiniteFilter::principal(ty(s).unwrap())
    }

    #[test]
    fn empty_filter_membership() {
        let bcd = named_theory(NamedTheory::Bcd, 0);
        let ba = named_theory(NamedTheory::Ba, 0);
        let (sb, sa) = (Subtyper::new(&bcd).unwrap(), Subtyper::new(&ba).unwrap());
        assert!(member(&sb, &FiniteFilter::empty(), &Type::omega()));
        assert!(!member(&sa, &FiniteFilter::empty(), &ty("a").unwrap()));
        assert!(member(&sb, &p("a & b"), &ty("a").unwrap()));
    }

    #[test]
    fn application() {
        let bcd = named_theory(NamedTheory::Bcd, 0);
        let s = Subtyper::new(&bcd).unwrap();
        let r = apply(&s, &p("a -> b"), &p("a"));
        assert!(includes(&s, &r, &p("b")) && includes(&s, &p("b"), &r));
        let r = apply(&s, &p("(a -> b) & (a -> c)"), &p("a"));
        assert!(member(&s, &r, &ty("b & c").unwrap()));
        let r = apply(&s, &p("omega"), &p("a"));
        assert!(member(&s, &r, &Type::omega()));
        assert!(!member(&s, &r, &ty("a").unwrap()));
    }

    #[test]
    fn abstraction_filters() {
        let ehr = named_theory(NamedTheory::Ehr, 0);
        let f = make_abstraction_filter(&ehr, &[(ty("a").unwrap(), ty("b").unwrap())]);
        assert_eq!(f.generator(), Some(ty("(a -> b) & nu").unwrap()));
        let ba = named_theory(NamedTheory::Ba, 0);
        assert!(make_abstraction_filter(&ba, &[]).is_empty_generated());
        let ao = named_theory(NamedTheory::Ao, 0);
        assert_eq!(
            make_abstraction_filter(&ao, &[]).generator(),
            Some(Type::omega_arrows(1))
        );
    }

    #[test]
    fn functionality_set() {
        let bcd = named_theory(NamedTheory::Bcd, 0);
        let ao = named_theory(NamedTheory::Ao, 0);
        let ehr = named_theory(NamedTheory::Ehr, 0);
        assert!(phi_membership(&Subtyper::new(&bcd).unwrap(), &p("omega")));
        assert!(!phi_membership(&Subtyper::new(&ao).unwrap(), &p("omega")));
        assert!(phi_membership(&Subtyper::new(&ehr).unwrap(), &p("a -> b")));
    }

    #[test]
    fn serialization() {
        let bcd = named_theory(NamedTheory::Bcd, 0);
        assert_eq!(FiniteFilter::empty().to_canonical_string(&bcd), "empty");
        assert_eq!(p("b & a & b").to_canonical_string(&bcd), "a & b");
        assert_eq!(FiniteFilter::parse("empty", &bcd).unwrap(), FiniteFilter::empty());
    }
}
