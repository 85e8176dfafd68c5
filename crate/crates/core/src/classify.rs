//! Classification of theories: strict / natural, the `fun` predicate,
//! F-type theories and the resulting adequacy verdicts.

use std::fmt;

use serde::Serialize;

use crate::subtype::Subtyper;
use crate::syntax::{Type, OMEGA};
use crate::theory::{NamedTheory, Rule, TheorySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "Yes",
            Tri::No => "No",
            Tri::Unknown => "Unknown",
        })
    }
}

pub fn is_strict(spec: &TheorySpec) -> bool {
    !spec.has_omega && spec.validates_ba()
}

pub fn is_natural(spec: &TheorySpec) -> bool {
    spec.has_omega && spec.validates_ao()
}

/// The `fun` predicate, by structural recursion on the type.
pub fn fun_predicate(sub: &Subtyper, a: &Type) -> Tri {
    let spec = sub.spec();
    match a {
        Type::Arrow(..) => Tri::Yes,
        Type::Inter(l, r) => fun_predicate(sub, l).or(fun_predicate(sub, r)),
        Type::Atom(psi) => {
            let nu_like = spec.has_nu && sub.eq(a, &Type::nu());
            let omega_eta = spec.has_rule(Rule::OmegaEta) && spec.has_omega && sub.eq(a, &Type::omega());
            Tri::from_bool(nu_like || spec.equation(psi).is_some() || omega_eta)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FTypeVerdict {
    pub verdict: Tri,
    pub reason: String,
}

/// Plain atoms that no equation turns into arrows. Fresh atoms count as
/// such atoms (they stand for the unlisted part of an infinite atom set).
fn equation_free_atoms(spec: &TheorySpec) -> Vec<String> {
    let mut out: Vec<String> = spec
        .atoms
        .iter()
        .filter(|a| a.as_str() != OMEGA && spec.equation(a).is_none())
        .cloned()
        .collect();
    if spec.fresh_atoms {
        out.push("<fresh atoms>".to_string());
    }
    out
}

pub fn is_f_type_theory(spec: &TheorySpec) -> FTypeVerdict {
    let v = |verdict: Tri, reason: String| FTypeVerdict { verdict, reason };
    let strict = is_strict(spec);
    let natural = is_natural(spec);
    if !strict && !natural {
        return v(Tri::No, "neither strict nor natural".into());
    }
    if let Some(n) = spec.as_named() {
        return match n {
            NamedTheory::Ba | NamedTheory::Ehr | NamedTheory::Ao => {
                v(Tri::Yes, format!("{n} is listed among the F-type theories"))
            }
            NamedTheory::Bcd => v(
                Tri::No,
                "BCD is not adequate for the F-semantics: its atoms are not equivalent to intersections of arrows".into(),
            ),
        };
    }
    let free = equation_free_atoms(spec);
    if natural && spec.has_rule(Rule::OmegaEta) {
        return if free.is_empty() {
            v(Tri::Yes, "natural with omega-eta and every atom is equivalent to an intersection of arrows".into())
        } else {
            v(Tri::No, format!("natural with omega-eta but {} has no arrow equation", free.join(", ")))
        };
    }
    if strict && spec.has_nu {
        return match Subtyper::new(spec) {
            Ok(sub) => {
                let bad: Vec<String> = free
                    .into_iter()
                    .filter(|a| !a.starts_with('<') && !sub.leq(&Type::nu(), &Type::atom(a.clone())))
                    .chain(spec.fresh_atoms.then(|| "<fresh atoms>".to_string()))
                    .collect();
                if bad.is_empty() {
                    v(Tri::Yes, "strict with nu and every atom is above nu or has an arrow equation".into())
                } else {
                    v(Tri::No, format!("strict with nu but {} is neither above nu nor given by an equation", bad.join(", ")))
                }
            }
            Err(e) => v(Tri::Unknown, e.to_string()),
        };
    }
    if free.is_empty() {
        v(Tri::Yes, "every atom is equivalent to an intersection of arrows".into())
    } else {
        v(
            Tri::Unknown,
            format!("cannot decide the arrow condition for {}", free.join(", ")),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunMismatch {
    pub ty: String,
    pub fun: Tri,
    pub equivalent_to_nu_or_arrows: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunReport {
    pub checked: usize,
    pub mismatches: Vec<FunMismatch>,
}

/// Rewrites `a` into an intersection of arrows by expanding equations and
/// `omega ~ omega -> omega`, dropping `omega`/`nu` next to other conjuncts.
fn arrow_decomposition(sub: &Subtyper, a: &Type) -> Option<Type> {
    let spec = sub.spec();
    let mut arrows = Vec::new();
    for c in a.conjuncts() {
        match c {
            Type::Arrow(..) => arrows.push(c.clone()),
            Type::Atom(_) if c.is_omega() => {
                if spec.has_rule(Rule::OmegaEta) {
                    arrows.push(Type::omega_arrows(1));
                }
            }
            Type::Atom(_) if c.is_nu() => {}
            Type::Atom(psi) => arrows.extend(spec.equation(psi)?.conjuncts().into_iter().cloned()),
            Type::Inter(..) => unreachable!(),
        }
    }
    Type::inter_all(arrows).filter(|d| sub.eq(a, d))
}

/// Compares `fun(A)` with "A ~ nu or A ~ an intersection of arrows" on
/// every type of `corpus`.
pub fn fun_alternative_check(sub: &Subtyper, corpus: &[Type]) -> FunReport {
    let mut report = FunReport::default();
    for a in corpus {
        report.checked += 1;
        let fun = fun_predicate(sub, a);
        let nu_like = sub.spec().has_nu && sub.eq(a, &Type::nu());
        let alt = nu_like || arrow_decomposition(sub, a).is_some();
        if (fun == Tri::Yes) != alt {
            report.mismatches.push(FunMismatch {
                ty: a.to_string(),
                fun,
                equivalent_to_nu_or_arrows: alt,
            });
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdequacyReport {
    pub theory: String,
    pub strict: bool,
    pub natural: bool,
    pub inference_adequate: bool,
    pub simple_adequate: bool,
    pub f_type_theory: Tri,
    pub f_adequate: Tri,
    pub notes: Vec<String>,
}

pub fn adequacy_report(spec: &TheorySpec) -> AdequacyReport {
    let strict = is_strict(spec);
    let natural = is_natural(spec);
    let inference_adequate = strict || natural;
    let simple_adequate = (strict && !spec.has_nu) || (natural && spec.has_rule(Rule::OmegaEta));
    let f = is_f_type_theory(spec);
    let mut notes = Vec::new();
    notes.push(match (strict, natural) {
        (true, _) => "strict: no omega, validates Ba".to_string(),
        (_, true) => "natural: omega present, validates AO".to_string(),
        _ => "neither strict nor natural".to_string(),
    });
    notes.push(format!(
        "inference semantics: {} (adequate exactly for strict or natural theories)",
        yes_no(inference_adequate)
    ));
    notes.push(format!(
        "simple semantics: {} (needs strict without nu, or natural with omega-eta)",
        yes_no(simple_adequate)
    ));
    notes.push(format!("F-semantics: {} ({})", f.verdict, f.reason));
    if spec.as_named() == Some(NamedTheory::Ba) {
        notes.push(
            "Ba: the per-atom arrow condition fails for plain atoms; the verdict follows the published classification".into(),
        );
    }
    AdequacyReport {
        theory: spec.display_name().to_string(),
        strict,
        natural,
        inference_adequate,
        simple_adequate,
        f_type_theory: f.verdict,
        f_adequate: f.verdict,
        notes,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type_unchecked as ty;
    use crate::theory::named_theory;

    #[test]
    fn named_table() {
        use NamedTheory::*;
        let row = |n| {
            let r = adequacy_report(&named_theory(n, 3));
            (r.strict, r.natural, r.inference_adequate, r.simple_adequate, r.f_type_theory)
        };
        assert_eq!(row(Ba), (true, false, true, true, Tri::Yes));
        assert_eq!(row(Ehr), (true, false, true, false, Tri::Yes));
        assert_eq!(row(Ao), (false, true, true, false, Tri::Yes));
        assert_eq!(row(Bcd), (false, true, true, true, Tri::No));
    }

    #[test]
    fn fun_cases() {
        let ehr = named_theory(NamedTheory::Ehr, 0);
        let bcd = named_theory(NamedTheory::Bcd, 1);
        let ba = named_theory(NamedTheory::Ba, 0);
        let (se, sb, sa) = (
            Subtyper::new(&ehr).unwrap(),
            Subtyper::new(&bcd).unwrap(),
            Subtyper::new(&ba).unwrap(),
        );
        assert_eq!(fun_predicate(&se, &Type::nu()), Tri::Yes);
        assert_eq!(fun_predicate(&sb, &Type::omega()), Tri::Yes);
        assert_eq!(fun_predicate(&sb, &ty("a0").unwrap()), Tri::No);
        assert_eq!(fun_predicate(&sa, &ty("(a -> b) & c").unwrap()), Tri::Yes);
    }

    #[test]
    fn bcd_with_arrow_atom_is_f_type() {
        let mut spec = named_theory(NamedTheory::Bcd, 1);
        spec.name = Some("BCD+".into());
        spec.fresh_atoms = false;
        spec.equations.insert("a0".into(), Type::omega_arrows(1));
        assert!(spec.validate().is_empty());
        assert_eq!(is_f_type_theory(&spec).verdict, Tri::Yes);
        spec.atoms.insert("a1".into());
        assert_eq!(is_f_type_theory(&spec).verdict, Tri::No);
    }

    #[test]
    fn alternative_characterization() {
        let ehr = named_theory(NamedTheory::Ehr, 0);
        let ao = named_theory(NamedTheory::Ao, 0);
        let se = Subtyper::new(&ehr).unwrap();
        let so = Subtyper::new(&ao).unwrap();
        let r = fun_alternative_check(&se, &[ty("a -> b").unwrap(), ty("nu & (a -> b)").unwrap()]);
        assert!(r.mismatches.is_empty(), "{r:?}");
        let r = fun_alternative_check(&so, &[ty("omega & (a -> b)").unwrap()]);
        assert!(r.mismatches.is_empty(), "{r:?}");
    }
}
