//! Intersection-type theories Σ(C, ∇) as data.
//!
//! A theory is a constant set together with a selection of the special
//! axioms and rules (`omega-top`, `nu-top`, `omega-eta`, `omega-lazy`,
//! `arrow-inter`, `eta`) and an optional table of atom equations
//! `ψ ~ (A1 -> B1) & ... & (An -> Bn)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{parse_type_unchecked, ParseError, Type, NU, OMEGA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `A <= omega`
    OmegaTop,
    /// `A -> B <= nu`
    NuTop,
    /// `omega <= omega -> omega`
    OmegaEta,
    /// `A -> B <= omega -> omega`
    OmegaLazy,
    /// `(A -> B) & (A -> C) <= A -> B & C`
    ArrowInter,
    /// contravariant/covariant arrow rule
    Eta,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::OmegaTop,
        Rule::NuTop,
        Rule::OmegaEta,
        Rule::OmegaLazy,
        Rule::ArrowInter,
        Rule::Eta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::OmegaTop => "omega-top",
            Rule::NuTop => "nu-top",
            Rule::OmegaEta => "omega-eta",
            Rule::OmegaLazy => "omega-lazy",
            Rule::ArrowInter => "arrow-inter",
            Rule::Eta => "eta",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| TheoryError::UnknownRule(s.to_string()))
    }
}

/// The four theories of the standard table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedTheory {
    Ba,
    Ehr,
    Ao,
    Bcd,
}

impl NamedTheory {
    pub const ALL: [NamedTheory; 4] = [
        NamedTheory::Ba,
        NamedTheory::Ehr,
        NamedTheory::Ao,
        NamedTheory::Bcd,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NamedTheory::Ba => "Ba",
            NamedTheory::Ehr => "EHR",
            NamedTheory::Ao => "AO",
            NamedTheory::Bcd => "BCD",
        }
    }
}

impl fmt::Display for NamedTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NamedTheory {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ba" => Ok(NamedTheory::Ba),
            "ehr" => Ok(NamedTheory::Ehr),
            "ao" => Ok(NamedTheory::Ao),
            "bcd" => Ok(NamedTheory::Bcd),
            _ => Err(TheoryError::UnknownTheory(s.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
    #[error("equation for `{atom}`: {source}")]
    Equation {
        atom: String,
        #[source]
        source: ParseError,
    },
    #[error("malformed theory file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read theory file `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("ill-formed theory: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// A theory Σ(C, ∇).
///
/// `atoms` holds the plain constants of C; Ω and ν are recorded by the
/// two flags. When `fresh_atoms` is set, any other identifier is admitted
/// as an inert atom that no axiom or equation mentions (the fresh atoms of
/// an infinite atom supply, or schematic type variables). Fresh atoms are
/// not counted as constants by the classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheorySpec {
    pub name: Option<String>,
    pub atoms: BTreeSet<String>,
    pub has_omega: bool,
    pub has_nu: bool,
    pub rules: BTreeSet<Rule>,
    pub equations: BTreeMap<String, Type>,
    pub fresh_atoms: bool,
}

const BA_RULES: [Rule; 2] = [Rule::ArrowInter, Rule::Eta];

pub fn named_theory(n: NamedTheory, extra_atoms: usize) -> TheorySpec {
    let fresh: BTreeSet<String> = (0..extra_atoms).map(|i| format!("a{i}")).collect();
    let mut rules: BTreeSet<Rule> = BA_RULES.into_iter().collect();
    let (atoms, has_omega, has_nu) = match n {
        NamedTheory::Ba => (fresh, false, false),
        NamedTheory::Ehr => {
            rules.insert(Rule::NuTop);
            (BTreeSet::new(), false, true)
        }
        NamedTheory::Ao => {
            rules.extend([Rule::OmegaTop, Rule::OmegaLazy]);
            (BTreeSet::new(), true, false)
        }
        NamedTheory::Bcd => {
            rules.extend([Rule::OmegaTop, Rule::OmegaEta]);
            (fresh, true, false)
        }
    };
    TheorySpec {
        name: Some(n.label().to_string()),
        atoms,
        has_omega,
        has_nu,
        rules,
        equations: BTreeMap::new(),
        fresh_atoms: true,
    }
}

/// A broken well-formedness condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OmegaNuConflict,
    /// Ω is a constant but `omega-top` is missing.
    MissingAssumption1,
    /// ν is a constant but `nu-top` is missing.
    MissingAssumption2,
    OmegaRuleWithoutOmega(Rule),
    NuRuleWithoutNu,
    ReservedAtom(String),
    EquationOnReserved(String),
    EquationOnUnknownAtom(String),
    EquationNotArrows(String),
    EquationMentionsUnknownAtom { atom: String, unknown: String },
    EquationCycle(Vec<String>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OmegaNuConflict => write!(f, "omega and nu cannot both be constants"),
            Violation::MissingAssumption1 => write!(f, "omega is a constant but omega-top is missing"),
            Violation::MissingAssumption2 => write!(f, "nu is a constant but nu-top is missing"),
            Violation::OmegaRuleWithoutOmega(r) => write!(f, "rule {r} requires omega"),
            Violation::NuRuleWithoutNu => write!(f, "rule nu-top requires nu"),
            Violation::ReservedAtom(a) => write!(f, "`{a}` is reserved; use the omega/nu flags"),
            Violation::EquationOnReserved(a) => write!(f, "equation for reserved atom `{a}`"),
            Violation::EquationOnUnknownAtom(a) => write!(f, "equation for undeclared atom `{a}`"),
            Violation::EquationNotArrows(a) => {
                write!(f, "equation for `{a}` is not an intersection of arrows")
            }
            Violation::EquationMentionsUnknownAtom { atom, unknown } => {
                write!(f, "equation for `{atom}` mentions unknown atom `{unknown}`")
            }
            Violation::EquationCycle(c) => write!(f, "cyclic equations through {}", c.join(", ")),
        }
    }
}

impl TheorySpec {
    pub fn has_rule(&self, r: Rule) -> bool {
        self.rules.contains(&r)
    }

    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or("<anonymous>")
    }

    /// Whether `name` may occur as an atom in types over this theory.
    pub fn admits_atom(&self, name: &str) -> bool {
        match name {
            OMEGA => self.has_omega,
            NU => self.has_nu,
            _ => self.fresh_atoms || self.atoms.contains(name),
        }
    }

    /// Declared constants, Ω and ν included.
    pub fn constants(&self) -> Vec<Type> {
        let mut out: Vec<Type> = self.atoms.iter().map(Type::atom).collect();
        if self.has_omega {
            out.push(Type::omega());
        }
        if self.has_nu {
            out.push(Type::nu());
        }
        out
    }

    /// The distinguished constants present (Ω and/or ν).
    pub fn specials(&self) -> Vec<Type> {
        let mut out = Vec::new();
        if self.has_omega {
            out.push(Type::omega());
        }
        if self.has_nu {
            out.push(Type::nu());
        }
        out
    }

    pub fn equation(&self, atom: &str) -> Option<&Type> {
        self.equations.get(atom)
    }

    pub fn validates_ba(&self) -> bool {
        BA_RULES.iter().all(|r| self.has_rule(*r))
    }

    /// Ba plus `omega-top` and either `omega-lazy` or `omega-eta`; the
    /// latter suffices because `A -> B <= omega <= omega -> omega`.
    pub fn validates_ao(&self) -> bool {
        self.validates_ba()
            && self.has_omega
            && self.has_rule(Rule::OmegaTop)
            && (self.has_rule(Rule::OmegaLazy) || self.has_rule(Rule::OmegaEta))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.has_omega && self.has_nu {
            out.push(Violation::OmegaNuConflict);
        }
        if self.has_omega && !self.has_rule(Rule::OmegaTop) {
            out.push(Violation::MissingAssumption1);
        }
        if self.has_nu && !self.has_rule(Rule::NuTop) {
            out.push(Violation::MissingAssumption2);
        }
        if !self.has_omega {
            for r in [Rule::OmegaTop, Rule::OmegaEta, Rule::OmegaLazy] {
                if self.has_rule(r) {
                    out.push(Violation::OmegaRuleWithoutOmega(r));
                }
            }
        }
        if !self.has_nu && self.has_rule(Rule::NuTop) {
            out.push(Violation::NuRuleWithoutNu);
        }
        for a in &self.atoms {
            if a == OMEGA || a == NU {
                out.push(Violation::ReservedAtom(a.clone()));
            }
        }
        for (atom, rhs) in &self.equations {
            if atom == OMEGA || atom == NU {
                out.push(Violation::EquationOnReserved(atom.clone()));
                continue;
            }
            if !self.atoms.contains(atom) {
                out.push(Violation::EquationOnUnknownAtom(atom.clone()));
            }
            if !rhs.conjuncts().iter().all(|c| matches!(c, Type::Arrow(..))) {
                out.push(Violation::EquationNotArrows(atom.clone()));
            }
            for used in rhs.atoms() {
                let known = match used.as_str() {
                    OMEGA => self.has_omega,
                    NU => self.has_nu,
                    u => self.atoms.contains(u),
                };
                if !known {
                    out.push(Violation::EquationMentionsUnknownAtom {
                        atom: atom.clone(),
                        unknown: used,
                    });
                }
            }
        }
        if let Some(cycle) = self.equation_cycle() {
            out.push(Violation::EquationCycle(cycle));
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), TheoryError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(TheoryError::Invalid(v))
        }
    }

    // Depth-first search over the "ψ mentions φ in its equation" graph.
    fn equation_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        fn visit(
            spec: &TheorySpec,
            atom: &str,
            marks: &mut BTreeMap<String, Mark>,
            stack: &mut Vec<String>,
        ) -> Option<Vec<String>> {
            match marks.get(atom) {
                Some(Mark::Done) => return None,
                Some(Mark::Active) => {
                    let start = stack.iter().position(|a| a == atom).unwrap_or(0);
                    return Some(stack[start..].to_vec());
                }
                None => {}
            }
            let rhs = spec.equations.get(atom)?;
            marks.insert(atom.to_string(), Mark::Active);
            stack.push(atom.to_string());
            for next in rhs.atoms() {
                if let Some(c) = visit(spec, &next, marks, stack) {
                    return Some(c);
                }
            }
            stack.pop();
            marks.insert(atom.to_string(), Mark::Done);
            None
        }
        let mut marks = BTreeMap::new();
        for atom in self.equations.keys() {
            if let Some(c) = visit(self, atom, &mut marks, &mut Vec::new()) {
                return Some(c);
            }
        }
        None
    }

    /// The named theory this spec is structurally identical to, if any
    /// (same flags and rules, no equations, declared atoms only fresh ones).
    pub fn as_named(&self) -> Option<NamedTheory> {
        let label = self.name.as_deref()?.parse::<NamedTheory>().ok()?;
        let reference = named_theory(label, self.atoms.len());
        let same = self.has_omega == reference.has_omega
            && self.has_nu == reference.has_nu
            && self.rules == reference.rules
            && self.equations.is_empty()
            && self.atoms == reference.atoms;
        same.then_some(label)
    }

    pub fn from_json(text: &str) -> Result<TheorySpec, TheoryError> {
        let file: TheoryFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TheoryFile::from(self)).expect("theory serializes")
    }

    /// Reads a theory file. Relative paths that do not exist are also looked
    /// up in the directories listed in `ITYPES_THEORY_PATH`.
    pub fn load(path: &str) -> Result<TheorySpec, TheoryError> {
        let direct = std::path::Path::new(path);
        let mut candidates = vec![direct.to_path_buf()];
        if direct.is_relative() {
            if let Some(dirs) = std::env::var_os("ITYPES_THEORY_PATH") {
                candidates.extend(std::env::split_paths(&dirs).map(|d| d.join(path)));
            }
        }
        let found = candidates.iter().find(|p| p.is_file()).unwrap_or(&candidates[0]);
        let text = std::fs::read_to_string(found).map_err(|source| TheoryError::Io {
            path: found.display().to_string(),
            source,
        })?;
        TheorySpec::from_json(&text)
    }
}

/// On-disk JSON shape of a theory.
#[derive(Debug, Serialize, Deserialize)]
pub struct TheoryFile {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub atoms: Vec<String>,
    #[serde(default)]
    pub omega: bool,
    #[serde(default)]
    pub nu: bool,
    #[serde(default)]
    pub rules: Vec<String>,
    #[serde(default)]
    pub equations: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fresh_atoms: bool,
}

impl TryFrom<TheoryFile> for TheorySpec {
    type Error = TheoryError;

    fn try_from(file: TheoryFile) -> Result<Self, Self::Error> {
        let rules = file
            .rules
            .iter()
            .map(|r| r.parse())
            .collect::<Result<BTreeSet<Rule>, _>>()?;
        let equations = file
            .equations
            .into_iter()
            .map(|(atom, src)| match parse_type_unchecked(&src) {
                Ok(t) => Ok((atom, t)),
                Err(source) => Err(TheoryError::Equation { atom, source }),
            })
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(TheorySpec {
            name: (!file.name.is_empty()).then_some(file.name),
            atoms: file.atoms.into_iter().collect(),
            has_omega: file.omega,
            has_nu: file.nu,
            rules,
            equations,
            fresh_atoms: file.fresh_atoms,
        })
    }
}

impl From<&TheorySpec> for TheoryFile {
    fn from(spec: &TheorySpec) -> Self {
        TheoryFile {
            name: spec.name.clone().unwrap_or_default(),
            atoms: spec.atoms.iter().cloned().collect(),
            omega: spec.has_omega,
            nu: spec.has_nu,
            rules: spec.rules.iter().map(|r| r.as_str().to_string()).collect(),
            equations: spec
                .equations
                .iter()
                .map(|(a, t)| (a.clone(), t.to_string()))
                .collect(),
            fresh_atoms: spec.fresh_atoms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(rs: &[Rule]) -> BTreeSet<Rule> {
        rs.iter().copied().collect()
    }

    #[test]
    fn named_theories_match_the_table() {
        let bcd = named_theory(NamedTheory::Bcd, 2);
        assert_eq!(
            bcd.constants(),
            vec![Type::atom("a0"), Type::atom("a1"), Type::omega()]
        );
        assert_eq!(
            bcd.rules,
            rules(&[Rule::ArrowInter, Rule::Eta, Rule::OmegaTop, Rule::OmegaEta])
        );

        let ehr = named_theory(NamedTheory::Ehr, 0);
        assert_eq!(ehr.constants(), vec![Type::nu()]);
        assert_eq!(ehr.rules, rules(&[Rule::ArrowInter, Rule::Eta, Rule::NuTop]));

        let ao = named_theory(NamedTheory::Ao, 5);
        assert_eq!(ao.constants(), vec![Type::omega()]);
        assert_eq!(
            ao.rules,
            rules(&[Rule::ArrowInter, Rule::Eta, Rule::OmegaTop, Rule::OmegaLazy])
        );

        let ba = named_theory(NamedTheory::Ba, 3);
        assert_eq!(ba.constants().len(), 3);
        assert_eq!(ba.rules, rules(&[Rule::ArrowInter, Rule::Eta]));
    }

    #[test]
    fn named_theories_are_well_formed_and_validate_ba() {
        for n in NamedTheory::ALL {
            let spec = named_theory(n, 3);
            assert!(spec.validate().is_empty(), "{n}");
            assert!(spec.validates_ba(), "{n}");
            assert_eq!(spec.as_named(), Some(n));
        }
    }

    #[test]
    fn validates_ao() {
        assert!(named_theory(NamedTheory::Bcd, 1).validates_ao());
        assert!(named_theory(NamedTheory::Ao, 0).validates_ao());
        assert!(!named_theory(NamedTheory::Ba, 1).validates_ao());
        assert!(!named_theory(NamedTheory::Ehr, 0).validates_ao());
    }

    #[test]
    fn only_eta_does_not_validate_ba() {
        let mut spec = named_theory(NamedTheory::Ba, 1);
        spec.rules = rules(&[Rule::Eta]);
        assert!(!spec.validates_ba());
    }

    #[test]
    fn violations() {
        let mut spec = named_theory(NamedTheory::Ao, 0);
        spec.has_nu = true;
        spec.rules.insert(Rule::NuTop);
        assert_eq!(spec.validate(), vec![Violation::OmegaNuConflict]);

        let mut spec = named_theory(NamedTheory::Ehr, 0);
        spec.rules.remove(&Rule::NuTop);
        assert_eq!(spec.validate(), vec![Violation::MissingAssumption2]);

        let mut spec = named_theory(NamedTheory::Ao, 0);
        spec.rules.remove(&Rule::OmegaTop);
        assert_eq!(spec.validate(), vec![Violation::MissingAssumption1]);

        let mut spec = named_theory(NamedTheory::Ba, 0);
        spec.rules.insert(Rule::OmegaEta);
        assert_eq!(
            spec.validate(),
            vec![Violation::OmegaRuleWithoutOmega(Rule::OmegaEta)]
        );
    }

    #[test]
    fn equation_violations() {
        let mut spec = named_theory(NamedTheory::Ba, 2);
        spec.equations
            .insert("a0".into(), parse_type_unchecked("a1 -> a1").unwrap());
        assert!(spec.validate().is_empty());

        spec.equations
            .insert("a1".into(), parse_type_unchecked("a0 -> a0").unwrap());
        assert!(matches!(
            spec.validate().as_slice(),
            [Violation::EquationCycle(_)]
        ));

        let mut spec = named_theory(NamedTheory::Ba, 1);
        spec.equations
            .insert("a0".into(), parse_type_unchecked("a0 & (b -> b)").unwrap());
        let v = spec.validate();
        assert!(v.contains(&Violation::EquationNotArrows("a0".into())));
        assert!(v.contains(&Violation::EquationMentionsUnknownAtom {
            atom: "a0".into(),
            unknown: "b".into()
        }));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"name": "mine", "atoms": ["p", "q"], "omega": true, "nu": false,
            "rules": ["omega-top", "omega-eta", "arrow-inter", "eta"],
            "equations": {"p": "q -> q"}}"#;
        let spec = TheorySpec::from_json(text).unwrap();
        assert!(spec.validate().is_empty());
        assert!(!spec.fresh_atoms);
        assert!(spec.admits_atom("q"));
        assert!(!spec.admits_atom("r"));
        assert_eq!(TheorySpec::from_json(&spec.to_json()).unwrap(), spec);
        assert!(matches!(
            TheorySpec::from_json(r#"{"rules": ["bogus"]}"#),
            Err(TheoryError::UnknownRule(_))
        ));
    }
}
