use std::fmt;

use serde::Serialize;

use crate::syntax::Type;
use crate::theory::{Rule, TheorySpec};

/// One rule application in a derivation of `lhs <= rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeqRule {
    Refl,
    Idem,
    InclL,
    InclR,
    Mon,
    Trans,
    OmegaTop,
    NuTop,
    OmegaEta,
    OmegaLazy,
    ArrowInter,
    Eta,
    /// `psi <= E` or `E <= psi` for an atom equation `psi ~ E`.
    Equation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeqProof {
    pub rule: LeqRule,
    pub lhs: Type,
    pub rhs: Type,
    pub premises: Vec<LeqProof>,
}

impl LeqProof {
    pub fn axiom(rule: LeqRule, lhs: Type, rhs: Type) -> LeqProof {
        LeqProof {
            rule,
            lhs,
            rhs,
            premises: Vec::new(),
        }
    }

    pub fn refl(t: Type) -> LeqProof {
        LeqProof::axiom(LeqRule::Refl, t.clone(), t)
    }

    /// Chains `a <= b` and `b <= c`; reflexive links are dropped.
    pub fn trans(p: LeqProof, q: LeqProof) -> LeqProof {
        if p.rule == LeqRule::Refl {
            return q;
        }
        if q.rule == LeqRule::Refl {
            return p;
        }
        LeqProof {
            rule: LeqRule::Trans,
            lhs: p.lhs.clone(),
            rhs: q.rhs.clone(),
            premises: vec![p, q],
        }
    }

    pub fn mon(p: LeqProof, q: LeqProof) -> LeqProof {
        LeqProof {
            rule: LeqRule::Mon,
            lhs: Type::inter(p.lhs.clone(), q.lhs.clone()),
            rhs: Type::inter(p.rhs.clone(), q.rhs.clone()),
            premises: vec![p, q],
        }
    }

    /// From `c <= a` and `b <= d` conclude `a -> b <= c -> d`.
    pub fn eta(contra: LeqProof, co: LeqProof) -> LeqProof {
        LeqProof {
            rule: LeqRule::Eta,
            lhs: Type::arrow(contra.rhs.clone(), co.lhs.clone()),
            rhs: Type::arrow(contra.lhs.clone(), co.rhs.clone()),
            premises: vec![contra, co],
        }
    }

    /// From `a <= b` and `a <= c` conclude `a <= b & c` via (idem) and (mon).
    pub fn glb(p: LeqProof, q: LeqProof) -> LeqProof {
        debug_assert_eq!(p.lhs, q.lhs);
        let a = p.lhs.clone();
        let idem = LeqProof::axiom(LeqRule::Idem, a.clone(), Type::inter(a.clone(), a));
        LeqProof::trans(idem, LeqProof::mon(p, q))
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(LeqProof::size).sum::<usize>()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rule": self.rule,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "premises": self.premises.iter().map(LeqProof::to_json).collect::<Vec<_>>(),
        })
    }
}

/// A rejected node: the premise indices leading to it and what is wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceError {
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: {}", self.path, self.message)
    }
}

impl std::error::Error for TraceError {}

/// Checks that every node of `proof` instantiates a rule of ∇⁰ or one of
/// the theory's own axioms, rules and equations.
pub fn check_proof(spec: &TheorySpec, proof: &LeqProof) -> Result<(), TraceError> {
    let mut path = Vec::new();
    check_node(spec, proof, &mut path)
}

fn check_node(spec: &TheorySpec, p: &LeqProof, path: &mut Vec<usize>) -> Result<(), TraceError> {
    if let Err(message) = node_ok(spec, p) {
        return Err(TraceError {
            path: path.clone(),
            message,
        });
    }
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        check_node(spec, q, path)?;
        path.pop();
    }
    Ok(())
}

fn node_ok(spec: &TheorySpec, p: &LeqProof) -> Result<(), String> {
    let need_premises = |n: usize| {
        if p.premises.len() == n {
            Ok(())
        } else {
            Err(format!("{:?} takes {n} premises, got {}", p.rule, p.premises.len()))
        }
    };
    let need_rule = |r: Rule| {
        if spec.has_rule(r) {
            Ok(())
        } else {
            Err(format!("theory has no rule {r}"))
        }
    };
    let bad = || Err(format!("not an instance of {:?}: {} <= {}", p.rule, p.lhs, p.rhs));
    match p.rule {
        LeqRule::Refl => {
            need_premises(0)?;
            if p.lhs != p.rhs {
                return bad();
            }
        }
        LeqRule::Idem => {
            need_premises(0)?;
            if p.rhs != Type::inter(p.lhs.clone(), p.lhs.clone()) {
                return bad();
            }
        }
        LeqRule::InclL | LeqRule::InclR => {
            need_premises(0)?;
            match &p.lhs {
                Type::Inter(l, r) => {
                    let target = if p.rule == LeqRule::InclL { l } else { r };
                    if **target != p.rhs {
                        return bad();
                    }
                }
                _ => return bad(),
            }
        }
        LeqRule::Mon => {
            need_premises(2)?;
            let (q1, q2) = (&p.premises[0], &p.premises[1]);
            if p.lhs != Type::inter(q1.lhs.clone(), q2.lhs.clone())
                || p.rhs != Type::inter(q1.rhs.clone(), q2.rhs.clone())
            {
                return bad();
            }
        }
        LeqRule::Trans => {
            need_premises(2)?;
            let (q1, q2) = (&p.premises[0], &p.premises[1]);
            if q1.lhs != p.lhs || q1.rhs != q2.lhs || q2.rhs != p.rhs {
                return bad();
            }
        }
        LeqRule::OmegaTop => {
            need_premises(0)?;
            need_rule(Rule::OmegaTop)?;
            if !p.rhs.is_omega() {
                return bad();
            }
        }
        LeqRule::NuTop => {
            need_premises(0)?;
            need_rule(Rule::NuTop)?;
            if !matches!(p.lhs, Type::Arrow(..)) || !p.rhs.is_nu() {
                return bad();
            }
        }
        LeqRule::OmegaEta => {
            need_premises(0)?;
            need_rule(Rule::OmegaEta)?;
            if !p.lhs.is_omega() || p.rhs != Type::omega_arrows(1) {
                return bad();
            }
        }
        LeqRule::OmegaLazy => {
            need_premises(0)?;
            need_rule(Rule::OmegaLazy)?;
            if !matches!(p.lhs, Type::Arrow(..)) || p.rhs != Type::omega_arrows(1) {
                return bad();
            }
        }
        LeqRule::ArrowInter => {
            need_premises(0)?;
            need_rule(Rule::ArrowInter)?;
            let ok = match (&p.lhs, &p.rhs) {
                (Type::Inter(l, r), Type::Arrow(a, bc)) => match (&**l, &**r, &**bc) {
                    (Type::Arrow(a1, b), Type::Arrow(a2, c), Type::Inter(b2, c2)) => {
                        a1 == a && a2 == a && b == b2 && c == c2
                    }
                    _ => false,
                },
                _ => false,
            };
            if !ok {
                return bad();
            }
        }
        LeqRule::Eta => {
            need_premises(2)?;
            need_rule(Rule::Eta)?;
            let (contra, co) = (&p.premises[0], &p.premises[1]);
            if p.lhs != Type::arrow(contra.rhs.clone(), co.lhs.clone())
                || p.rhs != Type::arrow(contra.lhs.clone(), co.rhs.clone())
            {
                return bad();
            }
        }
        LeqRule::Equation => {
            need_premises(0)?;
            let ok = spec.equations.iter().any(|(atom, e)| {
                let psi = Type::atom(atom.clone());
                (p.lhs == psi && p.rhs == *e) || (p.rhs == psi && p.lhs == *e)
            });
            if !ok {
                return bad();
            }
        }
    }
    Ok(())
}
