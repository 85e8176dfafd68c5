use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::subtype::{leq_oracle, OracleAnswer, Subtyper};
use crate::syntax::{parse_term, parse_type_unchecked, Term, Type};
use crate::theory::TheorySpec;

/// A basis Γ: at most one type per variable.
pub type Basis = BTreeMap<String, Type>;

/// Bound used for `Leq` side conditions in theories that do not validate Ba.
pub const CHECK_ORACLE_BOUND: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypingRule {
    Ax,
    AxOmega,
    AxNu,
    ArrowI,
    ArrowE,
    InterI,
    Leq,
}

impl TypingRule {
    pub fn as_str(self) -> &'static str {
        match self {
            TypingRule::Ax => "Ax",
            TypingRule::AxOmega => "Ax-Omega",
            TypingRule::AxNu => "Ax-Nu",
            TypingRule::ArrowI => "ArrowI",
            TypingRule::ArrowE => "ArrowE",
            TypingRule::InterI => "InterI",
            TypingRule::Leq => "Leq",
        }
    }

    fn parse(s: &str) -> Option<TypingRule> {
        [
            TypingRule::Ax,
            TypingRule::AxOmega,
            TypingRule::AxNu,
            TypingRule::ArrowI,
            TypingRule::ArrowE,
            TypingRule::InterI,
            TypingRule::Leq,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for TypingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A derivation tree for `ctx |- term : ty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: TypingRule,
    pub ctx: Basis,
    pub term: Term,
    pub ty: Type,
    pub premises: Vec<Derivation>,
    /// For `Leq`: the pair `(premise type, conclusion type)`.
    pub leq: Option<(Type, Type)>,
}

impl Derivation {
    fn leaf(rule: TypingRule, ctx: &Basis, term: &Term, ty: Type) -> Derivation {
        Derivation {
            rule,
            ctx: ctx.clone(),
            term: term.clone(),
            ty,
            premises: Vec::new(),
            leq: None,
        }
    }

    pub fn ax(ctx: &Basis, x: &str) -> Derivation {
        let ty = ctx[x].clone();
        Derivation::leaf(TypingRule::Ax, ctx, &Term::var(x), ty)
    }

    pub fn ax_omega(ctx: &Basis, term: &Term) -> Derivation {
        Derivation::leaf(TypingRule::AxOmega, ctx, term, Type::omega())
    }

    pub fn ax_nu(ctx: &Basis, term: &Term) -> Derivation {
        Derivation::leaf(TypingRule::AxNu, ctx, term, Type::nu())
    }

    /// From `ctx[x := dom] |- body : B` conclude `ctx |- \x. body : dom -> B`.
    pub fn arrow_i(ctx: &Basis, x: &str, dom: Type, body: Derivation) -> Derivation {
        Derivation {
            rule: TypingRule::ArrowI,
            ctx: ctx.clone(),
            term: Term::lam(x, body.term.clone()),
            ty: Type::arrow(dom, body.ty.clone()),
            premises: vec![body],
            leq: None,
        }
    }

    pub fn arrow_e(fun: Derivation, arg: Derivation) -> Derivation {
        let cod = match &fun.ty {
            Type::Arrow(_, c) => (**c).clone(),
            _ => panic!("ArrowE needs an arrow-typed function"),
        };
        Derivation {
            rule: TypingRule::ArrowE,
            ctx: fun.ctx.clone(),
            term: Term::app(fun.term.clone(), arg.term.clone()),
            ty: cod,
            premises: vec![fun, arg],
            leq: None,
        }
    }

    pub fn inter_i(left: Derivation, right: Derivation) -> Derivation {
        Derivation {
            rule: TypingRule::InterI,
            ctx: left.ctx.clone(),
            term: left.term.clone(),
            ty: Type::inter(left.ty.clone(), right.ty.clone()),
            premises: vec![left, right],
            leq: None,
        }
    }

    /// Weakens the conclusion type to `target`; a no-op when it is already `target`.
    pub fn leq_to(self, target: &Type) -> Derivation {
        if self.ty == *target {
            return self;
        }
        Derivation {
            rule: TypingRule::Leq,
            ctx: self.ctx.clone(),
            term: self.term.clone(),
            ty: target.clone(),
            leq: Some((self.ty.clone(), target.clone())),
            premises: vec![self],
        }
    }

    /// Right-nested `InterI` over a nonempty list of derivations of one subject.
    pub fn inter_all(mut ds: Vec<Derivation>) -> Derivation {
        let mut acc = ds.pop().expect("nonempty");
        while let Some(d) = ds.pop() {
            acc = Derivation::inter_i(d, acc);
        }
        acc
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn to_json(&self) -> Value {
        let ctx: serde_json::Map<String, Value> = self
            .ctx
            .iter()
            .map(|(x, t)| (x.clone(), Value::String(t.to_string())))
            .collect();
        let mut v = json!({
            "rule": self.rule.as_str(),
            "ctx": ctx,
            "term": self.term.to_string(),
            "type": self.ty.to_string(),
            "premises": self.premises.iter().map(Derivation::to_json).collect::<Vec<_>>(),
        });
        if let Some((l, r)) = &self.leq {
            v["leq"] = json!([l.to_string(), r.to_string()]);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Derivation, String> {
        let field = |k: &str| v.get(k).ok_or_else(|| format!("missing field `{k}`"));
        let str_field = |k: &str| {
            field(k)?
                .as_str()
                .ok_or_else(|| format!("field `{k}` must be a string"))
        };
        let ty = |s: &str| parse_type_unchecked(s).map_err(|e| e.to_string());
        let rule_name = str_field("rule")?;
        let rule = TypingRule::parse(rule_name).ok_or_else(|| format!("unknown rule `{rule_name}`"))?;
        let mut ctx = Basis::new();
        for (x, t) in field("ctx")?.as_object().ok_or("`ctx` must be an object")? {
            let t = t.as_str().ok_or("context types must be strings")?;
            ctx.insert(x.clone(), ty(t)?);
        }
        let term = parse_term(str_field("term")?).map_err(|e| e.to_string())?;
        let conclusion = ty(str_field("type")?)?;
        let premises = field("premises")?
            .as_array()
            .ok_or("`premises` must be an array")?
            .iter()
            .map(Derivation::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let leq = match v.get("leq") {
            None | Some(Value::Null) => None,
            Some(pair) => {
                let pair = pair.as_array().filter(|p| p.len() == 2).ok_or("`leq` must be a pair")?;
                let side = |i: usize| pair[i].as_str().ok_or("`leq` entries must be strings");
                Some((ty(side(0)?)?, ty(side(1)?)?))
            }
        };
        Ok(Derivation {
            rule,
            ctx,
            term,
            ty: conclusion,
            premises,
            leq,
        })
    }
}

/// The first rejected node, as a path of premise indices from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationError {
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for DerivationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {:?}: {}", self.path, self.message)
    }
}

impl std::error::Error for DerivationError {}

/// Verifies every node of `d` against the rule schemas of the theory's system.
pub fn check_derivation(spec: &TheorySpec, d: &Derivation) -> Result<(), DerivationError> {
    let sub = Subtyper::new(spec).ok();
    let mut path = Vec::new();
    check_node(spec, sub.as_ref(), d, &mut path)
}

fn check_node(
    spec: &TheorySpec,
    sub: Option<&Subtyper>,
    d: &Derivation,
    path: &mut Vec<usize>,
) -> Result<(), DerivationError> {
    if let Err(message) = node_ok(spec, sub, d) {
        return Err(DerivationError {
            path: path.clone(),
            message,
        });
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(spec, sub, p, path)?;
        path.pop();
    }
    Ok(())
}

fn node_ok(spec: &TheorySpec, sub: Option<&Subtyper>, d: &Derivation) -> Result<(), String> {
    let arity = |n: usize| {
        if d.premises.len() == n {
            Ok(())
        } else {
            Err(format!("{} takes {n} premises, got {}", d.rule, d.premises.len()))
        }
    };
    let same_subject = |p: &Derivation| {
        if p.ctx != d.ctx {
            Err("premise has a different basis".to_string())
        } else if p.term != d.term {
            Err("premise has a different subject".to_string())
        } else {
            Ok(())
        }
    };
    if d.rule != TypingRule::Leq && d.leq.is_some() {
        return Err(format!("{} carries a subtyping side condition", d.rule));
    }
    match d.rule {
        TypingRule::Ax => {
            arity(0)?;
            let Term::Var(x) = &d.term else {
                return Err("Ax subject must be a variable".into());
            };
            match d.ctx.get(x) {
                Some(t) if *t == d.ty => Ok(()),
                Some(t) => Err(format!("basis gives {x}:{t}, not {}", d.ty)),
                None => Err(format!("{x} is not in the basis")),
            }
        }
        TypingRule::AxOmega => {
            arity(0)?;
            if !spec.has_omega {
                return Err("Ax-Omega needs omega among the constants".into());
            }
            if !d.ty.is_omega() {
                return Err("Ax-Omega concludes omega".into());
            }
            Ok(())
        }
        TypingRule::AxNu => {
            arity(0)?;
            if !spec.has_nu {
                return Err("Ax-Nu needs nu among the constants".into());
            }
            if !matches!(d.term, Term::Lam(..)) {
                return Err("Ax-Nu applies to abstractions only".into());
            }
            if !d.ty.is_nu() {
                return Err("Ax-Nu concludes nu".into());
            }
            Ok(())
        }
        TypingRule::ArrowI => {
            arity(1)?;
            let Term::Lam(x, body) = &d.term else {
                return Err("ArrowI subject must be an abstraction".into());
            };
            let Type::Arrow(dom, cod) = &d.ty else {
                return Err("ArrowI concludes an arrow type".into());
            };
            let p = &d.premises[0];
            let mut inner = d.ctx.clone();
            inner.insert(x.clone(), (**dom).clone());
            if p.ctx != inner {
                return Err(format!("premise basis must extend the basis with {x}:{dom}"));
            }
            if p.term != **body || p.ty != **cod {
                return Err("premise must type the body at the codomain".into());
            }
            Ok(())
        }
        TypingRule::ArrowE => {
            arity(2)?;
            let Term::App(m, n) = &d.term else {
                return Err("ArrowE subject must be an application".into());
            };
            let (f, a) = (&d.premises[0], &d.premises[1]);
            for p in [f, a] {
                if p.ctx != d.ctx {
                    return Err("premise has a different basis".into());
                }
            }
            if f.term != **m || a.term != **n {
                return Err("premises must type the function and the argument".into());
            }
            match &f.ty {
                Type::Arrow(dom, cod) if **dom == a.ty && **cod == d.ty => Ok(()),
                _ => Err(format!(
                    "function type {} does not match argument {} and result {}",
                    f.ty, a.ty, d.ty
                )),
            }
        }
        TypingRule::InterI => {
            arity(2)?;
            let (l, r) = (&d.premises[0], &d.premises[1]);
            same_subject(l)?;
            same_subject(r)?;
            if d.ty != Type::inter(l.ty.clone(), r.ty.clone()) {
                return Err("InterI concludes the intersection of its premises".into());
            }
            Ok(())
        }
        TypingRule::Leq => {
            arity(1)?;
            let p = &d.premises[0];
            same_subject(p)?;
            let Some((lo, hi)) = &d.leq else {
                return Err("Leq node without its subtyping pair".into());
            };
            if *lo != p.ty || *hi != d.ty {
                return Err("Leq pair does not match premise and conclusion".into());
            }
            let holds = match sub {
                Some(s) => s.leq(lo, hi),
                None => matches!(
                    leq_oracle(spec, lo, hi, CHECK_ORACLE_BOUND),
                    Ok(OracleAnswer::Yes)
                ),
            };
            if holds {
                Ok(())
            } else {
                Err(format!("{lo} <= {hi} does not hold"))
            }
        }
    }
}
