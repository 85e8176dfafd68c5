use std::collections::BTreeSet;

use super::derivation::{Basis, Derivation, TypingRule};
use super::search::{Searcher, Verdict};
use crate::syntax::{fresh_var, Term, Type};

/// A typing judgment `ctx |- term : ty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub ctx: Basis,
    pub term: Term,
    pub ty: Type,
}

impl Judgment {
    pub fn new(ctx: Basis, term: Term, ty: Type) -> Judgment {
        Judgment { ctx, term, ty }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuralRule {
    Weakening,
    Strengthening,
    InterElim,
    LeqLeft,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub rule: StructuralRule,
    pub premise: Judgment,
    pub conclusion: Judgment,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdmissibleReport {
    /// Instances whose conclusion was derived.
    pub confirmed: usize,
    /// Instances whose conclusion came back undecided.
    pub inconclusive: usize,
    /// Corpus entries whose own judgment was not derivable.
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl AdmissibleReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks weakening, strengthening, ∩-elimination and ≤ on the left over
/// each derivable judgment of `corpus`.
pub fn admissible_rule_suite(searcher: &Searcher, corpus: &[Judgment]) -> AdmissibleReport {
    let mut report = AdmissibleReport::default();
    let spec = searcher.spec();
    let extra_type = spec
        .constants()
        .into_iter()
        .next()
        .unwrap_or_else(|| Type::atom("a"));
    for j in corpus {
        if !searcher.derives(&j.ctx, &j.term, &j.ty).is_yes() {
            report.skipped += 1;
            continue;
        }
        let mut instances: Vec<(StructuralRule, Judgment)> = Vec::new();

        let mut avoid: BTreeSet<String> = j.ctx.keys().cloned().collect();
        avoid.extend(all_vars(&j.term));
        let y = fresh_var("y", &avoid);
        let mut weak = j.ctx.clone();
        weak.insert(y, extra_type.clone());
        instances.push((StructuralRule::Weakening, Judgment::new(weak, j.term.clone(), j.ty.clone())));

        let fv = j.term.free_vars();
        let strong: Basis = j
            .ctx
            .iter()
            .filter(|(x, _)| fv.contains(*x))
            .map(|(x, t)| (x.clone(), t.clone()))
            .collect();
        instances.push((StructuralRule::Strengthening, Judgment::new(strong, j.term.clone(), j.ty.clone())));

        if let Type::Inter(l, r) = &j.ty {
            for part in [l, r] {
                instances.push((StructuralRule::InterElim, Judgment::new(j.ctx.clone(), j.term.clone(), (**part).clone())));
            }
        }

        for (x, b) in &j.ctx {
            let mut smaller = j.ctx.clone();
            smaller.insert(x.clone(), Type::inter(b.clone(), extra_type.clone()));
            instances.push((StructuralRule::LeqLeft, Judgment::new(smaller, j.term.clone(), j.ty.clone())));
        }

        for (rule, concl) in instances {
            match searcher.derives(&concl.ctx, &concl.term, &concl.ty) {
                Verdict::Yes(_) => report.confirmed += 1,
                Verdict::Unknown => report.inconclusive += 1,
                Verdict::No => report.counterexamples.push(Counterexample {
                    rule,
                    premise: j.clone(),
                    conclusion: concl,
                }),
            }
        }
    }
    report
}

fn all_vars(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        match t {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Lam(x, b) => {
                out.insert(x.clone());
                stack.push(b);
            }
            Term::App(m, n) => {
                stack.push(m);
                stack.push(n);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HindleyStatus {
    AdmissibleOnInstance,
    CounterexampleCandidate,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HindleyInstance {
    pub ctx: Basis,
    pub term: Term,
    /// `\x1 ... xn. term x1 ... xn`
    pub expanded: Term,
    pub premise: &'static str,
    pub conclusion: &'static str,
    pub status: HindleyStatus,
}

/// Instantiates `ctx |- M : psi & (omega^n -> omega)  ⟹  ctx |- \x1..xn. M x1..xn : psi`
/// on each `(ctx, M)` and classifies the instance by running the search on
/// both sides.
pub fn hindley_rule_check(
    searcher: &Searcher,
    psi: &str,
    n: usize,
    corpus: &[(Basis, Term)],
) -> Vec<HindleyInstance> {
    let psi_ty = Type::atom(psi);
    let premise_ty = Type::inter(psi_ty.clone(), Type::omega_arrows(n));
    corpus
        .iter()
        .map(|(ctx, m)| {
            let expanded = eta_expand(ctx, m, n);
            let premise = searcher.derives(ctx, m, &premise_ty);
            let conclusion = searcher.derives(ctx, &expanded, &psi_ty);
            let status = match (&premise, &conclusion) {
                (Verdict::No, _) | (Verdict::Yes(_), Verdict::Yes(_)) => HindleyStatus::AdmissibleOnInstance,
                (Verdict::Yes(_), Verdict::No) => HindleyStatus::CounterexampleCandidate,
                _ => HindleyStatus::Unknown,
            };
            HindleyInstance {
                ctx: ctx.clone(),
                term: m.clone(),
                expanded,
                premise: premise.label(),
                conclusion: conclusion.label(),
                status,
            }
        })
        .collect()
}

/// `\x1 ... xn. m x1 ... xn` with binders fresh for `m` and `ctx`.
pub fn eta_expand(ctx: &Basis, m: &Term, n: usize) -> Term {
    let mut avoid: BTreeSet<String> = ctx.keys().cloned().collect();
    avoid.extend(all_vars(m));
    let mut xs = Vec::new();
    for _ in 0..n {
        let x = fresh_var("x", &avoid);
        avoid.insert(x.clone());
        xs.push(x);
    }
    let body = Term::apps(m.clone(), xs.iter().map(Term::var));
    xs.iter().rev().fold(body, |acc, x| Term::lam(x.clone(), acc))
}

/// Which Generation Lemma clause a derivation failed to reflect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationMismatch {
    pub judgment: Judgment,
    pub message: String,
}

/// Reads the Generation Lemma backwards off a derivation: at every node, the
/// structural rules reached through `InterI`/`Leq` must have the shape the
/// lemma prescribes for the subject, and their conclusions must meet below
/// the node's type.
pub fn generation_round_trip(searcher: &Searcher, d: &Derivation) -> Result<(), GenerationMismatch> {
    let sub = searcher.subtyper();
    let fail = |message: String| GenerationMismatch {
        judgment: Judgment::new(d.ctx.clone(), d.term.clone(), d.ty.clone()),
        message,
    };
    if !sub.is_top(&d.ty) {
        let mut roots = Vec::new();
        collect_structural(d, &mut roots);
        let mut meet = Vec::new();
        for r in &roots {
            let shape_ok = match (&d.term, r.rule) {
                (_, TypingRule::AxOmega) => true,
                (Term::Var(x), TypingRule::Ax) => d.ctx.get(x) == Some(&r.ty),
                (Term::Lam(..), TypingRule::ArrowI | TypingRule::AxNu) => true,
                (Term::App(..), TypingRule::ArrowE) => true,
                _ => false,
            };
            if !shape_ok {
                return Err(fail(format!("{} cannot conclude a judgment about {}", r.rule, d.term)));
            }
            if r.rule != TypingRule::AxOmega {
                meet.push(r.ty.clone());
            }
        }
        let Some(meet) = Type::inter_all(meet) else {
            return Err(fail("only Ax-Omega supports a non-top type".into()));
        };
        if !sub.leq(&meet, &d.ty) {
            return Err(fail(format!("{meet} is not below {}", d.ty)));
        }
        if let Term::Var(x) = &d.term {
            match d.ctx.get(x) {
                Some(b) if sub.leq(b, &d.ty) => {}
                _ => return Err(fail(format!("no ({x}:B) in the basis with B <= {}", d.ty))),
            }
        }
    }
    for p in &d.premises {
        generation_round_trip(searcher, p)?;
    }
    Ok(())
}

fn collect_structural<'d>(d: &'d Derivation, out: &mut Vec<&'d Derivation>) {
    match d.rule {
        TypingRule::InterI | TypingRule::Leq => {
            for p in &d.premises {
                collect_structural(p, out);
            }
        }
        _ => out.push(d),
    }
}
