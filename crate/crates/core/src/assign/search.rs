use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use super::derivation::{Basis, Derivation};
use super::AssignError;
use crate::enumerate::{canonical_types_up_to, count_types_up_to};
use crate::subtype::{canonical, Subtyper};
use crate::syntax::{Term, Type};
use crate::theory::TheorySpec;

/// Spines whose head type has more arrow heads than this are left undecided.
const MAX_SPINE_HEADS: usize = 24;
/// Largest type universe `infer_types` will enumerate.
pub const INFER_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest candidate argument type tried for non-variable-headed applications.
    pub max_candidate_type_size: usize,
    pub max_depth: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_candidate_type_size: 6,
            max_depth: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(Derivation),
    /// Refuted by the Generation Lemma; never a consequence of running out of budget.
    No,
    Unknown,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            Verdict::Yes(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Yes(Derivation),
    No,
    /// `transient` marks answers that depend on the search path (depth
    /// cut-off or a goal already on the stack); those are not memoized.
    Unknown { transient: bool },
}

type Goal = (Basis, Term, Type);

/// Combines the undecided parts of several sub-searches.
#[derive(Default)]
struct Pending(Option<bool>);

impl Pending {
    fn note(&mut self, transient: bool) {
        self.0 = Some(self.0.unwrap_or(false) || transient);
    }

    fn or_no(self) -> Outcome {
        match self.0 {
            Some(transient) => Outcome::Unknown { transient },
            None => Outcome::No,
        }
    }
}

/// Generation-Lemma-directed proof search for one theory and budget.
///
/// Memo tables live in the instance; create one per thread.
pub struct Searcher<'s> {
    spec: &'s TheorySpec,
    sub: Subtyper<'s>,
    budget: SearchBudget,
    memo: RefCell<HashMap<Goal, Outcome>>,
    active: RefCell<HashSet<Goal>>,
    pools: RefCell<HashMap<BTreeSet<String>, Rc<Vec<Type>>>>,
}

impl<'s> Searcher<'s> {
    pub fn new(spec: &'s TheorySpec, budget: SearchBudget) -> Result<Self, AssignError> {
        let sub = Subtyper::new(spec)?;
        Ok(Searcher {
            spec,
            sub,
            budget,
            memo: RefCell::new(HashMap::new()),
            active: RefCell::new(HashSet::new()),
            pools: RefCell::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &'s TheorySpec {
        self.spec
    }

    pub fn subtyper(&self) -> &Subtyper<'s> {
        &self.sub
    }

    pub fn budget(&self) -> SearchBudget {
        self.budget
    }

    pub fn derives(&self, ctx: &Basis, m: &Term, a: &Type) -> Verdict {
        match self.go(ctx, m, a, 0) {
            Outcome::Yes(d) => Verdict::Yes(d),
            Outcome::No => Verdict::No,
            Outcome::Unknown { .. } => Verdict::Unknown,
        }
    }

    fn go(&self, ctx: &Basis, m: &Term, a: &Type, depth: usize) -> Outcome {
        if depth > self.budget.max_depth {
            return Outcome::Unknown { transient: true };
        }
        let key = (ctx.clone(), m.clone(), a.clone());
        if let Some(o) = self.memo.borrow().get(&key) {
            return o.clone();
        }
        if !self.active.borrow_mut().insert(key.clone()) {
            return Outcome::Unknown { transient: true };
        }
        let out = self.solve(ctx, m, a, depth);
        self.active.borrow_mut().remove(&key);
        if !matches!(out, Outcome::Unknown { transient: true }) {
            self.memo.borrow_mut().insert(key, out.clone());
        }
        out
    }

    fn solve(&self, ctx: &Basis, m: &Term, a: &Type, depth: usize) -> Outcome {
        if self.sub.is_top(a) {
            return Outcome::Yes(Derivation::ax_omega(ctx, m).leq_to(a));
        }
        if self.spec.has_nu && matches!(m, Term::Lam(..)) && self.sub.leq(&Type::nu(), a) {
            return Outcome::Yes(Derivation::ax_nu(ctx, m).leq_to(a));
        }
        let mut conjuncts = a.conjuncts();
        conjuncts.dedup();
        if matches!(a, Type::Inter(..)) {
            return self.split(ctx, m, a, &conjuncts, depth);
        }
        match m {
            Term::Var(x) => match ctx.get(x) {
                Some(t) if self.sub.leq(t, a) => Outcome::Yes(Derivation::ax(ctx, x).leq_to(a)),
                _ => Outcome::No,
            },
            Term::Lam(x, body) => match a {
                Type::Arrow(c, d) => {
                    let mut inner = ctx.clone();
                    inner.insert(x.clone(), (**c).clone());
                    match self.go(&inner, body, d, depth + 1) {
                        Outcome::Yes(db) => Outcome::Yes(Derivation::arrow_i(ctx, x, (**c).clone(), db)),
                        other => other,
                    }
                }
                Type::Atom(psi) => match self.spec.equation(psi) {
                    Some(e) => match self.go(ctx, m, e, depth + 1) {
                        Outcome::Yes(d) => Outcome::Yes(d.leq_to(a)),
                        other => other,
                    },
                    // an intersection of arrows is never below an
                    // equation-free plain atom
                    None => Outcome::No,
                },
                Type::Inter(..) => unreachable!("split above"),
            },
            Term::App(f, n) => {
                let (head, args) = m.spine();
                match head {
                    Term::Var(x) => self.spine(ctx, x, &args, a, depth),
                    _ => self.candidates(ctx, f, n, a, depth),
                }
            }
        }
    }

    fn split(&self, ctx: &Basis, m: &Term, a: &Type, conjuncts: &[&Type], depth: usize) -> Outcome {
        let mut ds = Vec::new();
        let mut pending = Pending::default();
        for c in conjuncts {
            match self.go(ctx, m, c, depth + 1) {
                Outcome::Yes(d) => ds.push(d),
                Outcome::No => return Outcome::No,
                Outcome::Unknown { transient } => pending.note(transient),
            }
        }
        match pending.0 {
            Some(transient) => Outcome::Unknown { transient },
            None => Outcome::Yes(Derivation::inter_all(ds).leq_to(a)),
        }
    }

    // `x N1 ... Nk : a`. The types of `x N1` form the upper set of
    // `/\ { B_i | ctx |- N1 : A_i }` over the arrow heads `A_i -> B_i` of
    // ctx(x), so one greedy pass per argument decides the judgment.
    fn spine(&self, ctx: &Basis, x: &str, args: &[&Term], a: &Type, depth: usize) -> Outcome {
        let (mut cur, mut ty) = match ctx.get(x) {
            Some(t) => (Derivation::ax(ctx, x), t.clone()),
            None if self.spec.has_omega => (Derivation::ax_omega(ctx, &Term::var(x)), Type::omega()),
            None => return Outcome::No,
        };
        let mut pending = Pending::default();
        for n in args {
            let heads = self.sub.arrow_heads(&ty);
            if heads.len() > MAX_SPINE_HEADS {
                return Outcome::Unknown { transient: false };
            }
            let mut doms = Vec::new();
            let mut cods = Vec::new();
            let mut ds = Vec::new();
            for (dom, cod) in heads {
                match self.go(ctx, n, &dom, depth + 1) {
                    Outcome::Yes(d) => {
                        doms.push(dom);
                        cods.push(cod);
                        ds.push(d);
                    }
                    Outcome::No => {}
                    Outcome::Unknown { transient } => pending.note(transient),
                }
            }
            if ds.is_empty() {
                return pending.or_no();
            }
            let dom = Type::inter_all(doms).expect("nonempty");
            let cod = Type::inter_all(cods).expect("nonempty");
            let fun = cur.leq_to(&Type::arrow(dom, cod.clone()));
            cur = Derivation::arrow_e(fun, Derivation::inter_all(ds));
            ty = cod;
        }
        if self.sub.leq(&ty, a) {
            Outcome::Yes(cur.leq_to(a))
        } else {
            pending.or_no()
        }
    }

    // `f n : a` with `f` not headed by a variable: try argument types from
    // the candidate pool. Exhausting the pool proves nothing.
    fn candidates(&self, ctx: &Basis, f: &Term, n: &Term, a: &Type, depth: usize) -> Outcome {
        let mut transient = false;
        let arg_first = matches!(n, Term::Var(_));
        for b in self.pool(ctx, a).iter() {
            let fa = Type::arrow(b.clone(), a.clone());
            let fun_goal = (f, &fa);
            let arg_goal = (n, b);
            let (first, second) = if arg_first {
                (arg_goal, fun_goal)
            } else {
                (fun_goal, arg_goal)
            };
            let d1 = match self.go(ctx, first.0, first.1, depth + 1) {
                Outcome::Yes(d) => d,
                Outcome::No => continue,
                Outcome::Unknown { transient: t } => {
                    transient |= t;
                    continue;
                }
            };
            match self.go(ctx, second.0, second.1, depth + 1) {
                Outcome::Yes(d2) => {
                    let (fd, nd) = if arg_first { (d2, d1) } else { (d1, d2) };
                    return Outcome::Yes(Derivation::arrow_e(fd, nd));
                }
                Outcome::No => {}
                Outcome::Unknown { transient: t } => transient |= t,
            }
        }
        Outcome::Unknown { transient }
    }

    /// Candidate argument types: Ω/ν, the types of `ctx` and `a` with their
    /// subterms, then every canonical type up to the budget size over the
    /// atoms involved.
    fn pool(&self, ctx: &Basis, a: &Type) -> Rc<Vec<Type>> {
        let mut atoms = a.atoms();
        for t in ctx.values() {
            t.collect_atoms(&mut atoms);
        }
        for s in self.spec.specials() {
            s.collect_atoms(&mut atoms);
        }
        let enumerated = self.enumerated_pool(&atoms);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let seeds = self
            .spec
            .specials()
            .into_iter()
            .chain(ctx.values().chain([a]).flat_map(|t| t.subterms()).cloned());
        for t in seeds.map(|t| canonical(self.spec, &t)).chain(enumerated.iter().cloned()) {
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
        Rc::new(out)
    }

    fn enumerated_pool(&self, atoms: &BTreeSet<String>) -> Rc<Vec<Type>> {
        if let Some(p) = self.pools.borrow().get(atoms) {
            return p.clone();
        }
        let leaves: Vec<Type> = atoms.iter().map(Type::atom).collect();
        let mut size = self.budget.max_candidate_type_size;
        // keep the enumeration tractable for large atom sets
        while size > 1 && count_types_up_to(leaves.len(), size) > INFER_CAP {
            size -= 2;
        }
        let pool = Rc::new(canonical_types_up_to(self.spec, &leaves, size));
        self.pools.borrow_mut().insert(atoms.clone(), pool.clone());
        pool
    }

    /// Canonical types of size at most `size_bound` over `atoms` plus the
    /// theory's Ω/ν, split by verdict.
    pub fn infer_types(
        &self,
        ctx: &Basis,
        m: &Term,
        size_bound: usize,
        atoms: &[String],
    ) -> Result<InferResult, AssignError> {
        let mut leaves: Vec<Type> = atoms.iter().map(Type::atom).collect();
        leaves.extend(self.spec.specials());
        let size = count_types_up_to(leaves.len(), size_bound);
        if size > INFER_CAP {
            return Err(AssignError::ResourceLimit {
                size,
                cap: INFER_CAP,
            });
        }
        let mut out = InferResult::default();
        for t in canonical_types_up_to(self.spec, &leaves, size_bound) {
            match self.derives(ctx, m, &t) {
                Verdict::Yes(_) => out.derivable.push(t),
                Verdict::No => {}
                Verdict::Unknown => out.undetermined.push(t),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InferResult {
    pub derivable: Vec<Type>,
    /// Types the search could neither derive nor refute.
    pub undetermined: Vec<Type>,
}
