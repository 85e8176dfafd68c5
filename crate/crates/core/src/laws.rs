//! Executable law suites over enumerated types and terms.
//!
//! Every suite records, per law, how many instances it checked and the
//! first failing instance. Exhaustive where the enumeration is small,
//! seeded sampling where it is not.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::assign::{
    admissible_rule_suite, check_derivation, generation_round_trip, Basis, Judgment, SearchBudget,
    Searcher, Verdict,
};
use crate::classify::{adequacy_report, fun_predicate, is_f_type_theory, Tri};
use crate::enumerate::{count_types_up_to, types_up_to};
use crate::filter::{apply, includes, member, phi_membership, prop_simple_check, FiniteFilter};
use crate::subtype::{
    check_proof, normalize, oracle_atoms, OracleAnswer, OracleUniverse, Subtyper,
    DEFAULT_ORACLE_CAP,
};
use crate::syntax::{parse_term, parse_type_unchecked, Term, Type};
use crate::theory::{Rule, TheorySpec};

/// Oracle saturation bound used by the agreement law.
pub const ORACLE_BOUND: usize = 7;
/// Pair checks per universe beyond which a law switches to sampling.
const EXHAUSTIVE_LIMIT: usize = 60_000;
/// Largest universe (in pairs) for which the full `leq` matrix is built.
const MATRIX_LIMIT: usize = 2_500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawConfig {
    /// Largest enumerated type size.
    pub size: usize,
    pub seed: u64,
    /// Instances drawn by each sampled law.
    pub samples: usize,
    pub budget: SearchBudget,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            size: 5,
            seed: 0,
            samples: 2000,
            budget: SearchBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub suite: &'static str,
    pub law: String,
    pub checked: usize,
    pub failures: usize,
    /// Instances that could not be decided (search `unknown`, oracle cap).
    pub inconclusive: usize,
    pub example: Option<String>,
}

impl LawResult {
    fn new(suite: &'static str, law: impl Into<String>) -> LawResult {
        LawResult {
            suite,
            law: law.into(),
            checked: 0,
            failures: 0,
            inconclusive: 0,
            example: None,
        }
    }

    fn check(&mut self, ok: bool, instance: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(instance());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawSummary {
    pub theory: String,
    pub size: usize,
    pub seed: u64,
    pub results: Vec<LawResult>,
}

impl LawSummary {
    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn failures(&self) -> usize {
        self.results.iter().map(|r| r.failures).sum()
    }
}

/// Two plain atoms for enumeration: the first declared ones, topped up with
/// fresh names when the theory admits them.
pub fn law_atoms(spec: &TheorySpec) -> Vec<String> {
    let mut out: Vec<String> = spec
        .atoms
        .iter()
        .filter(|a| spec.equation(a).is_none())
        .take(2)
        .cloned()
        .collect();
    if spec.fresh_atoms {
        for name in ["a", "b", "c", "d"] {
            if out.len() >= 2 {
                break;
            }
            if !spec.atoms.contains(name) {
                out.push(name.to_string());
            }
        }
    }
    out
}

/// Enumeration leaves: the law atoms, equation atoms, then Ω/ν.
pub fn law_leaves(spec: &TheorySpec) -> Vec<Type> {
    let mut out: Vec<Type> = law_atoms(spec).into_iter().map(Type::atom).collect();
    out.extend(spec.equations.keys().map(Type::atom));
    out.extend(spec.specials());
    out
}

/// Runs every suite at `cfg.size`. Fails with a message when the theory
/// does not validate Ba (the decision procedure needs it).
pub fn run_all(spec: &TheorySpec, cfg: &LawConfig) -> Result<LawSummary, String> {
    let sub = Subtyper::new(spec).map_err(|e| e.to_string())?;
    let mut results = Vec::new();
    results.extend(syntax_laws(spec, cfg));
    results.extend(subtype_laws(&sub, cfg));
    results.extend(oracle_agreement(&sub, cfg.size.min(5), ORACLE_BOUND));
    results.extend(filter_laws(&sub, cfg));
    results.extend(classify_laws(&sub, cfg));
    results.extend(assign_laws(spec, cfg)?);
    Ok(LawSummary {
        theory: spec.display_name().to_string(),
        size: cfg.size,
        seed: cfg.seed,
        results,
    })
}

fn universe(spec: &TheorySpec, size: usize) -> Vec<Type> {
    types_up_to(&law_leaves(spec), size)
}

/// `rows[i]` holds the indices `j` with `u[i] <= u[j]`, as a bitset.
struct LeqMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl LeqMatrix {
    fn build(sub: &Subtyper, u: &[Type]) -> LeqMatrix {
        let words = u.len().div_ceil(64);
        let mut bits = vec![0u64; u.len() * words];
        for (i, a) in u.iter().enumerate() {
            for (j, b) in u.iter().enumerate() {
                if sub.leq(a, b) {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        LeqMatrix { words, bits }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// `row(j) ⊆ row(i)`
    fn row_contains(&self, i: usize, j: usize) -> bool {
        self.row(i).iter().zip(self.row(j)).all(|(a, b)| b & !a == 0)
    }
}

pub fn syntax_laws(spec: &TheorySpec, cfg: &LawConfig) -> Vec<LawResult> {
    let mut types = LawResult::new("syntax", "parse(print(A)) = A");
    for t in universe(spec, cfg.size.min(7)) {
        let back = parse_type_unchecked(&t.to_string());
        types.check(back.as_ref() == Ok(&t), || t.to_string());
    }
    let mut terms = LawResult::new("syntax", "parse(print(M)) =α M");
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let m = random_term(&mut rng, 50);
        let ok = parse_term(&m.to_string()).is_ok_and(|back| back.alpha_eq(&m));
        terms.check(ok, || m.to_string());
    }
    vec![types, terms]
}

/// A random term of size at most `max_size` over the variables `x, y, z`.
pub fn random_term(rng: &mut impl Rng, max_size: usize) -> Term {
    const VARS: [&str; 3] = ["x", "y", "z"];
    let var = |rng: &mut dyn rand::RngCore| Term::var(VARS[rng.gen_range(0..VARS.len())]);
    if max_size < 2 {
        return var(rng);
    }
    let arms = if max_size < 3 { 2 } else { 3 };
    match rng.gen_range(0..arms) {
        0 => var(rng),
        1 => {
            let x = VARS[rng.gen_range(0..VARS.len())];
            Term::lam(x, random_term(rng, max_size - 1))
        }
        _ => {
            let left = rng.gen_range(1..max_size - 1);
            Term::app(random_term(rng, left), random_term(rng, max_size - 1 - left))
        }
    }
}

/// Preorder, theory-axiom and normal-form laws of `leq`.
pub fn subtype_laws(sub: &Subtyper, cfg: &LawConfig) -> Vec<LawResult> {
    let spec = sub.spec();
    let u = universe(spec, cfg.size);
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x5b7);

    let matrix = (u.len() * u.len() <= MATRIX_LIMIT).then(|| LeqMatrix::build(sub, &u));
    if let Some(m) = &matrix {
        let mut refl = LawResult::new("subtype", "reflexivity");
        let mut trans = LawResult::new("subtype", "transitivity");
        for i in 0..u.len() {
            refl.check(m.get(i, i), || u[i].to_string());
            for j in 0..u.len() {
                if m.get(i, j) {
                    trans.check(m.row_contains(i, j), || format!("{} <= {} <= _", u[i], u[j]));
                }
            }
        }
        out.push(refl);
        out.push(trans);
    } else {
        let mut refl = LawResult::new("subtype", "reflexivity");
        for a in &u {
            refl.check(sub.leq(a, a), || a.to_string());
        }
        let mut trans = LawResult::new("subtype", "transitivity (sampled)");
        for _ in 0..cfg.samples {
            let [a, b, c] = pick(&mut rng, &u);
            if sub.leq(a, b) && sub.leq(b, c) {
                trans.check(sub.leq(a, c), || format!("{a} <= {b} <= {c}"));
            }
        }
        out.push(refl);
        out.push(trans);
    }

    let pairs = u.len() * u.len();
    let exhaustive = pairs <= EXHAUSTIVE_LIMIT;
    let mut idem = LawResult::new("subtype", "idem: A <= A & A");
    let mut incl = LawResult::new("subtype", "incl: A & B <= A, A & B <= B");
    let mut arrow_inter = LawResult::new("subtype", "arrow-inter: (A -> B) & (A -> C) <= A -> B & C");
    for a in &u {
        idem.check(sub.leq(a, &Type::inter(a.clone(), a.clone())), || a.to_string());
    }
    let mut pair_instances = |a: &Type, b: &Type, c: &Type| {
        let ab = Type::inter(a.clone(), b.clone());
        incl.check(sub.leq(&ab, a) && sub.leq(&ab, b), || format!("{a}, {b}"));
        let lhs = Type::inter(Type::arrow(a.clone(), b.clone()), Type::arrow(a.clone(), c.clone()));
        let rhs = Type::arrow(a.clone(), Type::inter(b.clone(), c.clone()));
        arrow_inter.check(sub.leq(&lhs, &rhs), || format!("{lhs} <= {rhs}"));
    };
    if exhaustive {
        for a in &u {
            for b in &u {
                pair_instances(a, b, &u[(a.size() + b.size()) % u.len()]);
            }
        }
    }
    for _ in 0..cfg.samples {
        let [a, b, c] = pick(&mut rng, &u);
        pair_instances(a, b, c);
    }
    out.extend([idem, incl, arrow_inter]);

    // mon and eta need related pairs; draw them from the relation itself
    let related: Vec<(usize, usize)> = if let Some(m) = &matrix {
        (0..u.len())
            .flat_map(|i| (0..u.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| m.get(i, j))
            .collect()
    } else {
        (0..cfg.samples * 4)
            .map(|_| (rng.gen_range(0..u.len()), rng.gen_range(0..u.len())))
            .filter(|&(i, j)| sub.leq(&u[i], &u[j]))
            .collect()
    };
    let mut mon = LawResult::new("subtype", "mon: A <= A', B <= B' => A & B <= A' & B'");
    let mut eta = LawResult::new("subtype", "eta: C <= A, B <= D => A -> B <= C -> D");
    if !related.is_empty() {
        for _ in 0..cfg.samples {
            let (a, a2) = related[rng.gen_range(0..related.len())];
            let (b, b2) = related[rng.gen_range(0..related.len())];
            let (a, a2, b, b2) = (&u[a], &u[a2], &u[b], &u[b2]);
            let l = Type::inter(a.clone(), b.clone());
            let r = Type::inter(a2.clone(), b2.clone());
            mon.check(sub.leq(&l, &r), || format!("{l} <= {r}"));
            // C = a <= A = a2, B = b <= D = b2
            let l = Type::arrow(a2.clone(), b.clone());
            let r = Type::arrow(a.clone(), b2.clone());
            eta.check(sub.leq(&l, &r), || format!("{l} <= {r}"));
        }
    }
    out.extend([mon, eta]);

    let mut axioms = LawResult::new("subtype", "theory axioms");
    let omega = Type::omega();
    let oo = Type::omega_arrows(1);
    if spec.has_rule(Rule::OmegaEta) {
        axioms.check(sub.eq(&omega, &oo), || "omega ~ omega -> omega".into());
    }
    for a in &u {
        if spec.has_rule(Rule::OmegaTop) {
            axioms.check(sub.leq(a, &omega), || format!("{a} <= omega"));
        }
        if let Type::Arrow(..) = a {
            if spec.has_rule(Rule::NuTop) {
                axioms.check(sub.leq(a, &Type::nu()), || format!("{a} <= nu"));
            }
            if spec.has_rule(Rule::OmegaLazy) {
                axioms.check(sub.leq(a, &oo), || format!("{a} <= omega -> omega"));
            }
        }
    }
    for (psi, e) in &spec.equations {
        axioms.check(sub.eq(&Type::atom(psi.clone()), e), || format!("{psi} ~ {e}"));
    }
    out.push(axioms);

    let mut norm = LawResult::new("subtype", "normalize is idempotent and eq-preserving");
    for a in &u {
        let n = normalize(spec, a);
        let d = n.denorm();
        norm.check(normalize(spec, &d) == n && sub.eq(a, &d), || a.to_string());
    }
    out.push(norm);

    if spec.has_rule(Rule::OmegaEta) && spec.has_omega {
        let mut top = LawResult::new("subtype", "omega <= C -> D iff D ~ omega");
        let small = universe(spec, cfg.size.min(5));
        let cap = if small.len() * small.len() <= EXHAUSTIVE_LIMIT { usize::MAX } else { cfg.samples };
        let mut n = 0;
        'outer: for c in &small {
            for d in &small {
                if n >= cap {
                    break 'outer;
                }
                n += 1;
                let lhs = sub.leq(&omega, &Type::arrow(c.clone(), d.clone()));
                top.check(lhs == sub.eq(d, &omega), || format!("C = {c}, D = {d}"));
            }
        }
        out.push(top);
    }
    out
}

fn pick<'t, const N: usize>(rng: &mut StdRng, u: &'t [Type]) -> [&'t Type; N] {
    std::array::from_fn(|_| &u[rng.gen_range(0..u.len())])
}

/// Oracle Yes implies `leq`, and every `leq` success carries a proof the
/// trace checker accepts, for all pairs of size at most `size`.
pub fn oracle_agreement(sub: &Subtyper, size: usize, bound: usize) -> Vec<LawResult> {
    let spec = sub.spec();
    let u = universe(spec, size);
    let mut sound = LawResult::new("subtype", format!("oracle (bound {bound}) Yes => leq"));
    let mut traces = LawResult::new("subtype", "leq true => checked proof trace");
    let mut atoms: BTreeSet<String> = u.iter().flat_map(Type::atoms).collect();
    atoms.extend(oracle_atoms(spec, &Type::omega(), &Type::omega()));
    if !spec.has_omega {
        atoms.remove(crate::syntax::OMEGA);
    }
    let count = count_types_up_to(atoms.len(), bound);
    let oracle = if count <= DEFAULT_ORACLE_CAP {
        OracleUniverse::build(spec, &atoms, bound, DEFAULT_ORACLE_CAP).ok()
    } else {
        None
    };
    for a in &u {
        for b in &u {
            let l = sub.leq(a, b);
            match &oracle {
                Some(o) => sound.check(o.query(a, b) != OracleAnswer::Yes || l, || format!("{a} <= {b}")),
                None => sound.inconclusive += 1,
            }
            if l {
                let ok = sub.prove(a, b).is_some_and(|p| check_proof(spec, &p).is_ok());
                traces.check(ok, || format!("{a} <= {b}"));
            }
        }
    }
    vec![sound, traces]
}

/// Filters over generators of size at most `cfg.size` (capped at 5).
pub fn filter_laws(sub: &Subtyper, cfg: &LawConfig) -> Vec<LawResult> {
    let spec = sub.spec();
    let size = cfg.size.min(5);
    let u = universe(spec, size);
    let small = universe(spec, size.min(3));
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xf11);

    let mut filters: Vec<FiniteFilter> = vec![FiniteFilter::empty()];
    filters.extend(u.iter().cloned().map(FiniteFilter::principal));
    let leaves = universe(spec, 1);
    for g in &leaves {
        for h in &leaves {
            filters.push(FiniteFilter::generated(vec![g.clone(), h.clone()]));
        }
    }

    let mut principal = LawResult::new("filter", "member(up A, B) iff A <= B");
    for a in &u {
        for b in &small {
            principal.check(member(sub, &FiniteFilter::principal(a.clone()), b) == sub.leq(a, b), || {
                format!("A = {a}, B = {b}")
            });
        }
    }

    let mut upward = LawResult::new("filter", "upward closure");
    let mut inter = LawResult::new("filter", "intersection closure");
    let exhaustive = u.len() * u.len() <= EXHAUSTIVE_LIMIT;
    for x in &filters {
        let members: Vec<&Type> = u.iter().filter(|a| member(sub, x, a)).collect();
        if exhaustive {
            for (i, a) in members.iter().enumerate() {
                for b in &u {
                    if sub.leq(a, b) {
                        upward.check(member(sub, x, b), || format!("{x} holds {a}, not {b}"));
                    }
                }
                for b in &members[..=i] {
                    let ab = Type::inter((*a).clone(), (*b).clone());
                    inter.check(member(sub, x, &ab), || format!("{x} holds {a} and {b}"));
                }
            }
        } else if !members.is_empty() {
            for _ in 0..cfg.samples / filters.len().max(1) + 1 {
                let a = members[rng.gen_range(0..members.len())];
                let b = &u[rng.gen_range(0..u.len())];
                if sub.leq(a, b) {
                    upward.check(member(sub, x, b), || format!("{x} holds {a}, not {b}"));
                }
                let b = members[rng.gen_range(0..members.len())];
                let ab = Type::inter(a.clone(), b.clone());
                inter.check(member(sub, x, &ab), || format!("{x} holds {a} and {b}"));
            }
        }
    }

    let mut mono = LawResult::new("filter", "g1 <= g2 => apply(up g2, y) <= apply(up g1, y)");
    let mut args: Vec<FiniteFilter> = vec![FiniteFilter::empty()];
    args.extend(small.iter().cloned().map(FiniteFilter::principal));
    let related: Vec<(&Type, &Type)> = u
        .iter()
        .flat_map(|a| u.iter().map(move |b| (a, b)))
        .filter(|(a, b)| sub.leq(a, b))
        .collect();
    let mut mono_case = |g1: &Type, g2: &Type, y: &FiniteFilter| {
        let r1 = apply(sub, &FiniteFilter::principal(g1.clone()), y);
        let r2 = apply(sub, &FiniteFilter::principal(g2.clone()), y);
        mono.check(includes(sub, &r1, &r2), || format!("g1 = {g1}, g2 = {g2}, y = {y}"));
    };
    if related.len() * args.len() <= EXHAUSTIVE_LIMIT * 4 {
        for (g1, g2) in &related {
            for y in &args {
                mono_case(g1, g2, y);
            }
        }
    } else {
        for _ in 0..cfg.samples {
            let (g1, g2) = related[rng.gen_range(0..related.len())];
            mono_case(g1, g2, &args[rng.gen_range(0..args.len())]);
        }
    }

    let mut simple = LawResult::new("filter", "b in x . up a iff a -> b in x (when omega -> omega in x)");
    for g in &u {
        let x = FiniteFilter::principal(g.clone());
        for a in &small {
            for b in &small {
                if let Some(ok) = prop_simple_check(sub, &x, a, b) {
                    simple.check(ok, || format!("x = up {g}, a = {a}, b = {b}"));
                }
            }
        }
    }
    vec![principal, upward, inter, mono, simple]
}

pub fn classify_laws(sub: &Subtyper, cfg: &LawConfig) -> Vec<LawResult> {
    let spec = sub.spec();
    let u = universe(spec, cfg.size.min(5));
    let small = universe(spec, cfg.size.min(3));
    let mut rec = LawResult::new("classify", "fun(A & B) = fun(A) or fun(B)");
    for a in &small {
        for b in &small {
            let ab = Type::inter(a.clone(), b.clone());
            let lhs = fun_predicate(sub, &ab);
            rec.check(lhs == fun_predicate(sub, a).or(fun_predicate(sub, b)), || format!("{ab}"));
        }
    }
    let mut shadow = LawResult::new("classify", "F-type theory: fun(A) => phi(up A)");
    if is_f_type_theory(spec).verdict == Tri::Yes {
        for a in &u {
            if fun_predicate(sub, a) == Tri::Yes {
                shadow.check(phi_membership(sub, &FiniteFilter::principal(a.clone())), || a.to_string());
            }
        }
    }
    let mut report = LawResult::new("classify", "report invariants");
    let r = adequacy_report(spec);
    report.check(r.inference_adequate == (r.strict || r.natural), || "inference".into());
    report.check(
        r.simple_adequate == ((r.strict && !spec.has_nu) || (r.natural && spec.has_rule(Rule::OmegaEta))),
        || "simple".into(),
    );
    report.check(r.f_adequate == r.f_type_theory, || "F".into());
    report.check(!(r.strict && r.natural), || "strict and natural".into());
    vec![rec, shadow, report]
}

/// The closed terms the typing laws run on.
pub fn term_corpus() -> Vec<Term> {
    ["\\x. x", "\\x. \\y. x", "\\x. x x", "\\x. \\y. y", "\\f. \\x. f (f x)"]
        .iter()
        .map(|s| parse_term(s).expect("corpus term"))
        .collect()
}

/// `m` with every binder renamed apart.
pub fn alpha_rename(m: &Term) -> Term {
    fn go(m: &Term, env: &[(String, String)], next: &mut usize) -> Term {
        match m {
            Term::Var(x) => Term::var(
                env.iter()
                    .rev()
                    .find(|(old, _)| old == x)
                    .map_or(x.clone(), |(_, new)| new.clone()),
            ),
            Term::Lam(x, b) => {
                let new = format!("v{next}_");
                *next += 1;
                let mut env = env.to_vec();
                env.push((x.clone(), new.clone()));
                Term::lam(new, go(b, &env, next))
            }
            Term::App(f, a) => Term::app(go(f, env, next), go(a, env, next)),
        }
    }
    go(m, &[], &mut 0)
}

pub fn assign_laws(spec: &TheorySpec, cfg: &LawConfig) -> Result<Vec<LawResult>, String> {
    let searcher = Searcher::new(spec, cfg.budget).map_err(|e| e.to_string())?;
    let small_budget = SearchBudget {
        max_candidate_type_size: cfg.budget.max_candidate_type_size.min(3),
        ..cfg.budget
    };
    let small = Searcher::new(spec, small_budget).map_err(|e| e.to_string())?;
    let types = universe(spec, cfg.size.min(3));
    let empty = Basis::new();

    let mut sound = LawResult::new("assign", "yes => derivation checks");
    let mut generation = LawResult::new("assign", "generation lemma round trip");
    let mut alpha = LawResult::new("assign", "alpha-invariance");
    let mut budget = LawResult::new("assign", "budget monotonicity");
    let mut judgments = Vec::new();
    for m in term_corpus() {
        let renamed = alpha_rename(&m);
        for a in &types {
            let v = searcher.derives(&empty, &m, a);
            if let Verdict::Yes(d) = &v {
                sound.check(check_derivation(spec, d).is_ok(), || format!("{m} : {a}"));
                generation.check(generation_round_trip(&searcher, d).is_ok(), || format!("{m} : {a}"));
                judgments.push(Judgment::new(empty.clone(), m.clone(), a.clone()));
            } else if v.is_unknown() {
                sound.inconclusive += 1;
            }
            let w = searcher.derives(&empty, &renamed, a);
            alpha.check(w.label() == v.label(), || format!("{m} vs {renamed} : {a}"));
            let s = small.derives(&empty, &m, a);
            let ok = match s {
                Verdict::Yes(_) => v.is_yes(),
                Verdict::No => !v.is_yes(),
                Verdict::Unknown => true,
            };
            budget.check(ok, || format!("{m} : {a}"));
        }
    }

    let mut admissible = LawResult::new("assign", "weakening, strengthening, inter-elim, leq-left");
    let rep = admissible_rule_suite(&searcher, &judgments);
    admissible.checked = rep.confirmed + rep.counterexamples.len();
    admissible.inconclusive = rep.inconclusive;
    admissible.failures = rep.counterexamples.len();
    admissible.example = rep
        .counterexamples
        .first()
        .map(|c| format!("{:?}: {} : {}", c.rule, c.conclusion.term, c.conclusion.ty));
    Ok(vec![sound, generation, alpha, budget, admissible])
}
