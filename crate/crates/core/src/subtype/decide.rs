use std::cell::RefCell;
use std::collections::HashMap;

use super::trace::{LeqProof, LeqRule};
use super::SubtypeError;
use crate::syntax::Type;
use crate::theory::{Rule, TheorySpec};

/// Where an arrow head of the left-hand side comes from.
#[derive(Clone, Copy, Debug)]
enum Origin {
    /// The `i`-th conjunct is itself an arrow.
    Leaf(usize),
    /// The `i`-th conjunct is an atom whose equation has the arrow as its `j`-th conjunct.
    Equation(usize, usize),
    /// `A <= omega <= omega -> omega`.
    OmegaEta,
    /// Head `k` followed by `A -> B <= omega -> omega`.
    OmegaLazy(usize),
}

#[derive(Clone, Debug)]
struct Head {
    dom: Type,
    cod: Type,
    origin: Origin,
}

/// Decides `A <= B` for a theory that validates Ba, with proof reconstruction.
///
/// Results are memoized per instance; create one per thread.
pub struct Subtyper<'s> {
    spec: &'s TheorySpec,
    memo: RefCell<HashMap<(Type, Type), bool>>,
}

impl<'s> Subtyper<'s> {
    pub fn new(spec: &'s TheorySpec) -> Result<Self, SubtypeError> {
        if !spec.validates_ba() {
            return Err(SubtypeError::UnsupportedTheory(
                spec.display_name().to_string(),
            ));
        }
        Ok(Subtyper {
            spec,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &'s TheorySpec {
        self.spec
    }

    pub fn leq(&self, a: &Type, b: &Type) -> bool {
        if a == b {
            return true;
        }
        if let Type::Inter(b1, b2) = b {
            return self.leq(a, b1) && self.leq(a, b2);
        }
        if b.is_omega() && self.spec.has_rule(Rule::OmegaTop) {
            return true;
        }
        let key = (a.clone(), b.clone());
        if let Some(&r) = self.memo.borrow().get(&key) {
            return r;
        }
        let r = self.leq_prime(a, b);
        self.memo.borrow_mut().insert(key, r);
        r
    }

    pub fn eq(&self, a: &Type, b: &Type) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    pub fn is_top(&self, a: &Type) -> bool {
        self.spec.has_omega && self.leq(&Type::omega(), a)
    }

    // `b` is an atom or an arrow.
    fn leq_prime(&self, a: &Type, b: &Type) -> bool {
        let leaves = a.conjuncts();
        if leaves.contains(&b) {
            return true;
        }
        match b {
            Type::Atom(_) if b.is_omega() => self.spec.has_rule(Rule::OmegaTop),
            Type::Atom(_) if b.is_nu() => {
                self.spec.has_rule(Rule::NuTop) && !self.heads(&leaves, false).is_empty()
            }
            Type::Atom(psi) => match self.spec.equation(psi) {
                Some(e) => self.leq(a, e),
                None => false,
            },
            Type::Arrow(c, d) => {
                let heads = self.heads(&leaves, true);
                let sel: Vec<Type> = heads
                    .into_iter()
                    .filter(|h| self.leq(c, &h.dom))
                    .map(|h| h.cod)
                    .collect();
                match Type::inter_all(sel) {
                    Some(meet) => self.leq(&meet, d),
                    None => false,
                }
            }
            Type::Inter(..) => unreachable!("handled by caller"),
        }
    }

    fn heads(&self, leaves: &[&Type], with_omega: bool) -> Vec<Head> {
        let mut out = Vec::new();
        for (i, leaf) in leaves.iter().enumerate() {
            match leaf {
                Type::Arrow(d, c) => out.push(Head {
                    dom: (**d).clone(),
                    cod: (**c).clone(),
                    origin: Origin::Leaf(i),
                }),
                Type::Atom(name) => {
                    if let Some(e) = self.spec.equation(name) {
                        for (j, conj) in e.conjuncts().into_iter().enumerate() {
                            if let Type::Arrow(d, c) = conj {
                                out.push(Head {
                                    dom: (**d).clone(),
                                    cod: (**c).clone(),
                                    origin: Origin::Equation(i, j),
                                });
                            }
                        }
                    }
                }
                Type::Inter(..) => {}
            }
        }
        if with_omega && self.spec.has_omega {
            let origin = if self.spec.has_rule(Rule::OmegaEta) {
                Some(Origin::OmegaEta)
            } else if self.spec.has_rule(Rule::OmegaLazy) && !out.is_empty() {
                Some(Origin::OmegaLazy(0))
            } else {
                None
            };
            if let Some(origin) = origin {
                out.push(Head {
                    dom: Type::omega(),
                    cod: Type::omega(),
                    origin,
                });
            }
        }
        out
    }

    /// The pairs `(A_i, B_i)` with `t <= A_i -> B_i` that the arrow case
    /// selects from, including the Ω→Ω heads contributed by the Ω rules.
    pub fn arrow_heads(&self, t: &Type) -> Vec<(Type, Type)> {
        self.heads(&t.conjuncts(), true)
            .into_iter()
            .map(|h| (h.dom, h.cod))
            .collect()
    }

    /// A checkable derivation of `a <= b`, or `None` when `a <= b` fails.
    pub fn prove(&self, a: &Type, b: &Type) -> Option<LeqProof> {
        self.leq(a, b).then(|| self.build(a, b))
    }

    fn build(&self, a: &Type, b: &Type) -> LeqProof {
        if a == b {
            return LeqProof::refl(a.clone());
        }
        if let Type::Inter(b1, b2) = b {
            return LeqProof::glb(self.build(a, b1), self.build(a, b2));
        }
        let leaves = a.conjuncts();
        if let Some(i) = leaves.iter().position(|l| *l == b) {
            return project(a, i);
        }
        match b {
            Type::Atom(_) if b.is_omega() => {
                LeqProof::axiom(LeqRule::OmegaTop, a.clone(), Type::omega())
            }
            Type::Atom(_) if b.is_nu() => {
                let heads = self.heads(&leaves, false);
                let h = &heads[0];
                let arrow = Type::arrow(h.dom.clone(), h.cod.clone());
                LeqProof::trans(
                    self.head_proof(a, &leaves, &heads, 0),
                    LeqProof::axiom(LeqRule::NuTop, arrow, Type::nu()),
                )
            }
            Type::Atom(psi) => {
                let e = self.spec.equation(psi).expect("leq holds only through an equation");
                LeqProof::trans(
                    self.build(a, e),
                    LeqProof::axiom(LeqRule::Equation, e.clone(), b.clone()),
                )
            }
            Type::Arrow(c, d) => self.build_arrow(a, &leaves, c, d),
            Type::Inter(..) => unreachable!(),
        }
    }

    fn build_arrow(&self, a: &Type, leaves: &[&Type], c: &Type, d: &Type) -> LeqProof {
        let heads = self.heads(leaves, true);
        let sel: Vec<usize> = (0..heads.len())
            .filter(|&i| self.leq(c, &heads[i].dom))
            .collect();
        // a <= /\ (A_i -> B_i)
        let p1 = fold_right(
            sel.iter().map(|&i| self.head_proof(a, leaves, &heads, i)).collect(),
            LeqProof::glb,
        );
        // /\ (A_i -> B_i) <= /\ (c -> B_i)
        let p2 = fold_right(
            sel.iter()
                .map(|&i| {
                    LeqProof::eta(self.build(c, &heads[i].dom), LeqProof::refl(heads[i].cod.clone()))
                })
                .collect(),
            LeqProof::mon,
        );
        let cods: Vec<Type> = sel.iter().map(|&i| heads[i].cod.clone()).collect();
        let p3 = arrow_inter_chain(c, &cods);
        let meet = Type::inter_all(cods).expect("nonempty selection");
        let p4 = LeqProof::eta(LeqProof::refl(c.clone()), self.build(&meet, d));
        LeqProof::trans(p1, LeqProof::trans(p2, LeqProof::trans(p3, p4)))
    }

    fn head_proof(&self, a: &Type, leaves: &[&Type], heads: &[Head], k: usize) -> LeqProof {
        match heads[k].origin {
            Origin::Leaf(i) => project(a, i),
            Origin::Equation(i, j) => {
                let name = match leaves[i] {
                    Type::Atom(n) => n,
                    _ => unreachable!(),
                };
                let e = self.spec.equation(name).expect("equation head");
                LeqProof::trans(
                    project(a, i),
                    LeqProof::trans(
                        LeqProof::axiom(LeqRule::Equation, leaves[i].clone(), e.clone()),
                        project(e, j),
                    ),
                )
            }
            Origin::OmegaEta => LeqProof::trans(
                LeqProof::axiom(LeqRule::OmegaTop, a.clone(), Type::omega()),
                LeqProof::axiom(LeqRule::OmegaEta, Type::omega(), Type::omega_arrows(1)),
            ),
            Origin::OmegaLazy(src) => {
                let arrow = Type::arrow(heads[src].dom.clone(), heads[src].cod.clone());
                LeqProof::trans(
                    self.head_proof(a, leaves, heads, src),
                    LeqProof::axiom(LeqRule::OmegaLazy, arrow, Type::omega_arrows(1)),
                )
            }
        }
    }
}

fn fold_right(mut items: Vec<LeqProof>, f: impl Fn(LeqProof, LeqProof) -> LeqProof) -> LeqProof {
    let mut acc = items.pop().expect("nonempty");
    while let Some(p) = items.pop() {
        acc = f(p, acc);
    }
    acc
}

/// `/\ (c -> B_i) <= c -> /\ B_i`, both sides right-nested.
fn arrow_inter_chain(c: &Type, cods: &[Type]) -> LeqProof {
    match cods {
        [] => unreachable!("nonempty selection"),
        [b] => LeqProof::refl(Type::arrow(c.clone(), b.clone())),
        [b, rest @ ..] => {
            let first = Type::arrow(c.clone(), b.clone());
            let rest_meet = Type::inter_all(rest.iter().cloned()).expect("nonempty");
            let folded = Type::arrow(c.clone(), rest_meet.clone());
            LeqProof::trans(
                LeqProof::mon(LeqProof::refl(first.clone()), arrow_inter_chain(c, rest)),
                LeqProof::axiom(
                    LeqRule::ArrowInter,
                    Type::inter(first, folded),
                    Type::arrow(c.clone(), Type::inter(b.clone(), rest_meet)),
                ),
            )
        }
    }
}

fn leaf_count(t: &Type) -> usize {
    match t {
        Type::Inter(l, r) => leaf_count(l) + leaf_count(r),
        _ => 1,
    }
}

/// `a <= leaf_i(a)` by (incl) and (trans).
fn project(a: &Type, i: usize) -> LeqProof {
    match a {
        Type::Inter(l, r) => {
            let nl = leaf_count(l);
            let (rule, part, j) = if i < nl {
                (LeqRule::InclL, l, i)
            } else {
                (LeqRule::InclR, r, i - nl)
            };
            LeqProof::trans(
                LeqProof::axiom(rule, a.clone(), (**part).clone()),
                project(part, j),
            )
        }
        _ => LeqProof::refl(a.clone()),
    }
}
