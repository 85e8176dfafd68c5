use std::collections::{BTreeSet, HashMap};

use super::SubtypeError;
use crate::enumerate::types_up_to;
use crate::syntax::Type;
use crate::theory::{Rule, TheorySpec};

/// Largest universe the oracle will saturate.
pub const DEFAULT_ORACLE_CAP: usize = 12000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    /// No derivation whose intermediate types all lie in the universe.
    NotFound,
}

#[derive(Clone, Copy)]
enum Node {
    Atom,
    Arrow(usize, usize),
    Inter(usize, usize),
}

/// The least relation closed under the preorder rules and the theory's axioms,
/// restricted to all types of size at most `bound` over a fixed atom set.
pub struct OracleUniverse {
    types: Vec<Type>,
    index: HashMap<Type, usize>,
    nodes: Vec<Node>,
    words: usize,
    rel: Vec<u64>,
}

impl OracleUniverse {
    pub fn build(
        spec: &TheorySpec,
        atoms: &BTreeSet<String>,
        bound: usize,
        cap: usize,
    ) -> Result<OracleUniverse, SubtypeError> {
        let leaves: Vec<Type> = atoms.iter().map(Type::atom).collect();
        let size = crate::enumerate::count_types_up_to(leaves.len(), bound);
        if size > cap {
            return Err(SubtypeError::ResourceLimit { size, cap });
        }
        let types = types_up_to(&leaves, bound);
        let index: HashMap<Type, usize> =
            types.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let nodes = types
            .iter()
            .map(|t| match t {
                Type::Atom(_) => Node::Atom,
                Type::Arrow(a, b) => Node::Arrow(index[&**a], index[&**b]),
                Type::Inter(a, b) => Node::Inter(index[&**a], index[&**b]),
            })
            .collect();
        let n = types.len();
        let words = n.div_ceil(64);
        let mut u = OracleUniverse {
            types,
            index,
            nodes,
            words,
            rel: vec![0; n * words],
        };
        u.seed(spec);
        u.saturate(spec);
        Ok(u)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[Type] {
        &self.types
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) -> bool {
        let w = &mut self.rel[i * self.words + j / 64];
        let bit = 1u64 << (j % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn query(&self, a: &Type, b: &Type) -> OracleAnswer {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) if self.get(i, j) => OracleAnswer::Yes,
            _ => OracleAnswer::NotFound,
        }
    }

    fn seed(&mut self, spec: &TheorySpec) {
        let n = self.types.len();
        let omega = self.index.get(&Type::omega()).copied();
        let nu = self.index.get(&Type::nu()).copied();
        let omega_arrow = self.index.get(&Type::omega_arrows(1)).copied();
        for i in 0..n {
            self.set(i, i);
            let t = self.types[i].clone();
            if let Some(&k) = self.index.get(&Type::inter(t.clone(), t.clone())) {
                self.set(i, k);
            }
            match self.nodes[i] {
                Node::Inter(l, r) => {
                    self.set(i, l);
                    self.set(i, r);
                    // (A -> B) & (A -> C) <= A -> B & C
                    if spec.has_rule(Rule::ArrowInter) {
                        if let (Node::Arrow(a1, b), Node::Arrow(a2, c)) = (self.nodes[l], self.nodes[r])
                        {
                            if a1 == a2 {
                                let target = Type::arrow(
                                    self.types[a1].clone(),
                                    Type::inter(self.types[b].clone(), self.types[c].clone()),
                                );
                                if let Some(&k) = self.index.get(&target) {
                                    self.set(i, k);
                                }
                            }
                        }
                    }
                }
                Node::Arrow(..) => {
                    if spec.has_rule(Rule::NuTop) {
                        if let Some(k) = nu {
                            self.set(i, k);
                        }
                    }
                    if spec.has_rule(Rule::OmegaLazy) {
                        if let Some(k) = omega_arrow {
                            self.set(i, k);
                        }
                    }
                }
                Node::Atom => {}
            }
            if spec.has_rule(Rule::OmegaTop) {
                if let Some(k) = omega {
                    self.set(i, k);
                }
            }
        }
        if spec.has_rule(Rule::OmegaEta) {
            if let (Some(o), Some(k)) = (omega, omega_arrow) {
                self.set(o, k);
            }
        }
        for (atom, e) in &spec.equations {
            if let (Some(&i), Some(&j)) = (self.index.get(&Type::atom(atom.clone())), self.index.get(e)) {
                self.set(i, j);
                self.set(j, i);
            }
        }
    }

    fn saturate(&mut self, spec: &TheorySpec) {
        let n = self.types.len();
        let inters: Vec<(usize, usize, usize)> = (0..n)
            .filter_map(|i| match self.nodes[i] {
                Node::Inter(l, r) => Some((i, l, r)),
                _ => None,
            })
            .collect();
        let arrows: Vec<(usize, usize, usize)> = (0..n)
            .filter_map(|i| match self.nodes[i] {
                Node::Arrow(l, r) => Some((i, l, r)),
                _ => None,
            })
            .collect();
        let eta = spec.has_rule(Rule::Eta);
        loop {
            self.transitive_closure();
            let mut changed = false;
            for &(x, a, b) in &inters {
                for &(y, c, d) in &inters {
                    if self.get(a, c) && self.get(b, d) {
                        changed |= self.set(x, y);
                    }
                }
            }
            if eta {
                for &(x, a, b) in &arrows {
                    for &(y, c, d) in &arrows {
                        if self.get(c, a) && self.get(b, d) {
                            changed |= self.set(x, y);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    // Warshall's algorithm on bit rows.
    fn transitive_closure(&mut self) {
        let n = self.types.len();
        let w = self.words;
        for k in 0..n {
            let row_k: Vec<u64> = self.rel[k * w..(k + 1) * w].to_vec();
            for i in 0..n {
                if self.get(i, k) {
                    let row_i = &mut self.rel[i * w..(i + 1) * w];
                    for (x, y) in row_i.iter_mut().zip(&row_k) {
                        *x |= *y;
                    }
                }
            }
        }
    }
}

/// The atoms an oracle query ranges over: those of `a` and `b`, the theory's
/// Ω/ν, and every atom of the equation table.
pub fn oracle_atoms(spec: &TheorySpec, a: &Type, b: &Type) -> BTreeSet<String> {
    let mut atoms = a.atoms();
    b.collect_atoms(&mut atoms);
    for s in spec.specials() {
        s.collect_atoms(&mut atoms);
    }
    for (psi, e) in &spec.equations {
        atoms.insert(psi.clone());
        e.collect_atoms(&mut atoms);
    }
    atoms
}

/// Semi-decides `a <= b` by saturation over all types of size at most `bound`.
pub fn leq_oracle(
    spec: &TheorySpec,
    a: &Type,
    b: &Type,
    bound: usize,
) -> Result<OracleAnswer, SubtypeError> {
    let atoms = oracle_atoms(spec, a, b);
    let u = OracleUniverse::build(spec, &atoms, bound, DEFAULT_ORACLE_CAP)?;
    Ok(u.query(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type_unchecked as ty;
    use crate::theory::{named_theory, NamedTheory};

    fn oracle(n: NamedTheory, a: &str, b: &str, bound: usize) -> OracleAnswer {
        leq_oracle(&named_theory(n, 0), &ty(a).unwrap(), &ty(b).unwrap(), bound).unwrap()
    }

    #[test]
    fn small_facts() {
        assert_eq!(oracle(NamedTheory::Bcd, "a", "omega", 3), OracleAnswer::Yes);
        assert_eq!(oracle(NamedTheory::Ba, "a", "a", 1), OracleAnswer::Yes);
        assert_eq!(oracle(NamedTheory::Ba, "a", "b", 5), OracleAnswer::NotFound);
        assert_eq!(
            oracle(NamedTheory::Ao, "omega", "omega -> omega", 5),
            OracleAnswer::NotFound
        );
    }

    #[test]
    fn arrow_inter_at_bound_eight() {
        assert_eq!(
            oracle(NamedTheory::Bcd, "(a -> b) & (a -> c)", "a -> b & c", 8),
            OracleAnswer::Yes
        );
    }

    #[test]
    fn resource_limit() {
        let spec = named_theory(NamedTheory::Bcd, 0);
        let err = leq_oracle(&spec, &ty("a").unwrap(), &ty("b -> c").unwrap(), 9).unwrap_err();
        assert!(matches!(err, SubtypeError::ResourceLimit { .. }));
    }
}
