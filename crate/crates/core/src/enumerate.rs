//! Exhaustive enumeration of types by size.

use std::collections::BTreeSet;

use crate::subtype::canonical;
use crate::syntax::Type;
use crate::theory::TheorySpec;

/// `by_size[s]` lists every type of exactly `s` nodes over `leaves`.
/// Only odd sizes are inhabited.
pub fn types_by_size(leaves: &[Type], max_size: usize) -> Vec<Vec<Type>> {
    let mut by_size: Vec<Vec<Type>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = leaves.to_vec();
    }
    for s in (3..=max_size).step_by(2) {
        let mut out = Vec::new();
        for l in (1..s - 1).step_by(2) {
            let r = s - 1 - l;
            for a in &by_size[l] {
                for b in &by_size[r] {
                    out.push(Type::arrow(a.clone(), b.clone()));
                    out.push(Type::inter(a.clone(), b.clone()));
                }
            }
        }
        by_size[s] = out;
    }
    by_size
}

/// All types of size at most `max_size`, smaller first.
pub fn types_up_to(leaves: &[Type], max_size: usize) -> Vec<Type> {
    types_by_size(leaves, max_size).into_iter().flatten().collect()
}

/// Number of types `types_up_to` would return, without building them.
pub fn count_types_up_to(n_leaves: usize, max_size: usize) -> usize {
    let mut counts = vec![0usize; max_size + 1];
    if max_size >= 1 {
        counts[1] = n_leaves;
    }
    for s in (3..=max_size).step_by(2) {
        counts[s] = (1..s - 1)
            .step_by(2)
            .map(|l| 2usize.saturating_mul(counts[l].saturating_mul(counts[s - 1 - l])))
            .fold(0usize, usize::saturating_add);
    }
    counts.iter().fold(0usize, |a, b| a.saturating_add(*b))
}

/// Distinct canonical forms of the types of size at most `max_size`,
/// ordered by size and then structurally.
pub fn canonical_types_up_to(spec: &TheorySpec, leaves: &[Type], max_size: usize) -> Vec<Type> {
    let set: BTreeSet<(usize, Type)> = types_up_to(leaves, max_size)
        .iter()
        .map(|t| canonical(spec, t))
        .map(|t| (t.size(), t))
        .collect();
    set.into_iter().map(|(_, t)| t).collect()
}

/// Leaves for enumeration: the given plain atoms followed by the theory's Ω/ν.
pub fn leaves_with_specials(spec: &TheorySpec, atoms: &[&str]) -> Vec<Type> {
    let mut out: Vec<Type> = atoms.iter().map(|a| Type::atom(*a)).collect();
    out.extend(spec.specials());
    out
}
