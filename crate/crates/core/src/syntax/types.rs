use std::collections::BTreeSet;
use std::fmt;

/// Reserved atom name for the universal type Ω.
pub const OMEGA: &str = "omega";
/// Reserved atom name for the universal type of abstractions ν.
pub const NU: &str = "nu";

/// An intersection type: atoms closed under `->` and `&`.
///
/// Intersections are kept as binary trees exactly as written; flattening and
/// canonical ordering live in [`crate::subtype::normalize`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Atom(String),
    Arrow(Box<Type>, Box<Type>),
    Inter(Box<Type>, Box<Type>),
}

impl Type {
    pub fn atom(name: impl Into<String>) -> Type {
        Type::Atom(name.into())
    }

    pub fn omega() -> Type {
        Type::Atom(OMEGA.to_string())
    }

    pub fn nu() -> Type {
        Type::Atom(NU.to_string())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn inter(left: Type, right: Type) -> Type {
        Type::Inter(Box::new(left), Box::new(right))
    }

    /// Right-nested intersection `t1 & (t2 & (... & tn))`. `None` for an empty list.
    pub fn inter_all<I>(types: I) -> Option<Type>
    where
        I: IntoIterator<Item = Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        types
            .into_iter()
            .rev()
            .fold(None, |acc, t| match acc {
                None => Some(t),
                Some(rest) => Some(Type::inter(t, rest)),
            })
    }

    /// `Ω^n -> Ω`, i.e. `omega -> ... -> omega` with `n` arrows.
    pub fn omega_arrows(n: usize) -> Type {
        (0..n).fold(Type::omega(), |acc, _| Type::arrow(Type::omega(), acc))
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Type::Atom(a) if a == OMEGA)
    }

    pub fn is_nu(&self) -> bool {
        matches!(self, Type::Atom(a) if a == NU)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Type::Atom(_) => 1,
            Type::Arrow(a, b) | Type::Inter(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// All atom names occurring in the type, including `omega`/`nu`.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Atom(a) => {
                out.insert(a.clone());
            }
            Type::Arrow(a, b) | Type::Inter(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// The leaves of the top-level intersection tree, left to right.
    pub fn conjuncts(&self) -> Vec<&Type> {
        let mut out = Vec::new();
        self.push_conjuncts(&mut out);
        out
    }

    fn push_conjuncts<'a>(&'a self, out: &mut Vec<&'a Type>) {
        match self {
            Type::Inter(a, b) => {
                a.push_conjuncts(out);
                b.push_conjuncts(out);
            }
            t => out.push(t),
        }
    }

    /// Every subtree, the type itself included.
    pub fn subterms(&self) -> Vec<&Type> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            if let Type::Arrow(a, b) | Type::Inter(a, b) = out[i] {
                out.push(a);
                out.push(b);
            }
            i += 1;
        }
        out
    }
}

// Precedence levels used by the printer: an arrow needs parentheses anywhere
// but the right of another arrow or the top; an intersection needs them as
// the right operand of `&`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    Inter,
    Prim,
}

fn write_type(f: &mut fmt::Formatter<'_>, t: &Type, prec: Prec) -> fmt::Result {
    match t {
        Type::Atom(a) => f.write_str(a),
        Type::Arrow(a, b) => {
            let parens = prec > Prec::Top;
            if parens {
                f.write_str("(")?;
            }
            write_type(f, a, Prec::Inter)?;
            f.write_str(" -> ")?;
            write_type(f, b, Prec::Top)?;
            if parens {
                f.write_str(")")?;
            }
            Ok(())
        }
        Type::Inter(a, b) => {
            let parens = prec > Prec::Inter;
            if parens {
                f.write_str("(")?;
            }
            write_type(f, a, Prec::Inter)?;
            f.write_str(" & ")?;
            write_type(f, b, Prec::Prim)?;
            if parens {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self, Prec::Top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Type {
        Type::atom(n)
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        assert_eq!(
            Type::arrow(Type::inter(a("a"), a("b")), a("c")).to_string(),
            "a & b -> c"
        );
        assert_eq!(
            Type::inter(Type::arrow(a("a"), a("b")), Type::arrow(a("a"), a("c"))).to_string(),
            "(a -> b) & (a -> c)"
        );
        assert_eq!(
            Type::arrow(a("a"), Type::arrow(a("b"), a("c"))).to_string(),
            "a -> b -> c"
        );
        assert_eq!(
            Type::arrow(Type::arrow(a("a"), a("b")), a("c")).to_string(),
            "(a -> b) -> c"
        );
        assert_eq!(
            Type::inter(a("a"), Type::inter(a("b"), a("c"))).to_string(),
            "a & (b & c)"
        );
        assert_eq!(
            Type::inter(Type::inter(a("a"), a("b")), a("c")).to_string(),
            "a & b & c"
        );
    }

    #[test]
    fn size_and_atoms() {
        let t = Type::arrow(Type::inter(a("a"), Type::omega()), a("a"));
        assert_eq!(t.size(), 5);
        assert_eq!(
            t.atoms().into_iter().collect::<Vec<_>>(),
            vec!["a".to_string(), "omega".to_string()]
        );
        assert_eq!(Type::omega_arrows(2).to_string(), "omega -> omega -> omega");
    }

    #[test]
    fn inter_all_nests_right() {
        let t = Type::inter_all(vec![a("a"), a("b"), a("c")]).unwrap();
        assert_eq!(t, Type::inter(a("a"), Type::inter(a("b"), a("c"))));
        assert!(Type::inter_all(Vec::<Type>::new()).is_none());
        assert_eq!(t.conjuncts().len(), 3);
    }
}
