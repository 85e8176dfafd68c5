use std::collections::BTreeSet;
use std::fmt;

/// An untyped λ-term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn lam(binder: impl Into<String>, body: Term) -> Term {
        Term::Lam(binder.into(), Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// Left-nested application `head a1 ... an`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(m, n) => 1 + m.size() + n.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App(m, n) => {
                m.collect_free(bound, out);
                n.collect_free(bound, out);
            }
        }
    }

    /// Splits `h N1 ... Nk` into the head `h` (not an application) and its arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(m, n) = cur {
            args.push(&**n);
            cur = m;
        }
        args.reverse();
        (cur, args)
    }

    /// α-equivalence: equal up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        fn go<'a>(
            a: &'a Term,
            b: &'a Term,
            env_a: &mut Vec<&'a str>,
            env_b: &mut Vec<&'a str>,
        ) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    let ix = env_a.iter().rposition(|v| *v == x);
                    let iy = env_b.iter().rposition(|v| *v == y);
                    match (ix, iy) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::Lam(x, m), Term::Lam(y, n)) => {
                    env_a.push(x);
                    env_b.push(y);
                    let r = go(m, n, env_a, env_b);
                    env_a.pop();
                    env_b.pop();
                    r
                }
                (Term::App(m1, n1), Term::App(m2, n2)) => {
                    go(m1, m2, env_a, env_b) && go(n1, n2, env_a, env_b)
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

/// A variable name starting with `base` that is not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !avoid.contains(c))
        .expect("unbounded supply of names")
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, as_arg: bool, as_fun: bool) -> fmt::Result {
    match t {
        Term::Var(x) => f.write_str(x),
        Term::Lam(x, body) => {
            let parens = as_arg || as_fun;
            if parens {
                f.write_str("(")?;
            }
            write!(f, "\\{x}. ")?;
            write_term(f, body, false, false)?;
            if parens {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::App(m, n) => {
            if as_arg {
                f.write_str("(")?;
            }
            write_term(f, m, false, true)?;
            f.write_str(" ")?;
            write_term(f, n, true, false)?;
            if as_arg {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, false, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    #[test]
    fn alpha_equivalence() {
        assert!(Term::lam("x", v("x")).alpha_eq(&Term::lam("y", v("y"))));
        assert!(Term::lam("x", Term::app(v("x"), v("y")))
            .alpha_eq(&Term::lam("z", Term::app(v("z"), v("y")))));
        assert!(!Term::lam("x", v("x")).alpha_eq(&Term::lam("y", v("x"))));
        // shadowing: \x.\x.x  ~  \a.\b.b  but not  \a.\b.a
        let shadow = Term::lam("x", Term::lam("x", v("x")));
        assert!(shadow.alpha_eq(&Term::lam("a", Term::lam("b", v("b")))));
        assert!(!shadow.alpha_eq(&Term::lam("a", Term::lam("b", v("a")))));
    }

    #[test]
    fn free_variables() {
        let t = Term::lam("x", Term::app(v("x"), Term::app(v("y"), v("z"))));
        assert_eq!(
            t.free_vars().into_iter().collect::<Vec<_>>(),
            vec!["y".to_string(), "z".to_string()]
        );
    }

    #[test]
    fn printing() {
        assert_eq!(Term::lam("x", Term::app(v("x"), v("x"))).to_string(), "\\x. x x");
        let delta = Term::lam("x", Term::app(v("x"), v("x")));
        let t = Term::app(
            Term::lam("y", Term::lam("x", v("x"))),
            Term::app(delta.clone(), delta),
        );
        assert_eq!(t.to_string(), "(\\y. \\x. x) ((\\x. x x) (\\x. x x))");
        assert_eq!(Term::apps(v("x"), [v("y"), v("z")]).to_string(), "x y z");
        assert_eq!(Term::app(v("x"), Term::app(v("y"), v("z"))).to_string(), "x (y z)");
    }

    #[test]
    fn spine_and_fresh() {
        let t = Term::apps(v("f"), [v("a"), v("b")]);
        let (h, args) = t.spine();
        assert_eq!(h, &v("f"));
        assert_eq!(args, vec![&v("a"), &v("b")]);
        let avoid: BTreeSet<String> = ["x".to_string(), "x1".to_string()].into();
        assert_eq!(fresh_var("x", &avoid), "x2");
        assert_eq!(fresh_var("y", &avoid), "y");
    }
}
