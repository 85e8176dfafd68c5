//! Recursive-descent parsers for the ASCII surface syntax.
//!
//! ```text
//! term  ::= lam | app          lam ::= '\' ident '.' term
//! app   ::= atom+              atom ::= ident | '(' term ')'
//!
//! type  ::= inter ('->' type)?
//! inter ::= prim ('&' prim)*   prim ::= ident | '(' type ')'
//! ```

use thiserror::Error;

use super::{Term, Type};
use crate::theory::TheorySpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("unknown atom `{atom}` at byte {offset}")]
    UnknownAtom { atom: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Backslash,
    Dot,
    LParen,
    RParen,
    Amp,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Backslash => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'\\' => {
                out.push((Tok::Backslash, i));
                i += 1;
            }
            b'.' => {
                out.push((Tok::Dot, i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            b'&' => {
                out.push((Tok::Amp, i));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((Tok::Arrow, i));
                i += 2;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                let found = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: i,
                    expected: "a token".into(),
                    found: format!("`{found}`"),
                });
            }
        }
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<(String, usize), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let off = self.offset();
                self.bump();
                Ok((s, off))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Backslash {
            self.bump();
            let (x, _) = self.ident("a binder name")?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.term()?;
            return Ok(Term::lam(x, body));
        }
        let mut t = self.term_atom()?;
        loop {
            match self.peek() {
                Tok::Ident(_) | Tok::LParen => {
                    let arg = self.term_atom()?;
                    t = Term::app(t, arg);
                }
                // `x \y. M` is outside the grammar; arguments that are
                // abstractions must be parenthesised.
                _ => return Ok(t),
            }
        }
    }

    fn term_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Ident(_) => {
                let (x, _) = self.ident("a variable")?;
                Ok(Term::Var(x))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error("a variable, `(` or `\\`")),
        }
    }

    fn ty(&mut self, atoms: &mut Vec<(String, usize)>) -> Result<Type, ParseError> {
        let lhs = self.inter(atoms)?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.ty(atoms)?;
            Ok(Type::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn inter(&mut self, atoms: &mut Vec<(String, usize)>) -> Result<Type, ParseError> {
        let mut t = self.prim(atoms)?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let r = self.prim(atoms)?;
            t = Type::inter(t, r);
        }
        Ok(t)
    }

    fn prim(&mut self, atoms: &mut Vec<(String, usize)>) -> Result<Type, ParseError> {
        match self.peek() {
            Tok::Ident(_) => {
                let (a, off) = self.ident("an atom")?;
                atoms.push((a.clone(), off));
                Ok(Type::Atom(a))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty(atoms)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error("an atom or `(`")),
        }
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a type without checking its atoms against any theory.
pub fn parse_type_unchecked(src: &str) -> Result<Type, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.ty(&mut Vec::new())?;
    p.finish()?;
    Ok(t)
}

/// Parses a type and rejects atoms that are not constants of `spec`.
pub fn parse_type(src: &str, spec: &TheorySpec) -> Result<Type, ParseError> {
    let mut p = Parser::new(src)?;
    let mut atoms = Vec::new();
    let t = p.ty(&mut atoms)?;
    p.finish()?;
    if let Some((atom, offset)) = atoms.into_iter().find(|(a, _)| !spec.admits_atom(a)) {
        return Err(ParseError::UnknownAtom { atom, offset });
    }
    Ok(t)
}
