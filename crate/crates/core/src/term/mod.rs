//! Terms of the free PROP over a signature.
//!
//! ```text
//! term := term ";" term | term "*" term | "(" term ")" | atom
//! atom := NAME | "id" NAT | "sym" NAT NAT
//! ```
//!
//! `;` is sequential composition in diagrammatic order and binds looser
//! than the parallel composition `*`. Both associate to the left.

mod decompose;
mod eval;
mod parse;

pub use decompose::{decompose, is_layered_normal_form, perm_to_term};
pub use parse::parse;

use std::fmt;

use thiserror::Error;

use crate::signature::{Signature, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(String),
    Id(usize),
    Sym(usize, usize),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("cannot compose `{left}` of codomain {cod} with `{right}` of domain {dom}")]
    Mismatch {
        left: String,
        right: String,
        cod: usize,
        dom: usize,
    },
}

impl Term {
    pub fn gen(name: &str) -> Term {
        Term::Gen(name.to_string())
    }

    pub fn seq(self, other: Term) -> Term {
        Term::Seq(Box::new(self), Box::new(other))
    }

    pub fn par(self, other: Term) -> Term {
        Term::Par(Box::new(self), Box::new(other))
    }

    /// Left-nested sequential composite of `terms`, or `None` if empty.
    pub fn seq_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::seq)
    }

    /// Left-nested parallel composite of `terms`, or `None` if empty.
    pub fn par_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::par)
    }

    /// Number of generator occurrences.
    pub fn generator_count(&self) -> usize {
        match self {
            Term::Gen(_) => 1,
            Term::Id(_) | Term::Sym(..) => 0,
            Term::Seq(a, b) | Term::Par(a, b) => a.generator_count() + b.generator_count(),
        }
    }

    /// The type `dom -> cod` of the term.
    pub fn typecheck(&self, sig: &Signature) -> Result<(usize, usize), TermError> {
        match self {
            Term::Gen(name) => {
                let op = sig.op(sig.lookup(name)?);
                Ok((op.arity, op.coarity))
            }
            Term::Id(n) => Ok((*n, *n)),
            Term::Sym(a, b) => Ok((a + b, a + b)),
            Term::Par(a, b) => {
                let ((a0, a1), (b0, b1)) = (a.typecheck(sig)?, b.typecheck(sig)?);
                Ok((a0 + b0, a1 + b1))
            }
            Term::Seq(a, b) => {
                let ((a0, a1), (b0, b1)) = (a.typecheck(sig)?, b.typecheck(sig)?);
                if a1 != b0 {
                    return Err(TermError::Mismatch {
                        left: a.to_string(),
                        right: b.to_string(),
                        cod: a1,
                        dom: b0,
                    });
                }
                Ok((a0, b1))
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Seq(..) => 0,
            Term::Par(..) => 1,
            _ => 2,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Term::Gen(name) => f.write_str(name)?,
            Term::Id(n) => write!(f, "id {n}")?,
            Term::Sym(a, b) => write!(f, "sym {a} {b}")?,
            Term::Seq(a, b) => {
                a.write_at(f, 0)?;
                f.write_str(" ; ")?;
                b.write_at(f, 1)?;
            }
            Term::Par(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" * ")?;
                b.write_at(f, 2)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
