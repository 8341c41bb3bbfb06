use std::fmt;

use super::{Operad, PermElement, PermOperad, TabulatedOp, TabulatedOperad, TrivialElement, TrivialOperad};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::qpoly::{QPolyOperad, QPolynomial};
use crate::word::{ReducedWord, WordOperad};

/// An element of one of the built-in operads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperadElement {
    Perm(PermElement),
    Word(ReducedWord),
    QPoly(QPolynomial),
    Trivial(TrivialElement),
    Tabulated(TabulatedOp),
}

impl OperadElement {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Perm(_) => "perm",
            Self::Word(_) => "word",
            Self::QPoly(_) => "qpoly",
            Self::Trivial(_) => "trivial",
            Self::Tabulated(_) => "tabulated",
        }
    }
}

impl fmt::Display for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Perm(e) => e.fmt(f),
            Self::Word(e) => e.fmt(f),
            Self::QPoly(e) => e.fmt(f),
            Self::Trivial(e) => e.fmt(f),
            Self::Tabulated(e) => e.fmt(f),
        }
    }
}

/// One of the built-in operads behind a single element type.
#[derive(Clone, Debug)]
pub enum BuiltinOperad {
    Perm(PermOperad),
    Word(WordOperad),
    QPoly(QPolyOperad),
    Trivial(TrivialOperad),
    Tabulated(TabulatedOperad),
}

fn mismatch(op: &BuiltinOperad, e: &OperadElement) -> Error {
    Error::OperadMismatch(format!("{} element {e} given to {}", e.kind(), op.name()))
}

impl BuiltinOperad {
    /// Whether `e` is an element of this operad's kind.
    pub fn accepts(&self, e: &OperadElement) -> bool {
        matches!(
            (self, e),
            (Self::Perm(_), OperadElement::Perm(_))
                | (Self::Word(_), OperadElement::Word(_))
                | (Self::QPoly(_), OperadElement::QPoly(_))
                | (Self::Trivial(_), OperadElement::Trivial(_))
                | (Self::Tabulated(_), OperadElement::Tabulated(_))
        )
    }
}

impl Operad for BuiltinOperad {
    type Element = OperadElement;

    fn name(&self) -> String {
        match self {
            Self::Perm(p) => p.name(),
            Self::Word(p) => p.name(),
            Self::QPoly(p) => p.name(),
            Self::Trivial(p) => p.name(),
            Self::Tabulated(p) => p.name(),
        }
    }

    fn arity(&self, e: &OperadElement) -> usize {
        match e {
            OperadElement::Perm(v) => v.arity(),
            OperadElement::Word(v) => v.arity(),
            OperadElement::QPoly(v) => v.arity(),
            OperadElement::Trivial(_) => 1,
            OperadElement::Tabulated(v) => v.arity(),
        }
    }

    fn compose_at(&self, w1: &OperadElement, i: usize, w2: &OperadElement) -> Result<OperadElement> {
        use OperadElement as E;
        match (self, w1, w2) {
            (Self::Perm(p), E::Perm(a), E::Perm(b)) => p.compose_at(a, i, b).map(E::Perm),
            (Self::Word(p), E::Word(a), E::Word(b)) => p.compose_at(a, i, b).map(E::Word),
            (Self::QPoly(p), E::QPoly(a), E::QPoly(b)) => p.compose_at(a, i, b).map(E::QPoly),
            (Self::Trivial(p), E::Trivial(a), E::Trivial(b)) => p.compose_at(a, i, b).map(E::Trivial),
            (Self::Tabulated(p), E::Tabulated(a), E::Tabulated(b)) => p.compose_at(a, i, b).map(E::Tabulated),
            _ => Err(mismatch(self, if self.accepts(w1) { w2 } else { w1 })),
        }
    }

    fn act(&self, sigma: &Permutation, w: &OperadElement) -> Result<OperadElement> {
        use OperadElement as E;
        match (self, w) {
            (Self::Perm(p), E::Perm(a)) => p.act(sigma, a).map(E::Perm),
            (Self::Word(p), E::Word(a)) => p.act(sigma, a).map(E::Word),
            (Self::QPoly(p), E::QPoly(a)) => p.act(sigma, a).map(E::QPoly),
            (Self::Trivial(p), E::Trivial(a)) => p.act(sigma, a).map(E::Trivial),
            (Self::Tabulated(p), E::Tabulated(a)) => p.act(sigma, a).map(E::Tabulated),
            _ => Err(mismatch(self, w)),
        }
    }

    fn unit(&self) -> OperadElement {
        match self {
            Self::Perm(p) => OperadElement::Perm(p.unit()),
            Self::Word(p) => OperadElement::Word(p.unit()),
            Self::QPoly(p) => OperadElement::QPoly(p.unit()),
            Self::Trivial(p) => OperadElement::Trivial(p.unit()),
            Self::Tabulated(p) => OperadElement::Tabulated(p.unit()),
        }
    }

    fn enumerate(&self, arity: usize, size_bound: usize) -> Vec<OperadElement> {
        match self {
            Self::Perm(p) => p.enumerate(arity, size_bound).into_iter().map(OperadElement::Perm).collect(),
            Self::Word(p) => p.enumerate(arity, size_bound).into_iter().map(OperadElement::Word).collect(),
            Self::QPoly(p) => p.enumerate(arity, size_bound).into_iter().map(OperadElement::QPoly).collect(),
            Self::Trivial(p) => p.enumerate(arity, size_bound).into_iter().map(OperadElement::Trivial).collect(),
            Self::Tabulated(p) => p.enumerate(arity, size_bound).into_iter().map(OperadElement::Tabulated).collect(),
        }
    }
}
