use std::fmt;

use serde::Serialize;

use super::Operad;
use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// A function `X^n -> X` on `X = {0, …, carrier-1}`, tabulated over tuples
/// in lexicographic order (leftmost coordinate most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TabulatedOp {
    carrier: usize,
    arity: usize,
    table: Vec<usize>,
}

/// Index of a tuple in lexicographic order.
pub(crate) fn encode_tuple(carrier: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * carrier + a)
}

/// Inverse of [`encode_tuple`].
pub(crate) fn decode_tuple(carrier: usize, arity: usize, mut code: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = code % carrier;
        code /= carrier;
    }
    out
}

impl TabulatedOp {
    pub fn new(carrier: usize, arity: usize, table: Vec<usize>) -> Result<Self> {
        let expected = carrier.checked_pow(arity as u32).ok_or_else(|| {
            Error::BoundExceeded(format!("{carrier}^{arity} tuples"))
        })?;
        if table.len() != expected {
            return Err(Error::ShapeMismatch(format!("table has {} entries, expected {expected}", table.len())));
        }
        if let Some(v) = table.iter().find(|&&v| v >= carrier) {
            return Err(Error::IndexOutOfRange { index: *v, arity: carrier });
        }
        Ok(Self { carrier, arity, table })
    }

    /// Tabulates `f` on every tuple.
    pub fn from_fn(carrier: usize, arity: usize, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let count = carrier.pow(arity as u32);
        let table = (0..count).map(|c| f(&decode_tuple(carrier, arity, c))).collect();
        Self::new(carrier, arity, table)
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn eval(&self, args: &[usize]) -> usize {
        self.table[encode_tuple(self.carrier, args)]
    }
}

impl fmt::Display for TabulatedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.table)
    }
}

/// The endomorphism operad of a finite set: all functions `X^n -> X`.
#[derive(Clone, Copy, Debug)]
pub struct TabulatedOperad {
    pub carrier: usize,
}

impl Operad for TabulatedOperad {
    type Element = TabulatedOp;

    fn name(&self) -> String {
        format!("End({})", self.carrier)
    }

    fn arity(&self, e: &TabulatedOp) -> usize {
        e.arity
    }

    fn compose_at(&self, w1: &TabulatedOp, i: usize, w2: &TabulatedOp) -> Result<TabulatedOp> {
        if w1.carrier != self.carrier || w2.carrier != self.carrier {
            return Err(Error::OperadMismatch("operations on different sets".into()));
        }
        if i == 0 || i > w1.arity {
            return Err(Error::PositionOutOfRange { position: i, arity: w1.arity });
        }
        let n = w2.arity;
        TabulatedOp::from_fn(self.carrier, w1.arity + n - 1, |a| {
            let inner = w2.eval(&a[i - 1..i - 1 + n]);
            let mut outer = a[..i - 1].to_vec();
            outer.push(inner);
            outer.extend_from_slice(&a[i - 1 + n..]);
            w1.eval(&outer)
        })
    }

    fn act(&self, sigma: &Permutation, w: &TabulatedOp) -> Result<TabulatedOp> {
        if sigma.len() != w.arity {
            return Err(Error::ArityMismatch { expected: w.arity, got: sigma.len() });
        }
        TabulatedOp::from_fn(self.carrier, w.arity, |a| {
            let permuted: Vec<usize> = (1..=w.arity).map(|k| a[sigma.apply(k) - 1]).collect();
            w.eval(&permuted)
        })
    }

    fn unit(&self) -> TabulatedOp {
        TabulatedOp::from_fn(self.carrier, 1, |a| a[0]).expect("identity table")
    }

    /// The first `size_bound` functions in lexicographic order of tables.
    fn enumerate(&self, arity: usize, size_bound: usize) -> Vec<TabulatedOp> {
        let x = self.carrier;
        let Some(len) = x.checked_pow(arity as u32) else {
            return Vec::new();
        };
        if x == 0 {
            return if len == 0 { vec![TabulatedOp { carrier: 0, arity, table: vec![] }] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut table = vec![0; len];
        while out.len() < size_bound {
            out.push(TabulatedOp { carrier: x, arity, table: table.clone() });
            let Some(pos) = (0..len).rev().find(|&p| table[p] + 1 < x) else {
                break;
            };
            table[pos] += 1;
            for t in &mut table[pos + 1..] {
                *t = 0;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::check_operad_axioms;

    #[test]
    fn tuple_round_trip() {
        for c in 0..27 {
            assert_eq!(encode_tuple(3, &decode_tuple(3, 3, c)), c);
        }
    }

    #[test]
    fn enumerate_counts() {
        let t = TabulatedOperad { carrier: 2 };
        assert_eq!(t.enumerate(0, 100).len(), 2);
        assert_eq!(t.enumerate(2, 100).len(), 16);
        assert_eq!(t.enumerate(2, 5).len(), 5);
    }

    #[test]
    fn axioms_pass_on_two_element_set() {
        assert!(check_operad_axioms(&TabulatedOperad { carrier: 2 }, 2, 16).pass());
    }

    #[test]
    fn action_convention() {
        let t = TabulatedOperad { carrier: 3 };
        let first = TabulatedOp::from_fn(3, 2, |a| a[0]).unwrap();
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(t.act(&swap, &first).unwrap(), TabulatedOp::from_fn(3, 2, |a| a[1]).unwrap());
    }
}
