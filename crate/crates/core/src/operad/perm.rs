use std::fmt;

use serde::Serialize;

use super::{Operad, TabulatedOp};
use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// The projection `π_index` of arity `arity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PermElement {
    arity: usize,
    index: usize,
}

impl PermElement {
    pub fn new(arity: usize, index: usize) -> Result<Self> {
        if index == 0 || index > arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        Ok(Self { arity, index })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// The projection as a function on `{0..carrier}`.
    pub fn tabulate(&self, carrier: usize) -> Result<TabulatedOp> {
        TabulatedOp::from_fn(carrier, self.arity, |a| a[self.index - 1])
    }

    /// Evaluates the projection on a tuple.
    pub fn apply<T: Clone>(&self, args: &[T]) -> T {
        args[self.index - 1].clone()
    }
}

impl fmt::Display for PermElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "π{}/{}", self.index, self.arity)
    }
}

/// `π_i ∘_k π_j`: index `i` if `i < k`, `k + j - 1` if `i = k`, `i + n - 1` if `i > k`.
pub fn perm_compose(w1: &PermElement, k: usize, w2: &PermElement) -> Result<PermElement> {
    if k == 0 || k > w1.arity {
        return Err(Error::PositionOutOfRange {
            position: k,
            arity: w1.arity,
        });
    }
    let (i, j, n) = (w1.index, w2.index, w2.arity);
    let index = match i.cmp(&k) {
        std::cmp::Ordering::Less => i,
        std::cmp::Ordering::Equal => k + j - 1,
        std::cmp::Ordering::Greater => i + n - 1,
    };
    PermElement::new(w1.arity + n - 1, index)
}

/// Deliberate corruptions of [`perm_compose`] used as negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PermFault {
    #[default]
    None,
    /// Uses `i + n` instead of `i + n - 1` for indices past the slot,
    /// wrapping back into range.
    ShiftOffByOne,
}

/// The operad of projections: `Perm(0)` is empty and `Perm(n) = {π₁, …, πₙ}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PermOperad {
    pub fault: PermFault,
}

impl PermOperad {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fault(fault: PermFault) -> Self {
        Self { fault }
    }
}

impl Operad for PermOperad {
    type Element = PermElement;

    fn name(&self) -> String {
        match self.fault {
            PermFault::None => "Perm".into(),
            PermFault::ShiftOffByOne => "Perm (faulty shift)".into(),
        }
    }

    fn arity(&self, e: &PermElement) -> usize {
        e.arity
    }

    fn compose_at(&self, w1: &PermElement, i: usize, w2: &PermElement) -> Result<PermElement> {
        let r = perm_compose(w1, i, w2)?;
        match self.fault {
            PermFault::None => Ok(r),
            PermFault::ShiftOffByOne if w1.index > i => {
                PermElement::new(r.arity, r.index % r.arity + 1)
            }
            PermFault::ShiftOffByOne => Ok(r),
        }
    }

    fn act(&self, sigma: &Permutation, w: &PermElement) -> Result<PermElement> {
        if sigma.len() != w.arity {
            return Err(Error::ArityMismatch {
                expected: w.arity,
                got: sigma.len(),
            });
        }
        PermElement::new(w.arity, sigma.apply(w.index))
    }

    fn unit(&self) -> PermElement {
        PermElement { arity: 1, index: 1 }
    }

    fn enumerate(&self, arity: usize, _size_bound: usize) -> Vec<PermElement> {
        (1..=arity).map(|index| PermElement { arity, index }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::check_operad_axioms;

    fn pi(n: usize, i: usize) -> PermElement {
        PermElement::new(n, i).unwrap()
    }

    /// Tabulated composition of projection functions on `[m+n-1]`.
    fn composed_index(m: usize, i: usize, k: usize, n: usize, j: usize) -> usize {
        let total = m + n - 1;
        let args: Vec<usize> = (1..=total).collect();
        let inner = args[k - 1 + j - 1];
        let outer: Vec<usize> = args[..k - 1]
            .iter()
            .copied()
            .chain([inner])
            .chain(args[k - 1 + n..].iter().copied())
            .collect();
        outer[i - 1]
    }

    #[test]
    fn displayed_relations() {
        let p = pi(2, 1);
        assert_eq!(perm_compose(&p, 1, &p).unwrap(), pi(3, 1));
        assert_eq!(perm_compose(&p, 2, &p).unwrap(), pi(3, 1));
        assert_eq!(perm_compose(&p, 2, &pi(2, 2)).unwrap(), pi(3, 1));
        assert_eq!(perm_compose(&pi(2, 2), 1, &p).unwrap(), pi(3, 3));
    }

    #[test]
    fn agrees_with_function_composition() {
        for m in 1..=4 {
            for n in 1..=4 {
                for i in 1..=m {
                    for j in 1..=n {
                        for k in 1..=m {
                            let got = perm_compose(&pi(m, i), k, &pi(n, j)).unwrap();
                            assert_eq!(got.index(), composed_index(m, i, k, n, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn components() {
        let p = PermOperad::new();
        assert!(p.enumerate(0, 0).is_empty());
        for n in 1..=6 {
            assert_eq!(p.enumerate(n, 0).len(), n);
        }
    }

    #[test]
    fn action_transitive_and_faithful() {
        let p = PermOperad::new();
        for n in 1..=4 {
            let perms = Permutation::all(n);
            let orbit: std::collections::BTreeSet<_> =
                perms.iter().map(|s| p.act(s, &pi(n, 1)).unwrap()).collect();
            assert_eq!(orbit.len(), n);
            for s in perms.iter().filter(|s| !s.is_identity()) {
                assert!(p.enumerate(n, 0).iter().any(|w| p.act(s, w).unwrap() != *w));
            }
        }
    }

    #[test]
    fn axioms_pass() {
        assert!(check_operad_axioms(&PermOperad::new(), 4, 0).pass());
    }

    #[test]
    fn fault_is_caught() {
        let r = check_operad_axioms(&PermOperad::with_fault(PermFault::ShiftOffByOne), 3, 0);
        assert!(!r.pass());
        assert!(r.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            perm_compose(&pi(2, 1), 3, &pi(1, 1)),
            Err(Error::PositionOutOfRange { position: 3, arity: 2 })
        ));
        assert!(PermElement::new(0, 1).is_err());
    }
}
