use std::fmt;

use super::Operad;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::scalars::{Domain, Scalar};

/// A scalar in arity one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialElement(pub Scalar);

impl fmt::Display for TrivialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The operad concentrated in arity one whose single component is the
/// multiplicative monoid of a ring; `r ∘₁ s = r·s`.
#[derive(Clone, Debug)]
pub struct TrivialOperad {
    domain: Domain,
}

impl TrivialOperad {
    pub fn new(domain: Domain) -> Self {
        Self { domain }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }
}

impl Operad for TrivialOperad {
    type Element = TrivialElement;

    fn name(&self) -> String {
        format!("trivial over {}", self.domain)
    }

    fn arity(&self, _e: &TrivialElement) -> usize {
        1
    }

    fn compose_at(&self, w1: &TrivialElement, i: usize, w2: &TrivialElement) -> Result<TrivialElement> {
        if i != 1 {
            return Err(Error::PositionOutOfRange { position: i, arity: 1 });
        }
        Ok(TrivialElement(w1.0.checked_mul(&w2.0)?))
    }

    fn act(&self, sigma: &Permutation, w: &TrivialElement) -> Result<TrivialElement> {
        if sigma.len() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: sigma.len(),
            });
        }
        Ok(w.clone())
    }

    fn unit(&self) -> TrivialElement {
        TrivialElement(self.domain.one())
    }

    /// All ring elements in arity one when the ring is finite; over `Q`,
    /// the integers `-b..=b` with `b = size_bound`.
    fn enumerate(&self, arity: usize, size_bound: usize) -> Vec<TrivialElement> {
        if arity != 1 {
            return Vec::new();
        }
        match self.domain.elements() {
            Some(all) => all.into_iter().map(TrivialElement).collect(),
            None => {
                let b = size_bound as i64;
                (-b..=b).map(|v| TrivialElement(self.domain.from_i64(v))).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::check_operad_axioms;

    #[test]
    fn composition_is_product() {
        let d = Domain::zmod(6).unwrap();
        let t = TrivialOperad::new(d.clone());
        let r = t
            .compose_at(&TrivialElement(d.from_i64(2)), 1, &TrivialElement(d.from_i64(5)))
            .unwrap();
        assert_eq!(r.0, d.from_i64(4));
    }

    #[test]
    fn axioms_pass() {
        for spec in ["zmod:4", "2^2", "Q"] {
            let t = TrivialOperad::new(Domain::parse_spec(spec).unwrap());
            assert!(check_operad_axioms(&t, 3, 3).pass(), "{spec}");
        }
    }
}
