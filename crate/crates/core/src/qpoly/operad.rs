use std::fmt;
use std::sync::Arc;

use super::poly::{add_term, Polynomial, Terms};
use crate::error::{Error, Result};
use crate::operad::Operad;
use crate::permutation::Permutation;
use crate::scalars::FiniteField;

/// `Some(e)` when `a = q^e`.
pub fn q_power_level(a: u64, q: u64) -> Option<u32> {
    let (mut a, mut e) = (a, 0);
    if a == 0 {
        return None;
    }
    while a % q == 0 {
        a /= q;
        e += 1;
    }
    (a == 1).then_some(e)
}

/// A polynomial of arity `n ≥ 1` in which every variable occurs in every
/// monomial with an exponent that is a power of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolynomial {
    poly: Polynomial,
}

impl QPolynomial {
    pub fn new(poly: Polynomial) -> Result<Self> {
        if poly.nvars() == 0 {
            return Err(Error::NotQPolynomial("arity 0 has no q-polynomials".into()));
        }
        let q = poly.field().q();
        for (exps, _) in poly.terms() {
            if let Some(&bad) = exps.iter().find(|&&a| q_power_level(a, q).is_none()) {
                return Err(Error::NotQPolynomial(format!("exponent {bad} in {poly} is not a power of {q}")));
            }
        }
        Ok(Self { poly })
    }

    /// `X1^(q^e1) ⋯ Xn^(q^en)` with coefficient one.
    pub fn monomial(field: Arc<FiniteField>, levels: &[u32]) -> Result<Self> {
        let q = field.q();
        Self::new(Polynomial::monomial(field, levels.iter().map(|&e| q.pow(e)).collect(), 1))
    }

    /// The operadic unit `X1`.
    pub fn identity(field: Arc<FiniteField>) -> Self {
        Self { poly: Polynomial::monomial(field, vec![1], 1) }
    }

    pub fn parse(s: &str, field: Arc<FiniteField>, arity: usize) -> Result<Self> {
        Self::new(Polynomial::parse(s, field, arity)?)
    }

    pub fn arity(&self) -> usize {
        self.poly.nvars()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.poly.field()
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { poly: self.poly.add(&other.poly)? })
    }

    pub fn scale(&self, c: u64) -> Self {
        Self { poly: self.poly.scale(c) }
    }

    /// `self ∘_i g`: substitutes `g` for `X_i`. `X_i^(q^e)` becomes
    /// `g^(q^e) = Σ c^(q^e) M^(q^e)` since Frobenius is a ring map.
    pub fn compose(&self, i: usize, g: &Self) -> Result<Self> {
        if **self.field() != **g.field() {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field().descriptor(),
                g.field().descriptor()
            )));
        }
        let (m, n) = (self.arity(), g.arity());
        if i == 0 || i > m {
            return Err(Error::PositionOutOfRange { position: i, arity: m });
        }
        let field = self.field().clone();
        let q = field.q();
        let mut terms = Terms::new();
        for (a, c) in self.poly.terms() {
            let power = a[i - 1];
            let e = q_power_level(power, q).expect("q-power invariant");
            for (b, d) in g.poly.terms() {
                let mut exps = Vec::with_capacity(m + n - 1);
                exps.extend_from_slice(&a[..i - 1]);
                exps.extend(b.iter().map(|&x| x * power));
                exps.extend_from_slice(&a[i..]);
                add_term(&mut terms, &field, exps, field.mul(c, field.frobenius_pow(d, e)));
            }
        }
        Ok(Self { poly: Polynomial::from_terms(field, m + n - 1, terms) })
    }

    /// `σ·f`: relabels `X_j` as `X_{σ(j)}`.
    pub fn act(&self, sigma: &Permutation) -> Result<Self> {
        let n = self.arity();
        if sigma.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: sigma.len() });
        }
        let field = self.field().clone();
        let mut terms = Terms::new();
        for (a, c) in self.poly.terms() {
            let mut b = vec![0; n];
            for j in 0..n {
                b[sigma.apply(j + 1) - 1] = a[j];
            }
            add_term(&mut terms, &field, b, c);
        }
        Ok(Self { poly: Polynomial::from_terms(field, n, terms) })
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// `f ∘_i g` in the q-polynomial operad.
pub fn qpoly_compose(f: &QPolynomial, i: usize, g: &QPolynomial) -> Result<QPolynomial> {
    f.compose(i, g)
}

/// The q-polynomial operad over a fixed field; arity 0 is empty.
#[derive(Clone, Debug)]
pub struct QPolyOperad {
    field: Arc<FiniteField>,
}

impl QPolyOperad {
    pub fn new(field: Arc<FiniteField>) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }
}

/// Exponent-level vectors in `0..=max_level`, lexicographic.
pub(crate) fn level_vectors(n: usize, max_level: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max_level).map(move |e| {
                    let mut v = v.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

impl Operad for QPolyOperad {
    type Element = QPolynomial;

    fn name(&self) -> String {
        format!("q-polynomials over F_{}", self.field.q())
    }

    fn arity(&self, e: &QPolynomial) -> usize {
        e.arity()
    }

    fn compose_at(&self, w1: &QPolynomial, i: usize, w2: &QPolynomial) -> Result<QPolynomial> {
        w1.compose(i, w2)
    }

    fn act(&self, sigma: &Permutation, w: &QPolynomial) -> Result<QPolynomial> {
        w.act(sigma)
    }

    fn unit(&self) -> QPolynomial {
        QPolynomial::identity(self.field.clone())
    }

    /// Zero, the monomials with exponent levels at most `size_bound`, the
    /// same monomials scaled by the field generator (when it is not 1), and
    /// sums of consecutive monomials.
    fn enumerate(&self, arity: usize, size_bound: usize) -> Vec<QPolynomial> {
        if arity == 0 {
            return Vec::new();
        }
        let monos: Vec<QPolynomial> = level_vectors(arity, size_bound as u32)
            .iter()
            .map(|l| QPolynomial::monomial(self.field.clone(), l).expect("q-power monomial"))
            .collect();
        let mut out = vec![QPolynomial { poly: Polynomial::zero(self.field.clone(), arity) }];
        out.extend(monos.iter().cloned());
        let g = self.field.generator();
        if g > 1 {
            out.extend(monos.iter().map(|m| m.scale(g)));
        }
        out.extend(monos.windows(2).map(|w| w[0].add(&w[1]).expect("same arity")));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::check_operad_axioms;
    use crate::scalars::FieldDescriptor;

    fn field(p: u64, k: usize) -> Arc<FiniteField> {
        FiniteField::new(FieldDescriptor::builtin(p, k).unwrap())
    }

    #[test]
    fn levels() {
        assert_eq!(q_power_level(1, 4), Some(0));
        assert_eq!(q_power_level(16, 4), Some(2));
        assert_eq!(q_power_level(2, 4), None);
        assert_eq!(q_power_level(0, 2), None);
    }

    #[test]
    fn composition_examples() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let f = field(p, k);
            let q = f.q();
            let x1x2 = QPolynomial::parse("X1*X2", f.clone(), 2).unwrap();
            let frob = QPolynomial::parse(&format!("X1^{q}"), f.clone(), 1).unwrap();
            assert_eq!(x1x2.compose(1, &frob).unwrap().to_string(), format!("X1^{q}*X2"));
            assert_eq!(frob.compose(1, &x1x2).unwrap().to_string(), format!("X1^{q}*X2^{q}"));
        }
    }

    #[test]
    fn rejects_missing_variable() {
        let f = field(2, 1);
        assert!(matches!(QPolynomial::parse("X1 + X2", f.clone(), 2), Err(Error::NotQPolynomial(_))));
        assert!(matches!(QPolynomial::parse("X1^3", f, 1), Err(Error::NotQPolynomial(_))));
    }

    #[test]
    fn coefficients_pass_through_frobenius() {
        let f = field(2, 2);
        let g = f.generator();
        let frob = QPolynomial::parse("X1^4", f.clone(), 1).unwrap();
        let gx = QPolynomial::parse("g*X1", f.clone(), 1).unwrap();
        // (g X1)^4 = g^4 X1^4 = g X1^4
        assert_eq!(frob.compose(1, &gx).unwrap(), QPolynomial::monomial(f, &[1]).unwrap().scale(g));
    }

    #[test]
    fn field_mismatch() {
        let a = QPolynomial::identity(field(2, 1));
        let b = QPolynomial::identity(field(3, 1));
        assert!(matches!(a.compose(1, &b), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn axioms_pass() {
        for (p, k) in [(2, 1), (2, 2), (3, 1)] {
            let r = check_operad_axioms(&QPolyOperad::new(field(p, k)), 3, 1);
            assert!(r.pass(), "{r:?}");
        }
    }
}
