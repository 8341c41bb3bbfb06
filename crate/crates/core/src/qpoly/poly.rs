use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::FiniteField;

/// Exponent vector to nonzero coefficient (integer encoding in the field).
pub(crate) type Terms = BTreeMap<Vec<u64>, u64>;

pub(crate) fn add_term(terms: &mut Terms, field: &FiniteField, exps: Vec<u64>, c: u64) {
    if c == 0 {
        return;
    }
    match terms.get_mut(&exps) {
        Some(cur) => {
            *cur = field.add(*cur, c);
            if *cur == 0 {
                terms.remove(&exps);
            }
        }
        None => {
            terms.insert(exps, c);
        }
    }
}

fn mul_terms(field: &FiniteField, a: &Terms, b: &Terms, cap: Option<u64>) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        let da: u64 = ea.iter().sum();
        for (eb, cb) in b {
            if let Some(cap) = cap {
                if da + eb.iter().sum::<u64>() > cap {
                    continue;
                }
            }
            let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut out, field, exps, field.mul(*ca, *cb));
        }
    }
    out
}

fn add_all(field: &FiniteField, a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        add_term(&mut out, field, e.clone(), *c);
    }
    out
}

fn scale_terms(field: &FiniteField, a: &Terms, c: u64) -> Terms {
    let mut out = Terms::new();
    for (e, x) in a {
        add_term(&mut out, field, e.clone(), field.mul(*x, c));
    }
    out
}

fn pow_terms(field: &FiniteField, a: &Terms, nvars: usize, mut e: u64, cap: Option<u64>) -> Terms {
    let mut result = Terms::from([(vec![0; nvars], 1u64)]);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul_terms(field, &result, &base, cap);
        }
        e >>= 1;
        if e > 0 {
            base = mul_terms(field, &base, &base, cap);
        }
    }
    result
}

/// Writes terms in descending lexicographic order of exponents, e.g.
/// `X1^2*X2 + (g+1)*X1*X2^4`.
pub(crate) fn format_terms(f: &mut fmt::Formatter<'_>, field: &FiniteField, terms: &Terms, var: &str) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (exps, &c)) in terms.iter().rev().enumerate() {
        if k > 0 {
            write!(f, " + ")?;
        }
        let mut factors = Vec::new();
        let coeff = field.format(c);
        let constant = exps.iter().all(|&e| e == 0);
        if c != 1 || constant {
            factors.push(if coeff.contains('+') && !constant { format!("({coeff})") } else { coeff });
        }
        for (j, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("{var}{}", j + 1)),
                _ => factors.push(format!("{var}{}^{e}", j + 1)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub(crate) fn parse_terms(s: &str, field: &FiniteField, nvars: usize, var: char) -> Result<Terms> {
    let s = s.trim();
    let mut terms = Terms::new();
    if s == "0" {
        return Ok(terms);
    }
    for term in split_top(s, '+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let mut exps = vec![0u64; nvars];
        let mut coeff = 1u64;
        for factor in split_top(term, '*') {
            let factor = factor.trim();
            if let Some(rest) = factor.strip_prefix(var) {
                let (idx, e) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u64>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::IndexOutOfRange { index: idx, arity: nvars });
                }
                exps[idx - 1] += e;
            } else {
                let inner = factor.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(factor);
                coeff = field.mul(coeff, field.parse(inner)?);
            }
        }
        add_term(&mut terms, field, exps, coeff);
    }
    Ok(terms)
}

/// A polynomial over `F_q` in `X1, …, Xn` with arbitrary exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Arc<FiniteField>,
    nvars: usize,
    terms: Terms,
}

impl Polynomial {
    pub fn zero(field: Arc<FiniteField>, nvars: usize) -> Self {
        Self { field, nvars, terms: Terms::new() }
    }

    /// `c · X^exps`.
    pub fn monomial(field: Arc<FiniteField>, exps: Vec<u64>, c: u64) -> Self {
        let nvars = exps.len();
        let mut terms = Terms::new();
        add_term(&mut terms, &field, exps, c % field.q());
        Self { field, nvars, terms }
    }

    pub fn variable(field: Arc<FiniteField>, nvars: usize, i: usize) -> Result<Self> {
        if i == 0 || i > nvars {
            return Err(Error::IndexOutOfRange { index: i, arity: nvars });
        }
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        Ok(Self::monomial(field, exps, 1))
    }

    pub(crate) fn from_terms(field: Arc<FiniteField>, nvars: usize, terms: Terms) -> Self {
        Self { field, nvars, terms }
    }

    pub fn parse(s: &str, field: Arc<FiniteField>, nvars: usize) -> Result<Self> {
        let terms = parse_terms(s, &field, nvars, 'X')?;
        Ok(Self { field, nvars, terms })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Nonzero terms as (exponents, coefficient encoding), ascending.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field.descriptor(), other.field.descriptor())));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { terms: add_all(&self.field, &self.terms, &other.terms), ..self.clone() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { terms: mul_terms(&self.field, &self.terms, &other.terms, None), ..self.clone() })
    }

    pub fn scale(&self, c: u64) -> Self {
        Self { terms: scale_terms(&self.field, &self.terms, c), ..self.clone() }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { terms: pow_terms(&self.field, &self.terms, self.nvars, e, None), ..self.clone() }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.field, &self.terms, "X")
    }
}

/// An element of `Sym(V_m)` modulo monomials of total degree above `cap`,
/// where `V_m` has basis `e1, …, em`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSymElement {
    field: Arc<FiniteField>,
    nvars: usize,
    cap: u64,
    terms: Terms,
}

impl TruncatedSymElement {
    pub fn zero(field: Arc<FiniteField>, nvars: usize, cap: u64) -> Self {
        Self { field, nvars, cap, terms: Terms::new() }
    }

    pub fn one(field: Arc<FiniteField>, nvars: usize, cap: u64) -> Self {
        let mut z = Self::zero(field, nvars, cap);
        add_term(&mut z.terms, &z.field.clone(), vec![0; nvars], 1);
        z
    }

    /// The basis vector `e_i`, one-based.
    pub fn basis(field: Arc<FiniteField>, nvars: usize, cap: u64, i: usize) -> Result<Self> {
        if i == 0 || i > nvars {
            return Err(Error::IndexOutOfRange { index: i, arity: nvars });
        }
        let mut z = Self::zero(field, nvars, cap);
        if cap >= 1 {
            let mut exps = vec![0; nvars];
            exps[i - 1] = 1;
            z.terms.insert(exps, 1);
        }
        Ok(z)
    }

    pub fn parse(s: &str, field: Arc<FiniteField>, nvars: usize, cap: u64) -> Result<Self> {
        let terms = parse_terms(s, &field, nvars, 'e')?
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u64>() <= cap)
            .collect();
        Ok(Self { field, nvars, cap, terms })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field.descriptor(), other.field.descriptor())));
        }
        if self.nvars != other.nvars || self.cap != other.cap {
            return Err(Error::TruncationMismatch(format!(
                "Sym<={}(V_{}) vs Sym<={}(V_{})",
                self.cap, self.nvars, other.cap, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { terms: add_all(&self.field, &self.terms, &other.terms), ..self.clone() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { terms: mul_terms(&self.field, &self.terms, &other.terms, Some(self.cap)), ..self.clone() })
    }

    pub fn scale(&self, c: u64) -> Self {
        Self { terms: scale_terms(&self.field, &self.terms, c), ..self.clone() }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { terms: pow_terms(&self.field, &self.terms, self.nvars, e, Some(self.cap)), ..self.clone() }
    }
}

impl fmt::Display for TruncatedSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.field, &self.terms, "e")
    }
}

/// Substitutes `args[j]` for `X_{j+1}` and expands in the truncated ring.
pub fn eval_poly(f: &Polynomial, args: &[TruncatedSymElement]) -> Result<TruncatedSymElement> {
    if args.len() != f.nvars {
        return Err(Error::ArityMismatch { expected: f.nvars, got: args.len() });
    }
    let Some(first) = args.first() else {
        // A constant evaluated with no arguments has no ambient ring to live in.
        return Err(Error::TruncationMismatch("no arguments to fix the truncated ring".into()));
    };
    for a in args {
        first.check(a)?;
    }
    if *first.field != *f.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", f.field.descriptor(), first.field.descriptor())));
    }
    let one = TruncatedSymElement::one(first.field.clone(), first.nvars, first.cap);
    let mut powers: Vec<BTreeMap<u64, TruncatedSymElement>> = vec![BTreeMap::new(); args.len()];
    let mut total = TruncatedSymElement::zero(first.field.clone(), first.nvars, first.cap);
    for (exps, c) in f.terms() {
        let mut prod = one.scale(c);
        for (j, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = powers[j].entry(e).or_insert_with(|| args[j].pow(e));
            prod = prod.mul(p)?;
        }
        total = total.add(&prod)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    fn field(p: u64, k: usize) -> Arc<FiniteField> {
        FiniteField::new(FieldDescriptor::builtin(p, k).unwrap())
    }

    #[test]
    fn print_parse_round_trip() {
        let f = field(2, 2);
        let g = f.generator();
        let a = Polynomial::monomial(f.clone(), vec![2, 1], 1)
            .add(&Polynomial::monomial(f.clone(), vec![1, 4], g))
            .unwrap()
            .add(&Polynomial::monomial(f.clone(), vec![1, 1], f.add(g, 1)))
            .unwrap();
        let s = a.to_string();
        assert_eq!(s, "X1^2*X2 + g*X1*X2^4 + (g+1)*X1*X2");
        assert_eq!(Polynomial::parse(&s, f.clone(), 2).unwrap(), a);
        assert_eq!(Polynomial::zero(f, 2).to_string(), "0");
    }

    #[test]
    fn eval_examples() {
        let f2 = field(2, 1);
        let e = |i| TruncatedSymElement::basis(f2.clone(), 2, 2, i).unwrap();
        let x1 = Polynomial::variable(f2.clone(), 1, 1).unwrap();
        assert_eq!(eval_poly(&x1, &[e(1)]).unwrap(), e(1));
        let x1x2 = Polynomial::monomial(f2.clone(), vec![1, 1], 1);
        assert_eq!(eval_poly(&x1x2, &[e(1), e(2)]).unwrap().to_string(), "e1*e2");
        let sq = Polynomial::monomial(f2.clone(), vec![2], 1);
        let r = eval_poly(&sq, &[e(1).add(&e(2)).unwrap()]).unwrap();
        assert_eq!(r.to_string(), "e1^2 + e2^2");
    }

    #[test]
    fn truncation_mismatch() {
        let f2 = field(2, 1);
        let a = TruncatedSymElement::basis(f2.clone(), 2, 2, 1).unwrap();
        let b = TruncatedSymElement::basis(f2.clone(), 2, 3, 1).unwrap();
        let x1x2 = Polynomial::monomial(f2, vec![1, 1], 1);
        assert!(matches!(eval_poly(&x1x2, &[a, b]), Err(Error::TruncationMismatch(_))));
    }

    #[test]
    fn truncation_drops_high_degree() {
        let f3 = field(3, 1);
        let e1 = TruncatedSymElement::basis(f3, 1, 2, 1).unwrap();
        assert!(e1.pow(3).is_zero());
        assert!(!e1.pow(2).is_zero());
    }
}
