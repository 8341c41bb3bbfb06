//! Prime-power finite fields `F_q = F_p[g]/(poly)`.
//!
//! Elements are encoded as integers in `0..q` whose base-`p` digits are the
//! coefficients of `1, g, g^2, ...`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 256;

/// Characteristic, extension degree and defining polynomial of a finite field.
///
/// `poly` lists coefficients from the constant term upward, so `x^2 + x + 1`
/// is `[1, 1, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor")]
pub struct FieldDescriptor {
    p: u64,
    k: usize,
    poly: Vec<u64>,
}

#[derive(Deserialize)]
struct RawDescriptor {
    p: u64,
    k: usize,
    poly: Vec<u64>,
}

impl TryFrom<RawDescriptor> for FieldDescriptor {
    type Error = Error;

    fn try_from(raw: RawDescriptor) -> Result<Self> {
        FieldDescriptor::new(raw.p, raw.k, raw.poly)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `p^k = q`.
fn prime_power(q: u64) -> Option<(u64, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FieldDescriptor {
    /// Validates and builds a descriptor. Irreducibility is decided by
    /// exhaustive search for monic factors, so `k` is limited to 4.
    pub fn new(p: u64, k: usize, poly: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if k > 4 {
            return Err(Error::InvalidField(format!(
                "extension degree {k} exceeds the supported maximum of 4"
            )));
        }
        if p.checked_pow(k as u32).is_none_or(|q| q > u32::MAX as u64) {
            return Err(Error::InvalidField(format!("{p}^{k} is too large")));
        }
        if poly.len() != k + 1 {
            return Err(Error::InvalidField(format!(
                "polynomial must have {} coefficients, got {}",
                k + 1,
                poly.len()
            )));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("coefficients must lie in 0..p".into()));
        }
        if poly[k] != 1 {
            return Err(Error::InvalidField("polynomial must be monic".into()));
        }
        if !is_irreducible(p, &poly) {
            return Err(Error::InvalidField(format!(
                "polynomial {poly:?} is reducible over F_{p}"
            )));
        }
        Ok(Self { p, k, poly })
    }

    /// The prime field `F_p`, presented as `F_p[g]/(g)`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, vec![0, 1])
    }

    /// Built-in descriptors: any prime field, plus `F_4`, `F_8`, `F_9`, `F_16`.
    pub fn builtin(p: u64, k: usize) -> Result<Self> {
        match (p, k) {
            (_, 1) => Self::prime(p),
            (2, 2) => Self::new(2, 2, vec![1, 1, 1]),
            (2, 3) => Self::new(2, 3, vec![1, 1, 0, 1]),
            (3, 2) => Self::new(3, 2, vec![1, 0, 1]),
            (2, 4) => Self::new(2, 4, vec![1, 1, 0, 0, 1]),
            _ => Err(Error::InvalidField(format!(
                "no built-in polynomial for F_{p}^{k}; supply one explicitly"
            ))),
        }
    }

    /// Parses `p^k` or `p^k:c0,c1,...,ck`; a bare prime power `q` means `p^k`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let (head, poly) = match spec.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (spec, None),
        };
        let parse_u = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer '{s}' in field spec '{spec}'")))
        };
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (parse_u(p)?, parse_u(k)? as usize),
            None => prime_power(parse_u(head)?)
                .ok_or_else(|| Error::InvalidField(format!("{head} is not a prime power")))?,
        };
        match poly {
            None => Self::builtin(p, k),
            Some(csv) => {
                let coeffs = csv.split(',').map(parse_u).collect::<Result<Vec<_>>>()?;
                Self::new(p, k, coeffs)
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k as u32)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

// Polynomials over F_p as coefficient vectors, constant term first.

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let den = trim(den.to_vec());
    let mut r = trim(num.to_vec());
    let lead_inv = mod_inv(*den.last().expect("nonzero divisor"), p);
    while r.len() >= den.len() {
        let shift = r.len() - den.len();
        let c = r.last().copied().unwrap() * lead_inv % p;
        for (i, &d) in den.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * d % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Exhaustive check: no monic factor of degree `1..=deg/2` divides `poly`.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut factor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                factor.push(c % p);
                c /= p;
            }
            factor.push(1);
            if poly_rem(p, poly, &factor).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A finite field with arithmetic on the integer encoding of its elements.
#[derive(Debug)]
pub struct FiniteField {
    desc: FieldDescriptor,
    q: u64,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.desc == other.desc
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn new(desc: FieldDescriptor) -> Arc<Self> {
        let q = desc.q();
        let mut field = FiniteField {
            desc,
            q,
            add_table: None,
            mul_table: None,
        };
        if q <= TABLE_LIMIT {
            let mut add = vec![0u32; (q * q) as usize];
            let mut mul = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.add_direct(a, b) as u32;
                    mul[(a * q + b) as usize] = field.mul_direct(a, b) as u32;
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }
        Arc::new(field)
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn p(&self) -> u64 {
        self.desc.p
    }

    pub fn k(&self) -> usize {
        self.desc.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The class of the indeterminate `g` (zero in a prime field presented by `g`).
    pub fn generator(&self) -> u64 {
        self.reduce_coeffs(&[0, 1])
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.desc.k);
        let mut a = a;
        for _ in 0..self.desc.k {
            out.push(a % self.desc.p);
            a /= self.desc.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.desc.p + d % self.desc.p)
    }

    /// Reduces an arbitrary coefficient vector modulo the defining polynomial.
    pub fn reduce_coeffs(&self, coeffs: &[u64]) -> u64 {
        let p = self.desc.p;
        let v: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        let r = poly_rem(p, &v, &self.desc.poly);
        self.from_digits(&r)
    }

    fn add_direct(&self, a: u64, b: u64) -> u64 {
        let p = self.desc.p;
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.from_digits(&sum)
    }

    fn mul_direct(&self, a: u64, b: u64) -> u64 {
        let p = self.desc.p;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.desc.k];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + *x as u128 * *y as u128) % p as u128) as u64;
            }
        }
        self.from_digits(&poly_rem(p, &prod, &self.desc.poly))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.add_table {
            Some(t) => t[(a * self.q + b) as usize] as u64,
            None => self.add_direct(a, b),
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize] as u64,
            None => self.mul_direct(a, b),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.desc.p;
        let d: Vec<u64> = self.digits(a).iter().map(|x| (p - x) % p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }

    /// `a^(q^e)`, computed as `e` successive `q`-th powers.
    pub fn frobenius_pow(&self, a: u64, e: u32) -> u64 {
        (0..e).fold(a, |x, _| self.pow(x, self.q))
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        let p = self.desc.p as i64;
        n.rem_euclid(p) as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    pub fn format(&self, a: u64) -> String {
        if self.desc.k == 1 {
            return a.to_string();
        }
        let digits = self.digits(a);
        let mut terms = Vec::new();
        for (e, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && e > 0 { String::new() } else { c.to_string() };
            let var = match e {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{e}"),
            };
            terms.push(format!("{coeff}{var}"));
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Parses the syntax produced by [`FiniteField::format`]: `+`-separated terms
    /// `c`, `g`, `cg`, `g^e`, `cg^e` (an optional `*` may separate `c` and `g`).
    pub fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse '{s}' as an element of {}", self.desc));
        if s.is_empty() {
            return Err(bad());
        }
        let p = self.desc.p;
        if self.desc.k == 1 {
            let n: i64 = s.parse().map_err(|_| bad())?;
            return Ok(self.from_int(n));
        }
        let mut coeffs = vec![0u64; 1];
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let (coeff, exp) = match term.find('g') {
                None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { 1 } else { c.parse::<u64>().map_err(|_| bad())? };
                    let rest = &term[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = (coeffs[exp] + coeff % p) % p;
        }
        Ok(self.reduce_coeffs(&coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, k: usize) -> Arc<FiniteField> {
        FiniteField::new(FieldDescriptor::builtin(p, k).unwrap())
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(FieldDescriptor::new(4, 1, vec![0, 1]).is_err());
        assert!(FieldDescriptor::new(2, 2, vec![1, 0, 1]).is_err()); // (x+1)^2
        assert!(FieldDescriptor::new(2, 2, vec![1, 1, 2]).is_err());
        assert!(FieldDescriptor::new(2, 2, vec![1, 1, 0]).is_err());
        assert!(FieldDescriptor::new(3, 2, vec![2, 0, 1]).is_err()); // x^2 - 1
        assert!(FieldDescriptor::new(2, 4, vec![1, 0, 1, 0, 1]).is_err()); // (x^2+x+1)^2
        assert!(FieldDescriptor::new(2, 5, vec![1, 0, 1, 0, 0, 1]).is_err());
    }

    #[test]
    fn builtins_are_valid() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
            let d = FieldDescriptor::builtin(p, k).unwrap();
            assert_eq!(d.q(), p.pow(k as u32));
        }
        assert!(FieldDescriptor::builtin(5, 2).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(FieldDescriptor::parse_spec("2^2").unwrap().poly(), &[1, 1, 1]);
        assert_eq!(FieldDescriptor::parse_spec("3").unwrap().q(), 3);
        assert_eq!(FieldDescriptor::parse_spec("2^3:1,0,1,1").unwrap().poly(), &[1, 0, 1, 1]);
        assert!(FieldDescriptor::parse_spec("2^2:1,0,1").is_err());
        assert!(FieldDescriptor::parse_spec("two").is_err());
        assert_eq!(FieldDescriptor::parse_spec("4").unwrap().poly(), &[1, 1, 1]);
        assert_eq!(FieldDescriptor::parse_spec("9").unwrap().k(), 2);
        assert!(matches!(FieldDescriptor::parse_spec("6"), Err(Error::InvalidField(_))));
        assert!(FieldDescriptor::parse_spec("1").is_err());
    }

    #[test]
    fn descriptor_json_shape() {
        let d = FieldDescriptor::builtin(2, 2).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"p":2,"k":2,"poly":[1,1,1]}"#);
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<FieldDescriptor>(r#"{"p":2,"k":2,"poly":[1,0,1]}"#).is_err());
    }

    #[test]
    fn generator_squared_in_f4() {
        let f = field(2, 2);
        let g = f.generator();
        assert_eq!(f.format(f.mul(g, g)), "g+1");
        assert_eq!(f.frobenius_pow(g, 1), g);
    }

    #[test]
    fn format_parse_round_trip() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (7, 1)] {
            let f = field(p, k);
            for a in f.elements() {
                assert_eq!(f.parse(&f.format(a)).unwrap(), a);
            }
        }
        let f = field(3, 2);
        assert_eq!(f.parse("2*g+1").unwrap(), f.parse("2g+1").unwrap());
        assert!(f.parse("h").is_err());
    }

    #[test]
    fn inverses_exist() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 1)] {
            let f = field(p, k);
            for a in 1..f.q() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.inv(0), None);
        }
    }
}
