use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{is_prime, FieldDescriptor, FiniteField};
use crate::error::{Error, Result};

/// A scalar domain: a finite field, the rationals, or `Z/m`.
#[derive(Clone, Debug)]
pub enum Domain {
    Finite(Arc<FiniteField>),
    Rational,
    Zmod(u64),
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Domain::Finite(a), Domain::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            (Domain::Rational, Domain::Rational) => true,
            (Domain::Zmod(a), Domain::Zmod(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Domain {}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Finite(field) => write!(f, "{}", field.descriptor()),
            Domain::Rational => write!(f, "Q"),
            Domain::Zmod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl Domain {
    pub fn finite(desc: FieldDescriptor) -> Self {
        Domain::Finite(FiniteField::new(desc))
    }

    pub fn zmod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::UnsupportedDomain(format!("Z/{m} needs m >= 2")));
        }
        Ok(Domain::Zmod(m))
    }

    /// Parses `p^k[:poly]` (finite field), `zmod:m`, or `Q`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "Q" || spec == "q" || spec == "rational" {
            return Ok(Domain::Rational);
        }
        if let Some(m) = spec.strip_prefix("zmod:") {
            let m = m
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad modulus in ring spec '{spec}'")))?;
            return Domain::zmod(m);
        }
        Ok(Domain::finite(FieldDescriptor::parse_spec(spec)?))
    }

    pub fn is_field(&self) -> bool {
        match self {
            Domain::Finite(_) | Domain::Rational => true,
            Domain::Zmod(m) => is_prime(*m),
        }
    }

    /// Number of elements, or `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match self {
            Domain::Finite(f) => Some(f.q()),
            Domain::Rational => None,
            Domain::Zmod(m) => Some(*m),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Domain::Finite(f) => Scalar::Fq(FqElem {
                field: f.clone(),
                value: f.from_int(n),
            }),
            Domain::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Domain::Zmod(m) => Scalar::Zmod(Residue {
                value: n.rem_euclid(*m as i64) as u64,
                modulus: *m,
            }),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::NotInvertible("zero denominator".into()));
        }
        match self {
            Domain::Rational => Ok(Scalar::Rational(BigRational::new(num.into(), den.into()))),
            _ => self.from_i64(num).div(&self.from_i64(den)),
        }
    }

    /// All elements in canonical order, for finite domains.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Domain::Finite(f) => Some(
                f.elements()
                    .map(|value| Scalar::Fq(FqElem { field: f.clone(), value }))
                    .collect(),
            ),
            Domain::Rational => None,
            Domain::Zmod(m) => Some(
                (0..*m)
                    .map(|value| Scalar::Zmod(Residue { value, modulus: *m }))
                    .collect(),
            ),
        }
    }

    /// Whether `s` belongs to this domain.
    pub fn contains(&self, s: &Scalar) -> bool {
        s.domain() == *self
    }

    /// Parses a scalar in the syntax produced by `Display`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Domain::Finite(f) => Ok(Scalar::Fq(FqElem {
                field: f.clone(),
                value: f.parse(s)?,
            })),
            Domain::Rational => {
                let bad = || Error::Parse(format!("cannot parse '{s}' as a rational"));
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (
                        n.trim().parse::<BigInt>().map_err(|_| bad())?,
                        d.trim().parse::<BigInt>().map_err(|_| bad())?,
                    ),
                    None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
                };
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            Domain::Zmod(m) => {
                let bad = || Error::Parse(format!("cannot parse '{s}' as an element of Z/{m}"));
                let (v, modulus) = match s.split_once(" mod ") {
                    Some((v, md)) => (v.trim(), md.trim().parse::<u64>().map_err(|_| bad())?),
                    None => (s, *m),
                };
                if modulus != *m {
                    return Err(Error::DomainMismatch(format!("'{s}' is not in Z/{m}")));
                }
                let v: i64 = v.parse().map_err(|_| bad())?;
                Ok(self.from_i64(v))
            }
        }
    }
}

/// An element of a finite field, tied to its field.
#[derive(Clone, Debug)]
pub struct FqElem {
    field: Arc<FiniteField>,
    value: u64,
}

impl FqElem {
    pub fn new(field: Arc<FiniteField>, value: u64) -> Result<Self> {
        if value >= field.q() {
            return Err(Error::DomainMismatch(format!(
                "encoding {value} out of range for {}",
                field.descriptor()
            )));
        }
        Ok(Self { field, value })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Integer encoding (base-`p` digits are the coefficients).
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Coefficient vector of length `k` over `F_p`.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits(self.value)
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for FqElem {}

impl Hash for FqElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.descriptor().hash(state);
        self.value.hash(state);
    }
}

/// A residue class in `Z/m`, stored by its representative in `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// An exact scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fq(FqElem),
    Rational(BigRational),
    Zmod(Residue),
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Applies `op` to `a` (and `b` for the binary operations).
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Neg => Ok(a.neg()),
        ArithOp::Inv => a.inv(),
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> Error {
    Error::DomainMismatch(format!("{} vs {}", a.domain(), b.domain()))
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Fq(e) => Domain::Finite(e.field.clone()),
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Zmod(r) => Domain::Zmod(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fq(e) => e.value == 0,
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Zmod(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fq(e) => e.value == 1,
            Scalar::Rational(r) => r.is_one(),
            Scalar::Zmod(r) => r.value == 1 % r.modulus,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Fq(a), Scalar::Fq(b)) if a.field == b.field => Ok(Scalar::Fq(FqElem {
                field: a.field.clone(),
                value: a.field.add(a.value, b.value),
            })),
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Zmod(a), Scalar::Zmod(b)) if a.modulus == b.modulus => Ok(Scalar::Zmod(Residue {
                value: ((a.value as u128 + b.value as u128) % a.modulus as u128) as u64,
                modulus: a.modulus,
            })),
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Fq(a), Scalar::Fq(b)) if a.field == b.field => Ok(Scalar::Fq(FqElem {
                field: a.field.clone(),
                value: a.field.mul(a.value, b.value),
            })),
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Zmod(a), Scalar::Zmod(b)) if a.modulus == b.modulus => Ok(Scalar::Zmod(Residue {
                value: ((a.value as u128 * b.value as u128) % a.modulus as u128) as u64,
                modulus: a.modulus,
            })),
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fq(a) => Scalar::Fq(FqElem {
                field: a.field.clone(),
                value: a.field.neg(a.value),
            }),
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Zmod(a) => Scalar::Zmod(Residue {
                value: (a.modulus - a.value) % a.modulus,
                modulus: a.modulus,
            }),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        let fail = || Error::NotInvertible(format!("{self} has no inverse in {}", self.domain()));
        match self {
            Scalar::Fq(a) => a
                .field
                .inv(a.value)
                .map(|value| Scalar::Fq(FqElem { field: a.field.clone(), value }))
                .ok_or_else(fail),
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(fail())
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Zmod(a) => {
                let g = (a.value as i128).extended_gcd(&(a.modulus as i128));
                if g.gcd != 1 {
                    return Err(fail());
                }
                let m = a.modulus as i128;
                Ok(Scalar::Zmod(Residue {
                    value: g.x.rem_euclid(m) as u64,
                    modulus: a.modulus,
                }))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.domain().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `a^(q^e)` for an element of `F_q`.
    pub fn frobenius_pow(&self, e: u32) -> Result<Scalar> {
        match self {
            Scalar::Fq(a) => Ok(Scalar::Fq(FqElem {
                field: a.field.clone(),
                value: a.field.frobenius_pow(a.value, e),
            })),
            _ => Err(Error::DomainMismatch(format!(
                "Frobenius needs a finite-field element, got {}",
                self.domain()
            ))),
        }
    }

    /// Whether the element is a unit (nonzero in a field).
    pub fn is_unit(&self) -> bool {
        self.inv().is_ok()
    }
}

/// Panics on mixed domains; use the `checked_*` methods when domains are not known to agree.
impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("mixed scalar domains")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("mixed scalar domains")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("mixed scalar domains")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fq(a) => write!(f, "{}", a.field.format(a.value)),
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Zmod(a) => write!(f, "{} mod {}", a.value, a.modulus),
        }
    }
}

impl Scalar {
    /// Whether the printed form needs parentheses when used as a coefficient.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Fq(a) => a.field.format(a.value).contains('+'),
            Scalar::Rational(r) => r.is_negative() || !r.is_integer(),
            Scalar::Zmod(_) => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, k: usize) -> Domain {
        Domain::finite(FieldDescriptor::builtin(p, k).unwrap())
    }

    #[test]
    fn characteristic_two() {
        let d = f(2, 1);
        assert!(field_arith(&d.one(), &d.one(), ArithOp::Add).unwrap().is_zero());
    }

    #[test]
    fn f4_generator_square() {
        let d = f(2, 2);
        let g = d.parse_scalar("g").unwrap();
        assert_eq!((&g * &g).to_string(), "g+1");
        assert_eq!(g.frobenius_pow(1).unwrap(), g);
        assert_eq!(g.pow(4), g);
    }

    #[test]
    fn rationals_reduce() {
        let d = Domain::Rational;
        let a = d.parse_scalar("2/4").unwrap();
        let b = d.parse_scalar("1/4").unwrap();
        assert_eq!((&a + &b).to_string(), "3/4");
        assert_eq!(d.parse_scalar("6/-8").unwrap().to_string(), "-3/4");
        assert_eq!(d.parse_scalar("4/2").unwrap().to_string(), "2");
        assert!(d.parse_scalar("1/0").is_err());
    }

    #[test]
    fn zmod_units() {
        let d = Domain::zmod(4).unwrap();
        let two = d.from_i64(2);
        let three = d.from_i64(3);
        assert_eq!(two.inv(), Err(Error::NotInvertible("2 mod 4 has no inverse in Z/4".into())));
        assert_eq!(three.inv().unwrap(), three);
        assert_eq!(two.to_string(), "2 mod 4");
        assert_eq!(d.parse_scalar("2 mod 4").unwrap(), two);
        assert_eq!(d.parse_scalar("-1").unwrap(), three);
        assert!(d.parse_scalar("2 mod 5").is_err());
        assert!(!d.is_field());
    }

    #[test]
    fn mismatch_and_zero_inverse() {
        let a = f(2, 1).one();
        let b = Domain::Rational.one();
        assert!(matches!(a.checked_add(&b), Err(Error::DomainMismatch(_))));
        assert!(matches!(field_arith(&a, &b, ArithOp::Mul), Err(Error::DomainMismatch(_))));
        assert!(matches!(f(3, 2).zero().inv(), Err(Error::NotInvertible(_))));
        assert!(matches!(Domain::Rational.zero().inv(), Err(Error::NotInvertible(_))));
        assert!(Domain::Rational.one().frobenius_pow(1).is_err());
        let f4 = f(2, 2);
        let f4_other = f(2, 2);
        // independently constructed copies of the same field agree
        assert_eq!(f4.one(), f4_other.one());
    }

    #[test]
    fn frobenius_zero_and_prime_field() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let d = f(p, k);
            for e in 0..3 {
                assert!(d.zero().frobenius_pow(e).unwrap().is_zero());
            }
        }
        let d = f(5, 1);
        for a in d.elements().unwrap() {
            assert_eq!(a.pow(5), a);
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for d in [f(2, 2), f(3, 2), f(2, 4), Domain::zmod(6).unwrap()] {
            for a in d.elements().unwrap() {
                assert_eq!(d.parse_scalar(&a.to_string()).unwrap(), a);
            }
        }
    }
}
