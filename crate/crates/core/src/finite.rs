//! Tabulated functions between finite sets and finite monoid/group tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// A function `{0..domain} -> {0..codomain}` stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteFunction {
    codomain: usize,
    table: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(codomain: usize, table: Vec<usize>) -> Result<Self> {
        if let Some(&v) = table.iter().find(|&&v| v >= codomain) {
            return Err(Error::IndexOutOfRange { index: v, arity: codomain });
        }
        Ok(Self { codomain, table })
    }

    pub fn identity(n: usize) -> Self {
        Self { codomain: n, table: (0..n).collect() }
    }

    pub fn domain_size(&self) -> usize {
        self.table.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Self) -> Result<Self> {
        if other.codomain != self.domain_size() {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain_size(),
                self.codomain,
                other.domain_size(),
                other.codomain
            )));
        }
        Ok(Self { codomain: self.codomain, table: other.table.iter().map(|&x| self.table[x]).collect() })
    }

    /// Every function `{0..domain} -> {0..codomain}` in lexicographic order
    /// of value tables.
    pub fn all(domain: usize, codomain: usize) -> Vec<Self> {
        let count = (codomain as u128).pow(domain as u32);
        (0..count as u64)
            .map(|mut c| {
                let mut table = vec![0; domain];
                for slot in table.iter_mut().rev() {
                    *slot = (c % codomain as u64) as usize;
                    c /= codomain as u64;
                }
                Self { codomain, table }
            })
            .collect()
    }
}

/// A monoid on `{0..order}` given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMonoid", into = "RawMonoid")]
pub struct FiniteMonoidTable {
    table: Vec<Vec<usize>>,
    unit: usize,
}

#[derive(Serialize, Deserialize)]
struct RawMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl TryFrom<RawMonoid> for FiniteMonoidTable {
    type Error = Error;
    fn try_from(raw: RawMonoid) -> Result<Self> {
        Self::new(raw.table, raw.unit)
    }
}

impl From<FiniteMonoidTable> for RawMonoid {
    fn from(m: FiniteMonoidTable) -> Self {
        RawMonoid { table: m.table, unit: m.unit }
    }
}

impl FiniteMonoidTable {
    /// Validates shape, closure, the unit laws and associativity.
    pub fn new(table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::NotAMonoid("empty carrier".into()));
        }
        if table.iter().any(|row| row.len() != m) {
            return Err(Error::NotAMonoid("table is not square".into()));
        }
        if table.iter().flatten().any(|&v| v >= m) {
            return Err(Error::NotAMonoid("product outside the carrier".into()));
        }
        if unit >= m {
            return Err(Error::NotAMonoid(format!("unit {unit} outside the carrier")));
        }
        for x in 0..m {
            if table[unit][x] != x || table[x][unit] != x {
                return Err(Error::NotAMonoid(format!("{unit} is not a unit for {x}")));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAMonoid(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        Ok(Self { table, unit })
    }

    pub fn from_fn(order: usize, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::new((0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect(), unit)
    }

    pub fn trivial() -> Self {
        Self { table: vec![vec![0]], unit: 0 }
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_fn(n, 0, |a, b| (a + b) % n)
    }

    /// The symmetric group on `{1..n}`; element `k` is the `k`-th
    /// permutation in lexicographic order and the product is `σ∘τ`.
    pub fn symmetric_group(n: usize) -> Result<Self> {
        let perms = Permutation::all(n);
        let index = |p: &Permutation| perms.iter().position(|q| q == p).expect("closed");
        Self::from_fn(perms.len(), 0, |a, b| index(&perms[a].compose(&perms[b])))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The two-sided inverse of `a`, if it exists.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.table[a][b] == self.unit && self.table[b][a] == self.unit)
    }

    pub fn is_group(&self) -> bool {
        (0..self.order()).all(|a| self.inverse(a).is_some())
    }

    /// Whether `f` is a unital multiplicative map of `self` to itself.
    pub fn is_endomorphism(&self, f: &FiniteFunction) -> bool {
        f.domain_size() == self.order()
            && f.codomain_size() == self.order()
            && f.apply(self.unit) == self.unit
            && (0..self.order())
                .all(|a| (0..self.order()).all(|b| f.apply(self.mul(a, b)) == self.mul(f.apply(a), f.apply(b))))
    }

    /// All monoid endomorphisms, by exhaustive search over `order^order` maps.
    pub fn endomorphisms(&self) -> Result<Vec<FiniteFunction>> {
        let m = self.order();
        if m > 7 {
            return Err(Error::BoundExceeded(format!("{m}^{m} candidate endomorphisms")));
        }
        Ok(FiniteFunction::all(m, m).into_iter().filter(|f| self.is_endomorphism(f)).collect())
    }

    /// Whether `perm` relabels `self` into `other` (`perm[a·b] = perm[a]·perm[b]`).
    pub fn is_isomorphism_to(&self, other: &Self, perm: &[usize]) -> bool {
        perm.len() == self.order()
            && other.order() == self.order()
            && perm[self.unit] == other.unit
            && (0..self.order())
                .all(|a| (0..self.order()).all(|b| perm[self.mul(a, b)] == other.mul(perm[a], perm[b])))
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.order() == other.order()
            && Permutation::all(self.order()).iter().any(|p| {
                let perm: Vec<usize> = p.images().iter().map(|&v| v - 1).collect();
                self.is_isomorphism_to(other, &perm)
            })
    }
}

/// A finite monoid in which every element is invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    monoid: FiniteMonoidTable,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(monoid: FiniteMonoidTable) -> Result<Self> {
        let inverses = (0..monoid.order())
            .map(|a| monoid.inverse(a).ok_or_else(|| Error::NotAGroup(format!("{a} has no inverse"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { monoid, inverses })
    }

    pub fn monoid(&self) -> &FiniteMonoidTable {
        &self.monoid
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    pub fn unit(&self) -> usize {
        self.monoid.unit()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.monoid.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

impl TryFrom<FiniteMonoidTable> for FiniteGroup {
    type Error = Error;
    fn try_from(m: FiniteMonoidTable) -> Result<Self> {
        Self::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FiniteMonoidTable::new(vec![vec![0, 1], vec![1, 1]], 0).is_ok());
        assert!(matches!(FiniteMonoidTable::new(vec![vec![0, 1], vec![1, 1]], 1), Err(Error::NotAMonoid(_))));
        // a·b = b is associative but has no two-sided unit on two points
        assert!(FiniteMonoidTable::new(vec![vec![0, 1], vec![0, 1]], 0).is_err());
        assert!(FiniteGroup::new(FiniteMonoidTable::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap()).is_err());
    }

    #[test]
    fn symmetric_group_three() {
        let s3 = FiniteMonoidTable::symmetric_group(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.is_group());
        assert_eq!(s3.endomorphisms().unwrap().len(), 10);
        assert!(!s3.is_isomorphic(&FiniteMonoidTable::cyclic(6).unwrap()));
    }

    #[test]
    fn cyclic_endomorphisms() {
        assert_eq!(FiniteMonoidTable::cyclic(2).unwrap().endomorphisms().unwrap().len(), 2);
        assert_eq!(FiniteMonoidTable::cyclic(4).unwrap().endomorphisms().unwrap().len(), 4);
    }

    #[test]
    fn function_composition() {
        let f = FiniteFunction::new(3, vec![2, 0]).unwrap();
        let g = FiniteFunction::new(2, vec![1, 1, 0]).unwrap();
        assert_eq!(f.after(&g).unwrap().table(), &[0, 0, 2]);
        assert_eq!(FiniteFunction::all(2, 3).len(), 9);
        assert_eq!(FiniteFunction::all(0, 3).len(), 1);
    }
}
