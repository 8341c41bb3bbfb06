use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalars::{Domain, Scalar};

/// A dense row-major matrix whose entries share one scalar domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    domain: Domain,
}

impl ExactMatrix {
    pub fn new(domain: Domain, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !domain.contains(e)) {
            return Err(Error::DomainMismatch(format!("entry {bad} is not in {domain}")));
        }
        Ok(Self { rows, cols, entries, domain })
    }

    pub fn from_rows(domain: Domain, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(domain, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(domain: &Domain, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| domain.from_i64(v)).collect())
            .collect();
        Self::from_rows(domain.clone(), rows)
    }

    pub fn zeros(domain: &Domain, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![domain.zero(); rows * cols],
            domain: domain.clone(),
        }
    }

    pub fn identity(domain: &Domain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.entries[i * n + i] = domain.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) -> Result<()> {
        if !self.domain.contains(&value) {
            return Err(Error::DomainMismatch(format!("{value} is not in {}", self.domain)));
        }
        self.entries[r * self.cols + c] = value;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_domain(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(format!("{} vs {}", self.domain, other.domain)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.domain, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("addition of differently shaped matrices".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.domain.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            entries: self.entries.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
            domain: self.domain.clone(),
        }
    }

    /// Kronecker product; row `(i, k)` maps to `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.same_domain(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for k in 0..other.rows {
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    for l in 0..other.cols {
                        entries.push(a * other.get(k, l));
                    }
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
            domain: self.domain.clone(),
        })
    }

    /// The `n`-fold Kronecker power; tuple indices are lexicographic with the
    /// leftmost tensor factor most significant. `n = 0` gives the 1x1 identity.
    pub fn kron_power(&self, n: usize) -> Result<Self> {
        let mut acc = Self::identity(&self.domain, 1);
        for _ in 0..n {
            acc = acc.kron(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns. Pivot choice: the first
    /// nonzero entry at or below the current row, columns left to right.
    pub fn rref(&self) -> Result<(Self, Vec<usize>)> {
        if !self.domain.is_field() {
            return Err(Error::UnsupportedDomain(format!(
                "row reduction needs a field, got {}",
                self.domain
            )));
        }
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let reduced = Self {
            rows: self.rows,
            cols: self.cols,
            entries: rows.into_iter().flatten().collect(),
            domain: self.domain.clone(),
        };
        Ok((reduced, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>> {
        let (r, pivots) = self.rref()?;
        let zero = self.domain.zero();
        let one = self.domain.one();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(row, free);
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { self.domain.one() } else { self.domain.zero() }));
                row
            })
            .collect();
        if self.domain.is_field() {
            let pivots = rref_rows(&mut aug, 2 * n);
            if pivots.len() < n || pivots[n - 1] >= n {
                return Err(Error::NotInvertible("singular matrix".into()));
            }
        } else {
            // Z/m: eliminate with unit pivots only
            for col in 0..n {
                let Some(p) = (col..n).find(|&r| aug[r][col].is_unit()) else {
                    return Err(Error::NotInvertible(
                        "no unit pivot (matrix may be singular over Z/m)".into(),
                    ));
                };
                aug.swap(col, p);
                let inv = aug[col][col].inv()?;
                aug[col] = aug[col].iter().map(|x| x * &inv).collect();
                for r in 0..n {
                    if r != col && !aug[r][col].is_zero() {
                        let f = aug[r][col].clone();
                        let pivot_row = aug[col].clone();
                        for (x, y) in aug[r].iter_mut().zip(&pivot_row) {
                            *x = &*x - &(&f * y);
                        }
                    }
                }
            }
        }
        let entries = aug.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Self::new(self.domain.clone(), n, n, entries)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// JSON array of rows of scalar strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| Value::Array(self.row(r).iter().map(|s| Value::String(s.to_string())).collect()))
                .collect(),
        )
    }

    pub fn from_json(domain: &Domain, value: &Value) -> Result<Self> {
        let bad = || Error::Parse("matrix JSON must be an array of arrays of strings".into());
        let rows = value.as_array().ok_or_else(bad)?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|s| domain.parse_scalar(s.as_str().ok_or_else(bad)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(domain.clone(), rows)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// In-place reduced row echelon form on a list of rows; returns pivot columns.
pub(crate) fn rref_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot in a field");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row: Vec<(usize, Scalar)> = support.iter().map(|&j| (j, rows[r][j].clone())).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, v) in &pivot_row {
                row[*j] = &row[*j] - &(&f * v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    fn f2() -> Domain {
        Domain::finite(FieldDescriptor::prime(2).unwrap())
    }

    #[test]
    fn kron_power_of_identity() {
        let d = Domain::Rational;
        for n in 0..4 {
            let k = ExactMatrix::identity(&d, 2).kron_power(n).unwrap();
            assert_eq!(k, ExactMatrix::identity(&d, 2usize.pow(n as u32)));
        }
    }

    #[test]
    fn kron_power_scalar() {
        let d = Domain::Rational;
        let a = ExactMatrix::from_i64(&d, &[&[3]]).unwrap();
        assert_eq!(a.kron_power(2).unwrap(), ExactMatrix::from_i64(&d, &[&[9]]).unwrap());
    }

    #[test]
    fn kron_square_over_f2() {
        // entrywise (A ⊗ A)[(i,k),(j,l)] = A[i][j] * A[k][l]
        let d = f2();
        let a = ExactMatrix::from_i64(&d, &[&[1, 1], &[0, 1]]).unwrap();
        let expected = ExactMatrix::from_i64(
            &d,
            &[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1], &[0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(a.kron_power(2).unwrap(), expected);
    }

    #[test]
    fn nullspace_examples() {
        let d = f2();
        assert!(ExactMatrix::identity(&d, 3).nullspace().unwrap().is_empty());
        let z = ExactMatrix::zeros(&d, 3, 3).nullspace().unwrap();
        assert_eq!(z.len(), 3);
        for (i, v) in z.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
        let m = ExactMatrix::from_i64(&d, &[&[1, 1], &[1, 1]]).unwrap();
        let ns = m.nullspace().unwrap();
        assert_eq!(ns, vec![vec![d.one(), d.one()]]);
    }

    #[test]
    fn nullspace_rejects_composite_modulus() {
        let d = Domain::zmod(4).unwrap();
        let m = ExactMatrix::identity(&d, 2);
        assert!(matches!(m.nullspace(), Err(Error::UnsupportedDomain(_))));
        let p = Domain::zmod(5).unwrap();
        assert!(ExactMatrix::identity(&p, 2).nullspace().unwrap().is_empty());
    }

    #[test]
    fn inverse_and_singularity() {
        let d = Domain::Rational;
        let a = ExactMatrix::from_i64(&d, &[&[2, 1], &[1, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(&d, 2));
        let s = ExactMatrix::from_i64(&d, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(s.inverse(), Err(Error::NotInvertible(_))));
        let z4 = Domain::zmod(4).unwrap();
        let u = ExactMatrix::from_i64(&z4, &[&[1, 2], &[0, 3]]).unwrap();
        assert_eq!(u.mul(&u.inverse().unwrap()).unwrap(), ExactMatrix::identity(&z4, 2));
        let two = ExactMatrix::from_i64(&z4, &[&[2, 0], &[0, 1]]).unwrap();
        assert!(two.inverse().is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = Domain::Rational;
        let m = ExactMatrix::from_rows(
            d.clone(),
            vec![vec![d.rational(3, 4).unwrap(), d.from_i64(-2)]],
        )
        .unwrap();
        let j = m.to_json();
        assert_eq!(j.to_string(), r#"[["3/4","-2"]]"#);
        assert_eq!(ExactMatrix::from_json(&d, &j).unwrap(), m);
        let z = Domain::zmod(4).unwrap();
        assert_eq!(ExactMatrix::identity(&z, 1).to_json().to_string(), r#"[["1 mod 4"]]"#);
    }

    #[test]
    fn constructor_checks() {
        let d = Domain::Rational;
        assert!(ExactMatrix::new(d.clone(), 2, 2, vec![d.one(); 3]).is_err());
        assert!(ExactMatrix::new(d.clone(), 1, 1, vec![f2().one()]).is_err());
        let a = ExactMatrix::identity(&d, 2);
        let b = ExactMatrix::identity(&f2(), 2);
        assert!(matches!(a.mul(&b), Err(Error::DomainMismatch(_))));
        assert!(matches!(a.kron(&b), Err(Error::DomainMismatch(_))));
    }
}
