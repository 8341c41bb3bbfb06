//! Spaces of linear maps `V^{⊗n} -> V^{⊗n}` (or `V^{⊗n} -> V`) that commute
//! with a family of linear maps of `V`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::{rref_rows, ExactMatrix};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::scalars::{Domain, Scalar};

/// Target of the maps being solved for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Codomain {
    /// `V^{⊗n}`, acted on by `g^{⊗n}`.
    TensorPower,
    /// `V`, acted on by `g`.
    Base,
}

/// A linearly independent family of `codomain_dim x domain_dim` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub basis: Vec<ExactMatrix>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rank of the flattened basis; equals `dim()` for a genuine basis.
    pub fn flattened_rank(&self) -> Result<usize> {
        let Some(first) = self.basis.first() else {
            return Ok(0);
        };
        let rows = self.basis.iter().map(|m| m.entries().to_vec()).collect();
        ExactMatrix::from_rows(first.domain().clone(), rows)?.rank()
    }

    /// Whether `m` lies in the span of the basis.
    pub fn spans(&self, m: &ExactMatrix) -> Result<bool> {
        if m.is_zero() {
            return Ok(true);
        }
        let mut rows: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        let before = rows.len();
        rows.push(m.entries().to_vec());
        let r = ExactMatrix::from_rows(m.domain().clone(), rows)?.rank()?;
        Ok(r == before)
    }
}

type Sparse = BTreeMap<usize, Scalar>;

fn digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// Nonzero entries of row (or column) `idx` of `g^{⊗n}`.
fn tensor_line(g: &ExactMatrix, n: usize, idx: usize, column: bool) -> Vec<(usize, Scalar)> {
    let d = g.rows();
    let mut acc: Vec<(usize, Scalar)> = vec![(0, g.domain().one())];
    for a in digits(idx, d, n) {
        let mut next = Vec::new();
        for (pos, c) in &acc {
            for b in 0..d {
                let e = if column { g.get(b, a) } else { g.get(a, b) };
                if !e.is_zero() {
                    next.push((pos * d + b, c * e));
                }
            }
        }
        acc = next;
    }
    acc
}

struct Constraint<'a> {
    g: &'a ExactMatrix,
    n: usize,
    codomain: Codomain,
    dom: usize,
    rows_of_power: HashMap<usize, Vec<(usize, Scalar)>>,
    cols_of_cod: HashMap<usize, Vec<(usize, Scalar)>>,
}

impl<'a> Constraint<'a> {
    /// `Φ ↦ g_cod Φ - Φ g^{⊗n}` on a sparse flattened `Φ`.
    fn apply(&mut self, phi: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        let dom = self.dom;
        for (&flat, c) in phi {
            let (o, i) = (flat / dom, flat % dom);
            let (g, n, codomain) = (self.g, self.n, self.codomain);
            let col = self.cols_of_cod.entry(o).or_insert_with(|| match codomain {
                Codomain::TensorPower => tensor_line(g, n, o, true),
                Codomain::Base => (0..g.rows())
                    .filter(|&r| !g.get(r, o).is_zero())
                    .map(|r| (r, g.get(r, o).clone()))
                    .collect(),
            });
            for (o2, v) in col.iter() {
                accumulate(&mut out, o2 * dom + i, &(c * v));
            }
            let row = self.rows_of_power.entry(i).or_insert_with(|| tensor_line(g, n, i, false));
            for (j, v) in row.iter() {
                accumulate(&mut out, o * dom + j, &-&(c * v));
            }
        }
        out
    }
}

fn accumulate(v: &mut Sparse, idx: usize, x: &Scalar) {
    match v.get_mut(&idx) {
        Some(cur) => {
            *cur = &*cur + x;
            if cur.is_zero() {
                v.remove(&idx);
            }
        }
        None => {
            if !x.is_zero() {
                v.insert(idx, x.clone());
            }
        }
    }
}

fn axpy(y: &mut Sparse, a: &Scalar, x: &Sparse) {
    for (&i, v) in x {
        accumulate(y, i, &(a * v));
    }
}

/// Kernel of `coeffs ↦ Σ coeffs[k] images[k]`, as coefficient vectors.
fn kernel_of_images(images: Vec<Sparse>, one: &Scalar) -> Vec<Sparse> {
    let mut pivots: BTreeMap<usize, (Sparse, Sparse)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (k, mut v) in images.into_iter().enumerate() {
        let mut combo = Sparse::new();
        combo.insert(k, one.clone());
        let mut cursor = 0usize;
        while let Some((&idx, val)) = v.range(cursor..).next() {
            cursor = idx + 1;
            if let Some((pv, pc)) = pivots.get(&idx) {
                let f = -val;
                axpy(&mut v, &f, pv);
                axpy(&mut combo, &f, pc);
            }
        }
        match v.iter().next() {
            None => kernel.push(combo),
            Some((&lead, lead_val)) => {
                let inv = lead_val.inv().expect("nonzero leading entry in a field");
                let v: Sparse = v.into_iter().map(|(i, x)| (i, &x * &inv)).collect();
                let combo: Sparse = combo.into_iter().map(|(i, x)| (i, &x * &inv)).collect();
                pivots.insert(lead, (v, combo));
            }
        }
    }
    kernel
}

/// All `Φ : V^{⊗n} -> cod` with `g_cod ∘ Φ = Φ ∘ g^{⊗n}` for every `g` in `maps`.
///
/// The maps need not be invertible. The solution space is the nullspace of
/// the stacked conditions, computed by intersecting one map at a time; the
/// returned basis is in reduced echelon form, so it does not depend on the
/// order of `maps`.
pub fn intertwiners(
    domain: &Domain,
    d: usize,
    maps: &[ExactMatrix],
    n: usize,
    codomain: Codomain,
) -> Result<HomBasis> {
    if !domain.is_field() {
        return Err(Error::UnsupportedDomain(format!("linear solving needs a field, got {domain}")));
    }
    for g in maps {
        if g.domain() != domain {
            return Err(Error::DomainMismatch(format!("{} vs {domain}", g.domain())));
        }
        if g.rows() != d || g.cols() != d {
            return Err(Error::ShapeMismatch(format!(
                "expected {d}x{d} maps, got {}x{}",
                g.rows(),
                g.cols()
            )));
        }
    }
    let dom = d.pow(n as u32);
    let cod = match codomain {
        Codomain::TensorPower => dom,
        Codomain::Base => d,
    };
    let one = domain.one();
    let mut basis: Vec<Sparse> = (0..cod * dom)
        .map(|i| Sparse::from([(i, one.clone())]))
        .collect();
    for g in maps {
        if basis.is_empty() {
            break;
        }
        let mut constraint = Constraint {
            g,
            n,
            codomain,
            dom,
            rows_of_power: HashMap::new(),
            cols_of_cod: HashMap::new(),
        };
        let images: Vec<Sparse> = basis.iter().map(|b| constraint.apply(b)).collect();
        let kernel = kernel_of_images(images, &one);
        basis = kernel
            .iter()
            .map(|combo| {
                let mut v = Sparse::new();
                for (&k, c) in combo {
                    axpy(&mut v, c, &basis[k]);
                }
                v
            })
            .collect();
    }
    let zero = domain.zero();
    let mut rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|v| {
            let mut row = vec![zero.clone(); cod * dom];
            for (&i, x) in v {
                row[i] = x.clone();
            }
            row
        })
        .collect();
    let rank = rref_rows(&mut rows, cod * dom).len();
    rows.truncate(rank);
    let basis = rows
        .into_iter()
        .map(|row| ExactMatrix::new(domain.clone(), cod, dom, row))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomBasis {
        domain_dim: dom,
        codomain_dim: cod,
        basis,
    })
}

/// All `Φ` (`cod x dom`) with `A Φ = Φ B` for every pair `(A, B)`, where
/// `A` is `cod x cod` and `B` is `dom x dom`; basis in reduced echelon form.
pub fn commutant(domain: &Domain, cod: usize, dom: usize, pairs: &[(ExactMatrix, ExactMatrix)]) -> Result<HomBasis> {
    if !domain.is_field() {
        return Err(Error::UnsupportedDomain(format!("linear solving needs a field, got {domain}")));
    }
    let mut rows = Vec::new();
    for (a, b) in pairs {
        if a.rows() != cod || a.cols() != cod || b.rows() != dom || b.cols() != dom {
            return Err(Error::ShapeMismatch("commutant pair has the wrong shape".into()));
        }
        if a.domain() != domain || b.domain() != domain {
            return Err(Error::DomainMismatch(format!("{} / {} vs {domain}", a.domain(), b.domain())));
        }
        for o in 0..cod {
            for i in 0..dom {
                // (AΦ - ΦB)[o][i] as a linear form in the entries Φ[t][s] at t*dom+s
                let mut form = vec![domain.zero(); cod * dom];
                for t in 0..cod {
                    form[t * dom + i] = &form[t * dom + i] + a.get(o, t);
                }
                for t in 0..dom {
                    form[o * dom + t] = &form[o * dom + t] - b.get(t, i);
                }
                if form.iter().any(|x| !x.is_zero()) {
                    rows.push(form);
                }
            }
        }
    }
    let mut null = if rows.is_empty() {
        (0..cod * dom)
            .map(|k| (0..cod * dom).map(|j| if j == k { domain.one() } else { domain.zero() }).collect())
            .collect()
    } else {
        ExactMatrix::from_rows(domain.clone(), rows)?.nullspace()?
    };
    let rank = rref_rows(&mut null, cod * dom).len();
    null.truncate(rank);
    let basis = null
        .into_iter()
        .map(|row| ExactMatrix::new(domain.clone(), cod, dom, row))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomBasis { domain_dim: dom, codomain_dim: cod, basis })
}

/// `GL(V)`-style equivariant maps for a list of invertible generators.
pub fn equivariant_homs(generators: &[ExactMatrix], n: usize, codomain: Codomain) -> Result<HomBasis> {
    let first = generators
        .first()
        .ok_or_else(|| Error::ShapeMismatch("at least one generator is required".into()))?;
    for g in generators {
        if !g.is_square() {
            return Err(Error::ShapeMismatch("generators must be square".into()));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible(format!("generator {g} is singular")));
        }
    }
    intertwiners(first.domain(), first.rows(), generators, n, codomain)
}

/// The operator on `V^{⊗n}` sending `e_{i_1} ⊗ ... ⊗ e_{i_n}` to
/// `e_{i_σ(1)} ⊗ ... ⊗ e_{i_σ(n)}`.
pub fn permutation_operator(domain: &Domain, d: usize, sigma: &Permutation) -> Result<ExactMatrix> {
    let n = sigma.len();
    let dim = d.pow(n as u32);
    let mut m = ExactMatrix::zeros(domain, dim, dim);
    for input in 0..dim {
        let idx = digits(input, d, n);
        let out = (1..=n).fold(0usize, |acc, t| acc * d + idx[sigma.apply(t) - 1]);
        m.set(out, input, domain.one())?;
    }
    Ok(m)
}

/// Dimension of the span of the `n!` permutation operators on `V^{⊗n}`, `dim V = d`.
pub fn symmetric_group_image_dim(d: usize, n: usize, domain: &Domain) -> Result<usize> {
    let rows = Permutation::all(n)
        .iter()
        .map(|s| permutation_operator(domain, d, s).map(|m| m.entries().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(domain.clone(), rows)?.rank()
}

const PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

/// `diag(2, 3, 5, ...)`: distinct primes, so its tensor powers separate weights.
pub fn prime_diagonal(domain: &Domain, d: usize) -> Result<ExactMatrix> {
    if d > PRIMES.len() {
        return Err(Error::BoundExceeded(format!("dimension {d} > {}", PRIMES.len())));
    }
    let mut m = ExactMatrix::zeros(domain, d, d);
    for (i, &p) in PRIMES.iter().take(d).enumerate() {
        m.set(i, i, domain.from_i64(p))?;
    }
    Ok(m)
}

fn random_scalar(domain: &Domain, rng: &mut ChaCha8Rng) -> Scalar {
    match domain {
        Domain::Rational => {
            let num: i64 = rng.gen_range(-3..=3);
            let den: i64 = rng.gen_range(1..=3);
            Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
        _ => {
            let size = domain.size().expect("finite domain");
            domain.from_i64(rng.gen_range(0..size) as i64)
        }
    }
}

/// `count` pseudorandom invertible `d x d` matrices, deterministic in `seed`.
/// Rational entries are `a/b` with `|a| <= 3`, `1 <= b <= 3`.
pub fn random_invertible(domain: &Domain, d: usize, count: usize, seed: u64) -> Vec<ExactMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let entries = (0..d * d).map(|_| random_scalar(domain, &mut rng)).collect();
        let m = ExactMatrix::new(domain.clone(), d, d, entries).expect("well-formed");
        if m.is_invertible() {
            out.push(m);
        }
    }
    out
}

/// The generator list used for desk-scale Schur–Weyl checks over the
/// rationals: the prime diagonal followed by `count` seeded random matrices.
pub fn seeded_generators(domain: &Domain, d: usize, count: usize, seed: u64) -> Result<Vec<ExactMatrix>> {
    let mut gens = Vec::with_capacity(count + 1);
    if matches!(domain, Domain::Rational) {
        gens.push(prime_diagonal(domain, d)?);
    }
    gens.extend(random_invertible(domain, d, count, seed));
    Ok(gens)
}

/// Every invertible `d x d` matrix over a finite domain, in lexicographic
/// order of entry encodings.
pub fn general_linear_group(domain: &Domain, d: usize) -> Result<Vec<ExactMatrix>> {
    let q = domain
        .size()
        .ok_or_else(|| Error::UnsupportedDomain("cannot enumerate GL over Q".into()))?;
    let total = (q as u128).checked_pow((d * d) as u32).unwrap_or(u128::MAX);
    if total > 1 << 16 {
        return Err(Error::BoundExceeded(format!("{q}^{} matrices to enumerate", d * d)));
    }
    let elements = domain.elements().expect("finite");
    let mut out = Vec::new();
    for code in 0..total as u64 {
        let mut c = code;
        let mut entries = vec![domain.zero(); d * d];
        for slot in entries.iter_mut().rev() {
            *slot = elements[(c % q) as usize].clone();
            c /= q;
        }
        let m = ExactMatrix::new(domain.clone(), d, d, entries)?;
        if m.is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Result of an equivariant-hom computation with a stabilization check.
#[derive(Clone, Debug, Serialize)]
pub struct SchurWeylRun {
    pub domain: String,
    pub d: usize,
    pub n: usize,
    pub generator_count: usize,
    pub dimension: usize,
    pub doubled_generator_count: usize,
    pub doubled_dimension: usize,
    pub stable: bool,
    pub permutation_span_dim: usize,
    pub contains_permutations: bool,
    pub factorial: usize,
}

/// Equivariant homs for seeded generators, re-solved with twice as many
/// generators to check that the dimension has stabilized.
pub fn schur_weyl_run(domain: &Domain, d: usize, n: usize, count: usize, seed: u64) -> Result<SchurWeylRun> {
    let gens = seeded_generators(domain, d, count, seed)?;
    let doubled = seeded_generators(domain, d, 2 * count, seed)?;
    schur_weyl_from(domain, d, n, gens, doubled)
}

/// Equivariant homs for the whole of `GL_d(F_q)`.
pub fn schur_weyl_full_group(domain: &Domain, d: usize, n: usize) -> Result<SchurWeylRun> {
    let gens = general_linear_group(domain, d)?;
    schur_weyl_from(domain, d, n, gens.clone(), gens)
}

fn schur_weyl_from(
    domain: &Domain,
    d: usize,
    n: usize,
    gens: Vec<ExactMatrix>,
    doubled: Vec<ExactMatrix>,
) -> Result<SchurWeylRun> {
    let homs = equivariant_homs(&gens, n, Codomain::TensorPower)?;
    let homs2 = if doubled.len() == gens.len() {
        homs.clone()
    } else {
        equivariant_homs(&doubled, n, Codomain::TensorPower)?
    };
    let mut contains = true;
    for s in Permutation::all(n) {
        contains &= homs.spans(&permutation_operator(domain, d, &s)?)?;
    }
    Ok(SchurWeylRun {
        domain: domain.to_string(),
        d,
        n,
        generator_count: gens.len(),
        dimension: homs.dim(),
        doubled_generator_count: doubled.len(),
        doubled_dimension: homs2.dim(),
        stable: homs.dim() == homs2.dim(),
        permutation_span_dim: symmetric_group_image_dim(d, n, domain)?,
        contains_permutations: contains,
        factorial: (1..=n).product(),
    })
}
