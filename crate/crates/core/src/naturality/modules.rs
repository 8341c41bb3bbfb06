use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{elapsed_ms, NaturalityReport, Subcategory, Survivors};
use crate::error::{Error, Result};
use crate::linalg::{commutant, ExactMatrix};
use crate::scalars::{Domain, Scalar};

/// Largest endomorphism monoid (or product of monoids) checked in full
/// over a composite `Z/m`; larger ones fall back to generators plus a sample.
pub const EXHAUSTIVE_MORPHISM_LIMIT: u128 = 4096;
/// Largest number of candidate maps enumerated over a composite `Z/m`.
const CANDIDATE_LIMIT: u128 = 1 << 22;
const SAMPLE_SIZE: usize = 1000;
const SAMPLE_SEED: u64 = 0;

/// Generators of the multiplicative monoid of `r x r` matrices over a
/// finite ring: elementary matrices `E_ij`, scalars `c·I`, transvections
/// `I + c·E_ij` and diagonal matrices with one entry `c` (including the
/// coordinate-killing `c = 0`).
fn generator_family(domain: &Domain, r: usize) -> Vec<ExactMatrix> {
    let elements = domain.elements().expect("finite ring");
    let id = ExactMatrix::identity(domain, r);
    let mut out = Vec::new();
    let mut push = |m: ExactMatrix| {
        if !out.contains(&m) {
            out.push(m);
        }
    };
    for i in 0..r {
        for j in 0..r {
            let mut e = ExactMatrix::zeros(domain, r, r);
            e.set(i, j, domain.one()).expect("in range");
            push(e);
        }
    }
    for c in &elements {
        push(id.scale(c));
        for i in 0..r {
            let mut d = id.clone();
            d.set(i, i, c.clone()).expect("in range");
            push(d);
            for j in (0..r).filter(|&j| j != i) {
                let mut t = id.clone();
                t.set(i, j, c.clone()).expect("in range");
                push(t);
            }
        }
    }
    out
}

/// Every `r x r` matrix over a finite ring, by entry encoding.
fn all_matrices(domain: &Domain, r: usize) -> Vec<ExactMatrix> {
    let elements = domain.elements().expect("finite ring");
    let q = elements.len() as u64;
    let total = q.pow((r * r) as u32);
    (0..total)
        .map(|mut c| {
            let mut entries = vec![domain.zero(); r * r];
            for slot in entries.iter_mut().rev() {
                *slot = elements[(c % q) as usize].clone();
                c /= q;
            }
            ExactMatrix::new(domain.clone(), r, r, entries).expect("shape")
        })
        .collect()
}

fn random_matrix(domain: &Domain, r: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let elements = domain.elements().expect("finite ring");
    let entries = (0..r * r).map(|_| elements[rng.gen_range(0..elements.len())].clone()).collect();
    ExactMatrix::new(domain.clone(), r, r, entries).expect("shape")
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Zmod(r) => r.value(),
        _ => unreachable!("composite rings are Z/m"),
    }
}

fn to_u64(m: &ExactMatrix) -> Vec<u64> {
    m.entries().iter().map(residue).collect()
}

/// Whether `A Φ = Φ B` for a row-major `cod x dom` matrix `Φ`.
fn commutes_mod(m: u64, cod: usize, dom: usize, phi: &[u64], a: &[u64], b: &[u64]) -> bool {
    for o in 0..cod {
        for i in 0..dom {
            let lhs = (0..cod).fold(0, |acc, t| (acc + a[o * cod + t] * phi[t * dom + i]) % m);
            let rhs = (0..dom).fold(0, |acc, t| (acc + phi[o * dom + t] * b[t * dom + i]) % m);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Every `Φ` over `Z/m` with `AΦ = ΦB` for all pairs, by enumeration.
fn enumerate_commutant(domain: &Domain, cod: usize, dom: usize, pairs: &[(ExactMatrix, ExactMatrix)]) -> Result<Vec<ExactMatrix>> {
    let m = domain.size().expect("finite ring");
    let cells = cod * dom;
    let candidates = (m as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if candidates > CANDIDATE_LIMIT {
        return Err(Error::BoundExceeded(format!("{m}^{cells} candidate maps exceed {CANDIDATE_LIMIT}")));
    }
    let raw: Vec<(Vec<u64>, Vec<u64>)> = pairs.iter().map(|(a, b)| (to_u64(a), to_u64(b))).collect();
    let survivors: Vec<Vec<u64>> = (0..candidates as u64)
        .into_par_iter()
        .filter_map(|mut c| {
            let mut phi = vec![0u64; cells];
            for slot in phi.iter_mut().rev() {
                *slot = c % m;
                c /= m;
            }
            raw.iter().all(|(a, b)| commutes_mod(m, cod, dom, &phi, a, b)).then_some(phi)
        })
        .collect();
    survivors
        .into_iter()
        .map(|phi| {
            let entries = phi.into_iter().map(|v| domain.from_i64(v as i64)).collect();
            ExactMatrix::new(domain.clone(), cod, dom, entries)
        })
        .collect()
}

/// Re-checks `AΦ = ΦB` with exact matrix arithmetic.
fn reverify(survivors: &[ExactMatrix], pairs: &[(ExactMatrix, ExactMatrix)]) -> bool {
    survivors.iter().all(|phi| {
        pairs.iter().all(|(a, b)| match (a.mul(phi), phi.mul(b)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        })
    })
}

struct Solved {
    survivors: Survivors,
    count: Option<u128>,
    reverified: bool,
}

fn field_count(domain: &Domain, dim: usize) -> Option<u128> {
    domain.size().and_then(|q| (q as u128).checked_pow(dim as u32))
}

/// Solves over a field (linear algebra) or a composite ring (enumeration),
/// and re-checks the result against `check_pairs`.
fn solve(
    domain: &Domain,
    cod: usize,
    dom: usize,
    pairs: &[(ExactMatrix, ExactMatrix)],
    check_pairs: &[(ExactMatrix, ExactMatrix)],
) -> Result<Solved> {
    if domain.is_field() {
        let basis = commutant(domain, cod, dom, pairs)?.basis;
        Ok(Solved {
            count: field_count(domain, basis.len()),
            reverified: reverify(&basis, check_pairs),
            survivors: Survivors::Basis(basis),
        })
    } else {
        let elements = enumerate_commutant(domain, cod, dom, pairs)?;
        Ok(Solved {
            count: Some(elements.len() as u128),
            reverified: reverify(&elements, check_pairs),
            survivors: Survivors::Elements(elements),
        })
    }
}

fn check_ring(domain: &Domain) -> Result<u128> {
    match domain.size() {
        Some(q) => Ok(q as u128),
        None => Err(Error::UnsupportedDomain("natural maps are computed over finite rings only".into())),
    }
}

/// The morphisms imposed for `r x r` matrices: all of them when feasible or
/// over a field (where the generating family suffices), otherwise the
/// generating family followed by a seeded random sample.
fn module_morphisms(domain: &Domain, r: usize) -> Result<(Vec<ExactMatrix>, Vec<ExactMatrix>, bool, String)> {
    let q = check_ring(domain)?;
    let total = q.checked_pow((r * r) as u32).unwrap_or(u128::MAX);
    let family = generator_family(domain, r);
    if domain.is_field() {
        let check = if total <= EXHAUSTIVE_MORPHISM_LIMIT { all_matrices(domain, r) } else { family.clone() };
        return Ok((family, check, true, "linear solve over generators of the matrix monoid".into()));
    }
    if total <= EXHAUSTIVE_MORPHISM_LIMIT {
        let all = all_matrices(domain, r);
        // generators first so that most candidates fail early
        let rest: Vec<ExactMatrix> = all.iter().filter(|m| !family.contains(m)).cloned().collect();
        let mut ordered = family;
        ordered.extend(rest);
        return Ok((ordered, all, true, "exhaustive intersection over all endomorphisms".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut sample = family.clone();
    sample.extend((0..SAMPLE_SIZE).map(|_| random_matrix(domain, r, &mut rng)));
    Ok((
        sample.clone(),
        sample,
        false,
        "generator-based (sound but possibly over-approximating)".into(),
    ))
}

/// Natural maps `(R^r)^{⊗n} -> R^r` for the identity functor of
/// `R`-modules, restricted to the object `R^r` and its endomorphisms.
pub fn central_module(domain: &Domain, r: usize, n: usize) -> Result<NaturalityReport> {
    let start = Instant::now();
    if r == 0 {
        return Err(Error::ShapeMismatch("module rank must be positive".into()));
    }
    let (morphisms, check, complete, method) = module_morphisms(domain, r)?;
    let to_pair = |f: &ExactMatrix| -> Result<(ExactMatrix, ExactMatrix)> { Ok((f.clone(), f.kron_power(n)?)) };
    let pairs = morphisms.iter().map(to_pair).collect::<Result<Vec<_>>>()?;
    let check_pairs = check.iter().map(to_pair).collect::<Result<Vec<_>>>()?;
    let solved = solve(domain, r, r.pow(n as u32), &pairs, &check_pairs)?;
    Ok(NaturalityReport {
        context: format!("identity functor of {domain}-modules"),
        arity: n,
        subcategory: Subcategory { objects: vec![format!("{domain}^{r}")], morphisms: morphisms.len() },
        labels: Vec::new(),
        survivors: solved.survivors,
        count: solved.count,
        complete,
        method,
        reverified: solved.reverified,
        elapsed_ms: elapsed_ms(start),
    })
}

/// Solutions for one summand `R^r[j₁] ⊗ … ⊗ R^r[jₙ] -> R^r[j₁+…+jₙ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub source_degrees: Vec<i64>,
    pub target_degree: i64,
    pub survivors: Survivors,
    pub count: Option<u128>,
}

impl Serialize for GradedComponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "source_degrees": self.source_degrees,
            "target_degree": self.target_degree,
            "survivor_kind": self.survivors.kind(),
            "survivors": self.survivors.to_json(),
            "count": self.count.map(|c| c.to_string()),
        })
        .serialize(s)
    }
}

fn degree_tuples(j: i64, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (-j..=j).map(move |d| {
                    let mut t = t.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
    }
    out.into_iter().filter(|t| t.iter().sum::<i64>().abs() <= j).collect()
}

/// `(A, B)` for the degree-wise endomorphism `f` on the summand with the
/// given source degrees and target degree.
fn graded_pair(
    f: &dyn Fn(i64) -> ExactMatrix,
    source: &[i64],
    target: i64,
    domain: &Domain,
) -> Result<(ExactMatrix, ExactMatrix)> {
    let b = source
        .iter()
        .try_fold(ExactMatrix::identity(domain, 1), |acc, &d| acc.kron(&f(d)))?;
    Ok((f(target), b))
}

/// [`graded_central_with_rank`] with one copy of `R^{max(n,1)}` per degree.
pub fn graded_central(domain: &Domain, window: i64, n: usize) -> Result<NaturalityReport> {
    graded_central_with_rank(domain, window, n, n.max(1))
}

/// Natural degree-0 maps `M^{⊗n} -> M` for the identity functor of graded
/// `R`-modules, on `M = ⊕_{j=-J..J} R^r` placed in degree `j`, with the
/// degree-preserving endomorphisms of `M` (one matrix per degree). Summands
/// of `M^{⊗n}` whose degree leaves the window map to zero.
pub fn graded_central_with_rank(domain: &Domain, window: i64, n: usize, r: usize) -> Result<NaturalityReport> {
    let start = Instant::now();
    if window < 0 || r == 0 {
        return Err(Error::ShapeMismatch("window must be non-negative and rank positive".into()));
    }
    let q = check_ring(domain)?;
    let total_per_degree = q.checked_pow((r * r) as u32).unwrap_or(u128::MAX);
    let id = ExactMatrix::identity(domain, r);
    let family = generator_family(domain, r);
    let everything = all_matrices_if(domain, r, total_per_degree);
    let mut components = Vec::new();
    let (mut complete, mut reverified, mut morphisms) = (true, true, 0usize);
    let mut count: Option<u128> = Some(1);
    for source in degree_tuples(window, n) {
        let target: i64 = source.iter().sum();
        let degrees: Vec<i64> = source.iter().copied().chain([target]).collect::<BTreeSet<_>>().into_iter().collect();
        let tuples_total = total_per_degree.checked_pow(degrees.len() as u32).unwrap_or(u128::MAX);
        let single = |g: &ExactMatrix, at: i64| {
            let g = g.clone();
            let id = id.clone();
            move |d: i64| if d == at { g.clone() } else { id.clone() }
        };
        // One coordinate varies at a time; this generates the product monoid.
        let mut gens = Vec::new();
        for &d in &degrees {
            for g in &family {
                gens.push(graded_pair(&single(g, d), &source, target, domain)?);
            }
        }
        let (pairs, check) = if domain.is_field() {
            let check = match &everything {
                Some(all) if tuples_total <= EXHAUSTIVE_MORPHISM_LIMIT => {
                    product_pairs(all, &degrees, &source, target, domain)?
                }
                _ => gens.clone(),
            };
            (gens, check)
        } else if let (Some(all), true) = (&everything, tuples_total <= EXHAUSTIVE_MORPHISM_LIMIT) {
            let mut ordered = gens;
            ordered.extend(product_pairs(all, &degrees, &source, target, domain)?);
            (ordered.clone(), ordered)
        } else {
            complete = false;
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let mut sample = gens;
            for _ in 0..SAMPLE_SIZE {
                let maps: Vec<(i64, ExactMatrix)> = degrees.iter().map(|&d| (d, random_matrix(domain, r, &mut rng))).collect();
                let f = |d: i64| maps.iter().find(|(e, _)| *e == d).map(|(_, m)| m.clone()).expect("degree present");
                sample.push(graded_pair(&f, &source, target, domain)?);
            }
            (sample.clone(), sample)
        };
        morphisms += pairs.len();
        let solved = solve(domain, r, r.pow(n as u32), &pairs, &check)?;
        reverified &= solved.reverified;
        count = count.zip(solved.count).and_then(|(a, b)| a.checked_mul(b));
        components.push(GradedComponent { source_degrees: source, target_degree: target, survivors: solved.survivors, count: solved.count });
    }
    let method = if !complete {
        "generator-based (sound but possibly over-approximating)"
    } else if domain.is_field() {
        "degree-wise linear solve over generators of the matrix monoids"
    } else {
        "degree-wise exhaustive intersection"
    };
    Ok(NaturalityReport {
        context: format!("identity functor of graded {domain}-modules"),
        arity: n,
        subcategory: Subcategory {
            objects: vec![format!("⊕_{{j=-{window}..{window}}} {domain}^{r}[j]")],
            morphisms,
        },
        labels: Vec::new(),
        survivors: Survivors::Graded(components),
        count,
        complete,
        method: method.into(),
        reverified,
        elapsed_ms: elapsed_ms(start),
    })
}

fn all_matrices_if(domain: &Domain, r: usize, total: u128) -> Option<Vec<ExactMatrix>> {
    (total <= EXHAUSTIVE_MORPHISM_LIMIT).then(|| all_matrices(domain, r))
}

/// Pairs for every assignment of a matrix to each degree in `degrees`.
fn product_pairs(
    all: &[ExactMatrix],
    degrees: &[i64],
    source: &[i64],
    target: i64,
    domain: &Domain,
) -> Result<Vec<(ExactMatrix, ExactMatrix)>> {
    let k = degrees.len();
    let total = all.len().pow(k as u32);
    (0..total)
        .map(|mut c| {
            let mut choice = vec![0; k];
            for slot in choice.iter_mut().rev() {
                *slot = c % all.len();
                c /= all.len();
            }
            let f = |d: i64| all[choice[degrees.iter().position(|&e| e == d).expect("degree present")]].clone();
            graded_pair(&f, source, target, domain)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Domain {
        Domain::parse_spec(s).unwrap()
    }

    fn is_scalar(m: &ExactMatrix) -> bool {
        let c = m.get(0, 0).clone();
        m.is_square() && *m == ExactMatrix::identity(m.domain(), m.rows()).scale(&c)
    }

    #[test]
    fn generators_cover_small_monoid() {
        // over F_2 the family generates all 16 matrices under products
        let d = ring("2");
        let fam = generator_family(&d, 2);
        let mut closure: Vec<ExactMatrix> = fam.clone();
        loop {
            let mut grew = false;
            for a in closure.clone() {
                for b in &fam {
                    let p = a.mul(b).unwrap();
                    if !closure.contains(&p) {
                        closure.push(p);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        assert_eq!(closure.len(), 16);
    }

    #[test]
    fn field_cases() {
        for spec in ["2", "3"] {
            let d = ring(spec);
            let q = d.size().unwrap() as u128;
            let two = central_module(&d, 2, 2).unwrap();
            assert!(two.survivors.is_empty() && two.count == Some(1) && two.complete && two.reverified);
            let one = central_module(&d, 2, 1).unwrap();
            assert_eq!(one.count, Some(q));
            assert!(is_scalar(&one.survivors.matrices().unwrap()[0]));
            assert_eq!(central_module(&d, 2, 0).unwrap().count, Some(1));
            assert_eq!(central_module(&d, 1, 1).unwrap().count, Some(q));
        }
    }

    #[test]
    fn composite_ring() {
        let d = ring("zmod:4");
        let one = central_module(&d, 2, 1).unwrap();
        let elems = one.survivors.matrices().unwrap();
        assert_eq!(elems.len(), 4);
        assert!(elems.iter().all(is_scalar));
        assert!(one.complete && one.reverified);
        assert_eq!(central_module(&d, 2, 0).unwrap().count, Some(1));
        assert_eq!(central_module(&d, 1, 1).unwrap().count, Some(4));
    }

    #[test]
    fn sampled_fallback_is_labelled() {
        let d = ring("zmod:9");
        let r = central_module(&d, 2, 1).unwrap();
        assert!(!r.complete);
        assert!(r.method.starts_with("generator-based"));
        assert_eq!(r.count, Some(9));
    }

    #[test]
    fn rationals_rejected() {
        assert!(matches!(central_module(&Domain::Rational, 2, 1), Err(Error::UnsupportedDomain(_))));
    }

    #[test]
    fn graded_cases() {
        let d = ring("zmod:2");
        let one = graded_central(&d, 1, 1).unwrap();
        assert_eq!(one.count, Some(8));
        assert!(one.reverified);
        assert_eq!(graded_central(&d, 1, 2).unwrap().count, Some(1));
        assert_eq!(graded_central(&d, 1, 0).unwrap().count, Some(1));
        assert_eq!(graded_central(&d, 0, 1).unwrap().count, central_module(&d, 1, 1).unwrap().count);
        let z4 = ring("zmod:4");
        assert_eq!(graded_central(&z4, 1, 1).unwrap().count, Some(64));
    }
}
