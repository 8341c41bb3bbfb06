use std::time::Instant;

use rayon::prelude::*;

use super::{elapsed_ms, NaturalityReport, Subcategory, Survivors};
use crate::error::{Error, Result};
use crate::finite::FiniteFunction;
use crate::operad::{decode_tuple as decode, encode_tuple as encode, TabulatedOp};

/// The first `(f, tuple)` with `φ(f(a₁), …, f(aₙ)) ≠ f(φ(a))`, if any.
fn first_violation(phi: &FiniteFunction, carrier: usize, arity: usize, morphisms: &[FiniteFunction]) -> Option<(usize, usize)> {
    for (k, f) in morphisms.iter().enumerate() {
        for code in 0..phi.domain_size() {
            let a = decode(carrier, arity, code);
            let fa: Vec<usize> = a.iter().map(|&x| f.apply(x)).collect();
            if phi.apply(encode(carrier, &fa)) != f.apply(phi.apply(code)) {
                return Some((k, code));
            }
        }
    }
    None
}

/// Maps `X^n -> X` (`X = {0..carrier}`) commuting with every given
/// endomorphism of `X`, by enumerating all `carrier^(carrier^n)` candidates.
pub fn natural_maps_bruteforce(
    carrier: usize,
    arity: usize,
    morphisms: &[FiniteFunction],
    candidate_limit: u128,
) -> Result<Vec<FiniteFunction>> {
    let tuples = (carrier as u128).pow(arity as u32);
    let candidates = (carrier as u128).checked_pow(tuples as u32).unwrap_or(u128::MAX);
    if candidates > candidate_limit {
        return Err(Error::BoundExceeded(format!("{carrier}^{tuples} candidate maps exceed {candidate_limit}")));
    }
    let mut survivors: Vec<FiniteFunction> = (0..candidates as u64)
        .into_par_iter()
        .filter_map(|mut c| {
            let mut table = vec![0; tuples as usize];
            for slot in table.iter_mut().rev() {
                *slot = (c % carrier as u64) as usize;
                c /= carrier as u64;
            }
            let phi = FiniteFunction::new(carrier, table).ok()?;
            first_violation(&phi, carrier, arity, morphisms).is_none().then_some(phi)
        })
        .collect();
    survivors.sort();
    Ok(survivors)
}

/// `Some(i)` when `φ` is the projection onto coordinate `i` (one-based).
pub fn projection_index(phi: &FiniteFunction, carrier: usize, arity: usize) -> Option<usize> {
    (1..=arity).find(|&i| (0..phi.domain_size()).all(|c| phi.apply(c) == decode(carrier, arity, c)[i - 1]))
}

fn labels(survivors: &[FiniteFunction], n: usize) -> Vec<String> {
    survivors
        .iter()
        .map(|phi| match projection_index(phi, n, n) {
            Some(1) if n == 1 => "id".to_string(),
            Some(i) => format!("π{i}"),
            None => "other".to_string(),
        })
        .collect()
}

fn set_report(n: usize, survivors: Vec<FiniteFunction>, method: &str, endos: &[FiniteFunction], start: Instant) -> NaturalityReport {
    let reverified = survivors.iter().all(|phi| first_violation(phi, n, n, endos).is_none());
    let count = Some(survivors.len() as u128);
    NaturalityReport {
        context: "identity functor of finite sets".into(),
        arity: n,
        subcategory: Subcategory { objects: vec![format!("[{n}]")], morphisms: endos.len() },
        labels: labels(&survivors, n),
        survivors: Survivors::Functions(survivors),
        count,
        complete: true,
        method: method.into(),
        reverified,
        elapsed_ms: elapsed_ms(start),
    }
}

/// All maps `[n]^n -> [n]` commuting with every endomap of `[n]`, by
/// enumerating every candidate; `n ≤ 2`.
pub fn central_set_bruteforce(n: usize) -> Result<NaturalityReport> {
    if n > 2 {
        return Err(Error::BoundExceeded(format!("brute force over [n]^n -> [n] needs n <= 2, got {n}")));
    }
    let start = Instant::now();
    let endos = FiniteFunction::all(n, n);
    let survivors = natural_maps_bruteforce(n, n, &endos, 1 << 20)?;
    Ok(set_report(n, survivors, "exhaustive enumeration of candidate maps", &endos, start))
}

/// For each value `v` of `φ` on the tuple `(0, 1, …, n-1)` of distinct
/// elements, builds the unique candidate compatible with the endomap
/// `k ↦ a_k` (so `φ(a) = a_v`), then checks full naturality; `n ≤ 4`.
pub fn central_set_determined(n: usize) -> Result<NaturalityReport> {
    if n > 4 {
        return Err(Error::BoundExceeded(format!("determination check needs n <= 4, got {n}")));
    }
    let start = Instant::now();
    let endos = FiniteFunction::all(n, n);
    let tuples = n.pow(n as u32);
    let survivors: Vec<FiniteFunction> = (0..n)
        .filter_map(|v| {
            let table = (0..tuples).map(|c| decode(n, n, c)[v]).collect();
            let phi = FiniteFunction::new(n, table).expect("values in range");
            first_violation(&phi, n, n, &endos).is_none().then_some(phi)
        })
        .collect();
    Ok(set_report(n, survivors, "value on the generic tuple, then full naturality check", &endos, start))
}

/// The component on `{0..x}` of the natural transformation whose component
/// on `[n]` is `phi`: for a tuple `a`, push `φ(0, …, n-1)` along `k ↦ a_k`.
pub fn component_on(phi: &FiniteFunction, n: usize, x: usize) -> Result<TabulatedOp> {
    if n == 0 {
        return Err(Error::ShapeMismatch("arity 0 has no generic tuple".into()));
    }
    let generic: Vec<usize> = (0..n).collect();
    let v = phi.apply(encode(n, &generic));
    TabulatedOp::from_fn(x, n, |a| a[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{perm_compose, Operad, PermElement, TabulatedOperad};

    #[test]
    fn small_cases() {
        assert!(central_set_bruteforce(0).unwrap().survivors.is_empty());
        let one = central_set_bruteforce(1).unwrap();
        assert_eq!(one.labels, ["id"]);
        let two = central_set_bruteforce(2).unwrap();
        assert_eq!(two.labels, ["π1", "π2"]);
        assert!(two.reverified && two.complete);
        assert!(matches!(central_set_bruteforce(3), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn determined_agrees_with_bruteforce() {
        for n in 0..=2 {
            assert_eq!(central_set_determined(n).unwrap().survivors, central_set_bruteforce(n).unwrap().survivors);
        }
        assert_eq!(central_set_determined(3).unwrap().labels, ["π1", "π2", "π3"]);
        assert_eq!(central_set_determined(4).unwrap().survivors.len(), 4);
        assert!(central_set_determined(5).is_err());
    }

    #[test]
    fn survivors_compose_like_perm() {
        let survivors: Vec<Vec<FiniteFunction>> =
            (0..=3).map(|n| central_set_determined(n).unwrap().survivors.functions().unwrap().to_vec()).collect();
        for m in 1..=3 {
            for n in 1..=3 {
                let x = m + n - 1;
                let end = TabulatedOperad { carrier: x };
                for phi in &survivors[m] {
                    for psi in &survivors[n] {
                        for k in 1..=m {
                            let got = end
                                .compose_at(&component_on(phi, m, x).unwrap(), k, &component_on(psi, n, x).unwrap())
                                .unwrap();
                            let pi = PermElement::new(m, projection_index(phi, m, m).unwrap()).unwrap();
                            let pj = PermElement::new(n, projection_index(psi, n, n).unwrap()).unwrap();
                            let expect = perm_compose(&pi, k, &pj).unwrap().tabulate(x).unwrap();
                            assert_eq!(got, expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fewer_morphisms_never_shrink_the_survivors() {
        let all = FiniteFunction::all(2, 2);
        let full = natural_maps_bruteforce(2, 2, &all, 1 << 20).unwrap();
        for mask in 0u32..16 {
            let subset: Vec<FiniteFunction> =
                all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, f)| f.clone()).collect();
            let some = natural_maps_bruteforce(2, 2, &subset, 1 << 20).unwrap();
            assert!(full.iter().all(|f| some.contains(f)));
            for extra in &all {
                let mut bigger = subset.clone();
                bigger.push(extra.clone());
                let fewer = natural_maps_bruteforce(2, 2, &bigger, 1 << 20).unwrap();
                assert!(fewer.iter().all(|f| some.contains(f)));
            }
        }
    }
}
