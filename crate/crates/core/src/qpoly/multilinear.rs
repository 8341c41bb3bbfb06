use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::operad::q_power_level;
use super::poly::{eval_poly, Polynomial, TruncatedSymElement};
use crate::error::{Error, Result};
use crate::scalars::FiniteField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Multilinearity {
    Multilinear,
    Fails { witness: String },
}

impl Multilinearity {
    pub fn is_multilinear(&self) -> bool {
        matches!(self, Self::Multilinear)
    }
}

/// Smallest truncation cap accepted by [`multilinearity_check`].
pub fn required_cap(f: &Polynomial) -> u64 {
    f.nvars() as u64 * f.total_degree()
}

/// Tests whether `f` is additive and `F_q`-homogeneous in each argument,
/// evaluated on the basis `e1, …, en` of `V_{n+1}` inside `Sym≤cap(V_{n+1})`:
/// `e_i ↦ e_i + e_{n+1}` for additivity and `e_i ↦ α e_i` for every `α`.
pub fn multilinearity_check(f: &Polynomial, cap: u64) -> Result<Multilinearity> {
    let needed = required_cap(f);
    if cap < needed {
        return Err(Error::CapTooSmall { cap: cap as usize, needed: needed as usize });
    }
    let n = f.nvars();
    let field = f.field().clone();
    let e = |i| TruncatedSymElement::basis(field.clone(), n + 1, cap, i);
    let base: Vec<TruncatedSymElement> = (1..=n).map(e).collect::<Result<_>>()?;
    let extra = e(n + 1)?;
    let value = eval_poly(f, &base)?;
    let show_args = |args: &[TruncatedSymElement]| args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
    for i in 0..n {
        let mut sum_args = base.clone();
        sum_args[i] = base[i].add(&extra)?;
        let mut other_args = base.clone();
        other_args[i] = extra.clone();
        let lhs = eval_poly(f, &sum_args)?;
        let rhs = value.add(&eval_poly(f, &other_args)?)?;
        if lhs != rhs {
            return Ok(Multilinearity::Fails {
                witness: format!("additivity in slot {}: f({}) = {lhs}, expected {rhs}", i + 1, show_args(&sum_args)),
            });
        }
        for alpha in field.elements() {
            let mut args = base.clone();
            args[i] = base[i].scale(alpha);
            let lhs = eval_poly(f, &args)?;
            let rhs = value.scale(alpha);
            if lhs != rhs {
                return Ok(Multilinearity::Fails {
                    witness: format!(
                        "homogeneity in slot {} with scalar {}: f({}) = {lhs}, expected {rhs}",
                        i + 1,
                        field.format(alpha),
                        show_args(&args)
                    ),
                });
            }
        }
    }
    Ok(Multilinearity::Multilinear)
}

/// Whether every exponent of every monomial is a power of `q` (at least 1).
pub fn satisfies_q_power_criterion(f: &Polynomial) -> bool {
    let q = f.field().q();
    f.nvars() > 0 && f.terms().all(|(exps, _)| exps.iter().all(|&a| q_power_level(a, q).is_some()))
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialVerdict {
    pub monomial: String,
    #[serde(flatten)]
    pub verdict: Multilinearity,
    pub q_power_criterion: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub q: u64,
    pub arity: usize,
    pub max_total_degree: u64,
    pub multilinear: Vec<String>,
    pub not_multilinear: Vec<String>,
    pub agrees_with_criterion: bool,
    pub details: Vec<MonomialVerdict>,
}

/// Exponent vectors of length `n` with total degree at most `max`, by total
/// degree and then lexicographically.
fn exponent_vectors(n: usize, max: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, left: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == n {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=max {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Classifies every monomial of total degree at most `max_total_degree` in
/// `n` variables (including exponent 0) by [`multilinearity_check`] at the
/// smallest admissible cap, and compares with the q-power criterion.
pub fn characterize_multilinear(n: usize, max_total_degree: u64, field: Arc<FiniteField>) -> Result<Classification> {
    let details = exponent_vectors(n, max_total_degree)
        .into_par_iter()
        .map(|exps| {
            let f = Polynomial::monomial(field.clone(), exps, 1);
            let verdict = multilinearity_check(&f, required_cap(&f).max(1))?;
            Ok(MonomialVerdict {
                monomial: f.to_string(),
                q_power_criterion: satisfies_q_power_criterion(&f),
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pick = |want: bool| {
        details
            .iter()
            .filter(|d| d.verdict.is_multilinear() == want)
            .map(|d| d.monomial.clone())
            .collect()
    };
    Ok(Classification {
        q: field.q(),
        arity: n,
        max_total_degree,
        multilinear: pick(true),
        not_multilinear: pick(false),
        agrees_with_criterion: details.iter().all(|d| d.verdict.is_multilinear() == d.q_power_criterion),
        details,
    })
}
