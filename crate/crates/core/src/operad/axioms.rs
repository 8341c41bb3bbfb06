use rayon::prelude::*;
use serde::Serialize;

use super::Operad;
use crate::error::Result;
use crate::permutation::Permutation;

/// One axiom family tested over a finite set of instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub instances: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub operad: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Runs `test` on every instance in parallel and keeps the first failure in
/// instance order, so the witness does not depend on scheduling.
pub(crate) fn run_check<T: Sync>(
    name: &str,
    instances: &[T],
    test: impl Fn(&T) -> Option<String> + Sync,
) -> AxiomCheck {
    let witness = instances.par_iter().map(&test).find_first(|w| w.is_some()).flatten();
    AxiomCheck {
        name: name.to_string(),
        instances: instances.len(),
        pass: witness.is_none(),
        witness,
    }
}

fn show<T: std::fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error {}", e.name()),
    }
}

/// Compares two computed sides, producing a witness on mismatch.
fn compare<T: PartialEq + std::fmt::Display>(label: String, lhs: Result<T>, rhs: Result<T>) -> Option<String> {
    match (&lhs, &rhs) {
        (Ok(a), Ok(b)) if a == b => None,
        _ => Some(format!("{label}: lhs = {}, rhs = {}", show(&lhs), show(&rhs))),
    }
}

/// `σ'` with `(σ·w1) ∘_i w2 = σ'·(w1 ∘_j w2)` where `j = σ⁻¹(i)` and `n = arity(w2)`.
pub(crate) fn left_block_permutation(sigma: &Permutation, i: usize, n: usize) -> Permutation {
    let m = sigma.len();
    let j = sigma.inverse().apply(i);
    let total = m + n - 1;
    let mut images = vec![0; total];
    let shift = |v: usize| if v < i { v } else { v + n - 1 };
    for k in 1..=m {
        if k == j {
            continue;
        }
        let pos = if k < j { k } else { k + n - 1 };
        images[pos - 1] = shift(sigma.apply(k));
    }
    for t in 0..n {
        images[j + t - 1] = i + t;
    }
    Permutation::new(images).expect("block permutation is a bijection")
}

/// `τ'` with `w1 ∘_i (τ·w2) = τ'·(w1 ∘_i w2)` for `m = arity(w1)`.
pub(crate) fn right_block_permutation(tau: &Permutation, i: usize, m: usize) -> Permutation {
    let n = tau.len();
    let images = (1..m + n)
        .map(|k| if k >= i && k < i + n { i - 1 + tau.apply(k - i + 1) } else { k })
        .collect();
    Permutation::new(images).expect("block permutation is a bijection")
}

/// Exhaustively tests the operad axioms on enumerated elements.
///
/// Every arity involved in an instance, including the arity of the
/// composite, is at most `arity_bound`; `size_bound` is passed to
/// [`Operad::enumerate`]. Empty components are skipped.
pub fn check_operad_axioms<P: Operad>(p: &P, arity_bound: usize, size_bound: usize) -> AxiomReport {
    let elems: Vec<Vec<P::Element>> = (0..=arity_bound).map(|a| p.enumerate(a, size_bound)).collect();
    let all = |a: usize| elems[a].iter();
    let perms: Vec<Vec<Permutation>> = (0..=arity_bound).map(Permutation::all).collect();
    let unit = p.unit();
    let mut checks = Vec::new();

    // Sequential associativity.
    let mut seq = Vec::new();
    for m in 1..=arity_bound {
        for n in 1..=arity_bound {
            for k in 0..=arity_bound {
                if m + n + k < 2 || m + n + k - 2 > arity_bound || m + n - 1 > arity_bound || n + k - 1 > arity_bound {
                    continue;
                }
                for w1 in all(m) {
                    for w2 in all(n) {
                        for w3 in all(k) {
                            for i in 1..=m {
                                for j in 1..=n {
                                    seq.push((w1, i, w2, j, w3));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(run_check("sequential associativity", &seq, |&(w1, i, w2, j, w3)| {
        let lhs = p.compose_at(w1, i, w2).and_then(|x| p.compose_at(&x, i + j - 1, w3));
        let rhs = p.compose_at(w2, j, w3).and_then(|x| p.compose_at(w1, i, &x));
        compare(format!("({w1} ∘_{i} {w2}) ∘_{} {w3} vs {w1} ∘_{i} ({w2} ∘_{j} {w3})", i + j - 1), lhs, rhs)
    }));
    drop(seq);

    // Parallel composition in disjoint slots i < k.
    let mut par = Vec::new();
    for m in 2..=arity_bound {
        for n in 0..=arity_bound {
            for l in 0..=arity_bound {
                if m + n + l < 2 || m + n + l - 2 > arity_bound || m + n - 1 > arity_bound || m + l - 1 > arity_bound {
                    continue;
                }
                for w1 in all(m) {
                    for w2 in all(n) {
                        for w3 in all(l) {
                            for i in 1..=m {
                                for k in i + 1..=m {
                                    par.push((w1, i, w2, k, w3));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(run_check("parallel composition", &par, |&(w1, i, w2, k, w3)| {
        let n = p.arity(w2);
        let lhs = p.compose_at(w1, i, w2).and_then(|x| p.compose_at(&x, k + n - 1, w3));
        let rhs = p.compose_at(w1, k, w3).and_then(|x| p.compose_at(&x, i, w2));
        compare(format!("({w1} ∘_{i} {w2}) ∘_{} {w3} vs ({w1} ∘_{k} {w3}) ∘_{i} {w2}", k + n - 1), lhs, rhs)
    }));
    drop(par);

    // Unit laws.
    let mut units = Vec::new();
    for a in 0..=arity_bound {
        for w in all(a) {
            units.push((w, 0));
            for i in 1..=a {
                units.push((w, i));
            }
        }
    }
    checks.push(run_check("unit laws", &units, |&(w, i)| {
        if i == 0 {
            compare(format!("1 ∘_1 {w} vs {w}"), p.compose_at(&unit, 1, w), Ok(w.clone()))
        } else {
            compare(format!("{w} ∘_{i} 1 vs {w}"), p.compose_at(w, i, &unit), Ok(w.clone()))
        }
    }));

    // The symmetric groups act.
    let mut action = Vec::new();
    for a in 0..=arity_bound {
        for w in all(a) {
            for s in &perms[a] {
                for t in &perms[a] {
                    action.push((w, s, t));
                }
            }
        }
    }
    checks.push(run_check("symmetric action", &action, |&(w, s, t)| {
        if t.is_identity() {
            if let Some(x) = compare(format!("id·{w} vs {w}"), p.act(t, w), Ok(w.clone())) {
                return Some(x);
            }
        }
        let lhs = p.act(t, w).and_then(|x| p.act(s, &x));
        let rhs = p.act(&s.compose(t), w);
        compare(format!("{s}·({t}·{w}) vs ({s}∘{t})·{w}"), lhs, rhs)
    }));

    // Equivariance in the outer and inner argument.
    let mut left = Vec::new();
    let mut right = Vec::new();
    for m in 1..=arity_bound {
        for n in 0..=arity_bound + 1 - m {
            for w1 in all(m) {
                for w2 in all(n) {
                    for i in 1..=m {
                        for s in &perms[m] {
                            left.push((w1, s, i, w2));
                        }
                        for t in &perms[n] {
                            right.push((w1, i, t, w2));
                        }
                    }
                }
            }
        }
    }
    checks.push(run_check("left equivariance", &left, |&(w1, s, i, w2)| {
        let n = p.arity(w2);
        let j = s.inverse().apply(i);
        let lhs = p.act(s, w1).and_then(|x| p.compose_at(&x, i, w2));
        let sp = left_block_permutation(s, i, n);
        let rhs = p.compose_at(w1, j, w2).and_then(|x| p.act(&sp, &x));
        compare(format!("({s}·{w1}) ∘_{i} {w2} vs {sp}·({w1} ∘_{j} {w2})"), lhs, rhs)
    }));
    checks.push(run_check("right equivariance", &right, |&(w1, i, t, w2)| {
        let m = p.arity(w1);
        let lhs = p.act(t, w2).and_then(|x| p.compose_at(w1, i, &x));
        let tp = right_block_permutation(t, i, m);
        let rhs = p.compose_at(w1, i, w2).and_then(|x| p.act(&tp, &x));
        compare(format!("{w1} ∘_{i} ({t}·{w2}) vs {tp}·({w1} ∘_{i} {w2})"), lhs, rhs)
    }));

    AxiomReport {
        operad: p.name(),
        checks,
    }
}
