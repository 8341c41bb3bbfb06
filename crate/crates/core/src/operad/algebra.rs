use std::fmt::Debug;

use super::axioms::{run_check, AxiomCheck, AxiomReport};
use super::Operad;
use crate::error::Result;
use crate::permutation::Permutation;

/// A finite set on which the elements of an operad act by evaluation.
pub trait Algebra<P: Operad>: Sync {
    type Value: Clone + Eq + Debug + Send + Sync;

    fn name(&self) -> String;

    fn carrier(&self) -> Vec<Self::Value>;

    /// `w(args)`; fails with `IncompleteEvaluation` where undefined.
    fn eval(&self, w: &P::Element, args: &[Self::Value]) -> Result<Self::Value>;
}

fn tuples<T: Clone>(carrier: &[T], arity: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                carrier.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks that evaluation turns the operad structure into composition of
/// functions: units act as identities, `∘_i` is substitution into the
/// `i`-th argument, and `σ·w` permutes arguments.
///
/// Every element of arity at most `arity_bound` from
/// [`Operad::enumerate`] must evaluate on every tuple; otherwise the
/// evaluation error is returned.
pub fn check_algebra_action<P: Operad, A: Algebra<P>>(
    p: &P,
    alg: &A,
    arity_bound: usize,
    size_bound: usize,
) -> Result<AxiomReport> {
    let carrier = alg.carrier();
    let elems: Vec<Vec<P::Element>> = (0..=arity_bound).map(|a| p.enumerate(a, size_bound)).collect();
    let tup: Vec<Vec<Vec<A::Value>>> = (0..=arity_bound).map(|a| tuples(&carrier, a)).collect();
    for (a, ws) in elems.iter().enumerate() {
        for w in ws {
            for t in &tup[a] {
                alg.eval(w, t)?;
            }
        }
    }
    let describe = |r: &Result<A::Value>| match r {
        Ok(v) => format!("{v:?}"),
        Err(e) => format!("error {}", e.name()),
    };
    let compare = |label: String, lhs: Result<A::Value>, rhs: Result<A::Value>| match (&lhs, &rhs) {
        (Ok(a), Ok(b)) if a == b => None,
        _ => Some(format!("{label}: lhs = {}, rhs = {}", describe(&lhs), describe(&rhs))),
    };

    let mut checks: Vec<AxiomCheck> = Vec::new();
    let unit = p.unit();
    checks.push(run_check("unit acts as identity", &tup[1.min(arity_bound)], |t| {
        if t.len() != 1 {
            return None;
        }
        compare(format!("1{t:?}"), alg.eval(&unit, t), Ok(t[0].clone()))
    }));

    let mut comp = Vec::new();
    for m in 1..=arity_bound {
        for n in 0..=arity_bound + 1 - m {
            for w1 in &elems[m] {
                for w2 in &elems[n] {
                    for i in 1..=m {
                        for t in &tup[m + n - 1] {
                            comp.push((w1, i, w2, t));
                        }
                    }
                }
            }
        }
    }
    checks.push(run_check("composition is substitution", &comp, |&(w1, i, w2, t)| {
        let n = p.arity(w2);
        let lhs = p.compose_at(w1, i, w2).and_then(|w| alg.eval(&w, t));
        let rhs = alg.eval(w2, &t[i - 1..i - 1 + n]).and_then(|inner| {
            let mut outer = t[..i - 1].to_vec();
            outer.push(inner);
            outer.extend_from_slice(&t[i - 1 + n..]);
            alg.eval(w1, &outer)
        });
        compare(format!("({w1} ∘_{i} {w2}){t:?}"), lhs, rhs)
    }));

    let mut equi = Vec::new();
    for a in 0..=arity_bound {
        let perms = Permutation::all(a);
        for w in &elems[a] {
            for s in &perms {
                for t in &tup[a] {
                    equi.push((w, s.clone(), t));
                }
            }
        }
    }
    checks.push(run_check("equivariance", &equi, |(w, s, t)| {
        let lhs = p.act(s, w).and_then(|x| alg.eval(&x, t));
        let permuted: Vec<A::Value> = (1..=t.len()).map(|k| t[s.apply(k) - 1].clone()).collect();
        compare(format!("({s}·{w}){t:?}"), lhs, alg.eval(w, &permuted))
    }));

    Ok(AxiomReport {
        operad: format!("{} acting on {}", p.name(), alg.name()),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{PermElement, PermOperad};

    struct Projections(usize);

    impl Algebra<PermOperad> for Projections {
        type Value = usize;
        fn name(&self) -> String {
            format!("[{}]", self.0)
        }
        fn carrier(&self) -> Vec<usize> {
            (0..self.0).collect()
        }
        fn eval(&self, w: &PermElement, args: &[usize]) -> Result<usize> {
            Ok(w.apply(args))
        }
    }

    #[test]
    fn perm_acts_by_projections() {
        for size in 1..=3 {
            let r = check_algebra_action(&PermOperad::new(), &Projections(size), 3, 0).unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }
}
