use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::operad::{level_vectors, q_power_level, QPolynomial};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalars::FiniteField;

/// A composite of the multiplication `μ` and the power operation `P_q`
/// with leaves labelled by input slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorTree {
    Leaf(usize),
    Mu(Box<GeneratorTree>, Box<GeneratorTree>),
    Power(Box<GeneratorTree>),
}

impl GeneratorTree {
    pub fn mu(a: Self, b: Self) -> Self {
        Self::Mu(Box::new(a), Box::new(b))
    }

    pub fn power(a: Self) -> Self {
        Self::Power(Box::new(a))
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Self::Leaf(i) => out.push(*i),
            Self::Mu(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            Self::Power(a) => a.collect_leaves(out),
        }
    }

    /// Leaf labels from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            Self::Leaf(_) => 0,
            Self::Mu(a, b) => 1 + a.internal_nodes() + b.internal_nodes(),
            Self::Power(a) => 1 + a.internal_nodes(),
        }
    }

    /// The arity, after checking that the leaves are exactly `1..=n`.
    pub fn arity(&self) -> Result<usize> {
        let mut leaves = self.leaves();
        let n = leaves.len();
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(k, &l)| l != k + 1) {
            return Err(Error::MalformedTree(format!("leaves {:?} of {self} are not 1..{n} once each", self.leaves())));
        }
        Ok(n)
    }

    fn eval(&self, field: &Arc<FiniteField>, n: usize) -> Polynomial {
        match self {
            Self::Leaf(i) => Polynomial::variable(field.clone(), n, *i).expect("checked leaf"),
            Self::Mu(a, b) => a.eval(field, n).mul(&b.eval(field, n)).expect("same ring"),
            Self::Power(a) => a.eval(field, n).pow(field.q()),
        }
    }

    /// Every tree obtained by applying one relation (either direction) at
    /// one node, tagged with the relation's name.
    pub fn single_rewrites(&self) -> Vec<(&'static str, GeneratorTree)> {
        let mut out = Vec::new();
        match self {
            Self::Leaf(_) => {}
            Self::Mu(a, b) => {
                out.push(("commutativity", Self::Mu(b.clone(), a.clone())));
                if let Self::Mu(x, y) = &**a {
                    out.push(("associativity", Self::mu((**x).clone(), Self::Mu(y.clone(), b.clone()))));
                }
                if let Self::Mu(y, z) = &**b {
                    out.push(("associativity", Self::mu(Self::Mu(a.clone(), y.clone()), (**z).clone())));
                }
                if let (Self::Power(x), Self::Power(y)) = (&**a, &**b) {
                    out.push(("power of product", Self::power(Self::Mu(x.clone(), y.clone()))));
                }
                for (name, t) in a.single_rewrites() {
                    out.push((name, Self::Mu(Box::new(t), b.clone())));
                }
                for (name, t) in b.single_rewrites() {
                    out.push((name, Self::Mu(a.clone(), Box::new(t))));
                }
            }
            Self::Power(a) => {
                if let Self::Mu(x, y) = &**a {
                    out.push(("power of product", Self::mu(Self::Power(x.clone()), Self::Power(y.clone()))));
                }
                for (name, t) in a.single_rewrites() {
                    out.push((name, Self::power(t)));
                }
            }
        }
        out
    }

    /// All trees with exactly `k` internal nodes, leaves numbered left to right.
    pub fn all_with_internal_nodes(k: usize) -> Vec<GeneratorTree> {
        fn shapes(k: usize) -> Vec<GeneratorTree> {
            if k == 0 {
                return vec![GeneratorTree::Leaf(0)];
            }
            let mut out: Vec<GeneratorTree> = shapes(k - 1).into_iter().map(GeneratorTree::power).collect();
            for left in 0..k {
                for a in shapes(left) {
                    for b in shapes(k - 1 - left) {
                        out.push(GeneratorTree::mu(a.clone(), b));
                    }
                }
            }
            out
        }
        fn number(t: &GeneratorTree, next: &mut usize) -> GeneratorTree {
            match t {
                GeneratorTree::Leaf(_) => {
                    *next += 1;
                    GeneratorTree::Leaf(*next)
                }
                GeneratorTree::Mu(a, b) => {
                    let a = number(a, next);
                    GeneratorTree::mu(a, number(b, next))
                }
                GeneratorTree::Power(a) => GeneratorTree::power(number(a, next)),
            }
        }
        shapes(k).iter().map(|t| number(t, &mut 0)).collect()
    }
}

impl fmt::Display for GeneratorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(i) => write!(f, "{i}"),
            Self::Mu(a, b) => write!(f, "mu({a}, {b})"),
            Self::Power(a) => write!(f, "P({a})"),
        }
    }
}

impl Serialize for GeneratorTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Interprets `μ` as multiplication and `P_q` as the `q`-th power.
pub fn qpoly_from_tree(t: &GeneratorTree, field: Arc<FiniteField>) -> Result<QPolynomial> {
    let n = t.arity()?;
    if n == 0 {
        return Err(Error::MalformedTree("a tree needs at least one leaf".into()));
    }
    QPolynomial::new(t.eval(&field, n))
}

/// A monomial together with a tree that produces it.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratedMonomial {
    pub monomial: String,
    pub tree: GeneratorTree,
    #[serde(skip)]
    pub polynomial: QPolynomial,
}

/// Every monomial `X1^(q^e1) ⋯ Xn^(q^en)` with `q^ei ≤ exp_bound`, each
/// with the witnessing tree `μ(…μ(P^e1(1), P^e2(2))…, P^en(n))`.
pub fn generated_submonomials(n: usize, exp_bound: u64, field: Arc<FiniteField>) -> Result<Vec<GeneratedMonomial>> {
    let q = field.q();
    if q_power_level(exp_bound, q).is_none() {
        return Err(Error::NotQPolynomial(format!("exponent bound {exp_bound} is not a power of {q}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let max_level = q_power_level(exp_bound, q).unwrap_or(0);
    level_vectors(n, max_level)
        .into_iter()
        .map(|levels| {
            let branch = |slot: usize| (0..levels[slot - 1]).fold(GeneratorTree::Leaf(slot), |t, _| GeneratorTree::power(t));
            let tree = (2..=n).fold(branch(1), |t, slot| GeneratorTree::mu(t, branch(slot)));
            let polynomial = qpoly_from_tree(&tree, field.clone())?;
            let expect = QPolynomial::monomial(field.clone(), &levels)?;
            if polynomial != expect {
                return Err(Error::MalformedTree(format!("{tree} gives {polynomial}, expected {expect}")));
            }
            Ok(GeneratedMonomial { monomial: polynomial.to_string(), tree, polynomial })
        })
        .collect()
}

/// Outcome of rewriting every small tree by the relations.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub q: u64,
    pub max_internal_nodes: usize,
    pub trees: usize,
    pub rewrites: usize,
    pub failures: Vec<String>,
}

impl PresentationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that commutativity and associativity of `μ` and
/// `μ∘(P_q⊗P_q) = P_q∘μ` hold as polynomial identities, applied at every
/// node of every tree with at most `max_internal_nodes` internal nodes.
pub fn presentation_soundness(field: Arc<FiniteField>, max_internal_nodes: usize) -> Result<PresentationReport> {
    let mut report = PresentationReport {
        q: field.q(),
        max_internal_nodes,
        trees: 0,
        rewrites: 0,
        failures: Vec::new(),
    };
    for k in 0..=max_internal_nodes {
        for t in GeneratorTree::all_with_internal_nodes(k) {
            report.trees += 1;
            let base = qpoly_from_tree(&t, field.clone())?;
            for (name, r) in t.single_rewrites() {
                report.rewrites += 1;
                let other = qpoly_from_tree(&r, field.clone())?;
                if other != base {
                    report.failures.push(format!("{name}: {t} = {base} but {r} = {other}"));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;
    use GeneratorTree::Leaf;

    fn field(p: u64, k: usize) -> Arc<FiniteField> {
        FiniteField::new(FieldDescriptor::builtin(p, k).unwrap())
    }

    #[test]
    fn tree_examples() {
        let f = field(3, 1);
        assert_eq!(qpoly_from_tree(&Leaf(1), f.clone()).unwrap().to_string(), "X1");
        let m = GeneratorTree::mu(Leaf(1), Leaf(2));
        assert_eq!(qpoly_from_tree(&m, f.clone()).unwrap().to_string(), "X1*X2");
        let lhs = GeneratorTree::mu(GeneratorTree::power(Leaf(1)), GeneratorTree::power(Leaf(2)));
        let rhs = GeneratorTree::power(m);
        let l = qpoly_from_tree(&lhs, f.clone()).unwrap();
        assert_eq!(l, qpoly_from_tree(&rhs, f).unwrap());
        assert_eq!(l.to_string(), "X1^3*X2^3");
    }

    #[test]
    fn malformed() {
        let f = field(2, 1);
        assert!(matches!(
            qpoly_from_tree(&GeneratorTree::mu(Leaf(1), Leaf(1)), f.clone()),
            Err(Error::MalformedTree(_))
        ));
        assert!(qpoly_from_tree(&GeneratorTree::mu(Leaf(1), Leaf(3)), f).is_err());
    }

    #[test]
    fn submonomials() {
        let f = field(2, 2);
        let one = generated_submonomials(1, 4, f.clone()).unwrap();
        assert_eq!(one.iter().map(|g| g.monomial.as_str()).collect::<Vec<_>>(), ["X1", "X1^4"]);
        assert_eq!(one[1].tree, GeneratorTree::power(Leaf(1)));
        assert_eq!(generated_submonomials(2, 4, f.clone()).unwrap().len(), 4);
        let three = generated_submonomials(3, 1, f).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].tree.to_string(), "mu(mu(1, 2), 3)");
    }

    #[test]
    fn tree_counts() {
        // large Schröder numbers
        let counts: Vec<usize> = (0..5).map(|k| GeneratorTree::all_with_internal_nodes(k).len()).collect();
        assert_eq!(counts, [1, 2, 6, 22, 90]);
    }

    #[test]
    fn relations_sound() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let r = presentation_soundness(field(p, k), 4).unwrap();
            assert!(r.pass(), "{:?}", r.failures);
        }
    }
}
