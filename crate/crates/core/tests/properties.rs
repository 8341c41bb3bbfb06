//! Algebraic invariants checked exhaustively on small fields and by
//! property-based sampling elsewhere.

use std::sync::Arc;

use endop_core::linalg::{equivariant_homs, permutation_operator, seeded_generators, Codomain, ExactMatrix};
use endop_core::permutation::Permutation;
use endop_core::qpoly::{eval_poly, Polynomial, QPolynomial, TruncatedSymElement};
use endop_core::scalars::{Domain, FieldDescriptor, FiniteField};
use proptest::prelude::*;

fn small_fields() -> Vec<Arc<FiniteField>> {
    [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]
        .into_iter()
        .map(|(p, k)| FiniteField::new(FieldDescriptor::builtin(p, k).unwrap()))
        .collect()
}

#[test]
fn field_axioms_hold_for_every_field_up_to_sixteen() {
    for f in small_fields() {
        let q = f.q();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q = {q}, a = {a}");
            }
            assert_eq!(f.pow(a, q), a, "a^q = a in F_{q}");
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.frobenius_pow(f.add(a, b), 1), f.add(f.frobenius_pow(a, 1), f.frobenius_pow(b, 1)));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        let order = |a: u64| (1..q).find(|&e| f.pow(a, e) == 1).unwrap();
        assert!((1..q).any(|a| order(a) == q - 1), "F_{q}^* is cyclic");
    }
}

fn rational(rows: usize, cols: usize, entries: &[i64]) -> ExactMatrix {
    let q = Domain::Rational;
    ExactMatrix::new(q.clone(), rows, cols, entries.iter().map(|&x| q.from_i64(x)).collect()).unwrap()
}

fn entries(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, n)
}

fn truncated(field: &Arc<FiniteField>, coeffs: &[u64], cap: u64) -> TruncatedSymElement {
    // c0 + c1 e1 + c2 e2 + c3 e1 e2
    let e1 = TruncatedSymElement::basis(field.clone(), 2, cap, 1).unwrap();
    let e2 = TruncatedSymElement::basis(field.clone(), 2, cap, 2).unwrap();
    let one = TruncatedSymElement::one(field.clone(), 2, cap);
    let q = field.q();
    [one, e1.clone(), e2.clone(), e1.mul(&e2).unwrap()]
        .iter()
        .zip(coeffs)
        .map(|(b, &c)| b.scale(c % q))
        .fold(TruncatedSymElement::zero(field.clone(), 2, cap), |acc, t| acc.add(&t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_functorial(a in entries(4), b in entries(4), c in entries(4), d in entries(4)) {
        let (a, b, c, d) = (rational(2, 2, &a), rational(2, 2, &b), rational(2, 2, &c), rational(2, 2, &d));
        let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_operators_are_always_equivariant(seed in 0u64..1000, n in 1usize..=3) {
        let f3 = Domain::finite(FieldDescriptor::prime(3).unwrap());
        let gens = seeded_generators(&f3, 2, 3, seed).unwrap();
        let homs = equivariant_homs(&gens, n, Codomain::TensorPower).unwrap();
        for sigma in Permutation::all(n) {
            prop_assert!(homs.spans(&permutation_operator(&f3, 2, &sigma).unwrap()).unwrap());
        }
    }

    #[test]
    fn more_generators_never_enlarge_the_solution_space(seed in 0u64..1000, k in 1usize..4) {
        let f3 = Domain::finite(FieldDescriptor::prime(3).unwrap());
        let gens = seeded_generators(&f3, 2, 4, seed).unwrap();
        let few = equivariant_homs(&gens[..k], 2, Codomain::TensorPower).unwrap();
        let all = equivariant_homs(&gens, 2, Codomain::TensorPower).unwrap();
        prop_assert!(all.dim() <= few.dim());
        for m in &all.basis {
            prop_assert!(few.spans(m).unwrap());
        }
    }

    #[test]
    fn evaluation_commutes_with_frobenius(
        field_ix in 0usize..3,
        terms in prop::collection::vec((0u64..4, 0u64..4, 1u64..16), 1..4),
        x in prop::collection::vec(0u64..16, 4),
        y in prop::collection::vec(0u64..16, 4),
    ) {
        let field = small_fields().swap_remove(field_ix);
        let q = field.q();
        let cap = 12;
        let f = terms.iter().fold(Polynomial::zero(field.clone(), 2), |acc, &(a, b, c)| {
            acc.add(&Polynomial::monomial(field.clone(), vec![a, b], c % q)).unwrap()
        });
        let (x, y) = (truncated(&field, &x, cap), truncated(&field, &y, cap));
        let lhs = eval_poly(&f, &[x.clone(), y.clone()]).unwrap().pow(q);
        let rhs = eval_poly(&f, &[x.pow(q), y.pow(q)]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn qpoly_composition_is_substitution(
        field_ix in 0usize..2,
        f_levels in prop::collection::vec(0u32..2, 1..=2),
        g_levels in prop::collection::vec(0u32..2, 1..=2),
        c in 1u64..4,
        slot in 0usize..2,
        x in prop::collection::vec(prop::collection::vec(0u64..4, 4), 3),
    ) {
        let field = small_fields().swap_remove(field_ix);
        let f = QPolynomial::monomial(field.clone(), &f_levels).unwrap();
        let g = QPolynomial::monomial(field.clone(), &g_levels).unwrap()
            .add(&QPolynomial::monomial(field.clone(), &vec![0; g_levels.len()]).unwrap().scale(c % field.q()))
            .unwrap();
        let i = slot % f.arity() + 1;
        let fg = f.compose(i, &g).unwrap();
        prop_assert_eq!(fg.arity(), f.arity() + g.arity() - 1);

        let cap = 16;
        let args: Vec<TruncatedSymElement> = x.iter().map(|v| truncated(&field, v, cap)).collect();
        let args = &args[..fg.arity()];
        let inner = eval_poly(g.as_polynomial(), &args[i - 1..i - 1 + g.arity()]).unwrap();
        let mut outer: Vec<TruncatedSymElement> = args[..i - 1].to_vec();
        outer.push(inner);
        outer.extend_from_slice(&args[i - 1 + g.arity()..]);
        prop_assert_eq!(
            eval_poly(fg.as_polynomial(), args).unwrap(),
            eval_poly(f.as_polynomial(), &outer).unwrap()
        );
    }
}
