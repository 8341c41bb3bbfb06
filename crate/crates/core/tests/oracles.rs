//! Independent oracles for the frozen values the library relies on.

use endop_core::checks::{fixture_monoids, F2_GL2_TENSOR_SQUARE_DIM};
use endop_core::linalg::{schur_weyl_full_group, ExactMatrix};
use endop_core::naturality::FiniteMonoidTable;
use endop_core::scalars::{Domain, FieldDescriptor};

/// 4×4 matrices over F_2 as row bitmasks.
type M4 = [u8; 4];

fn mul4(a: &M4, b: &M4) -> M4 {
    let mut out = [0u8; 4];
    for i in 0..4 {
        for k in 0..4 {
            if a[i] >> k & 1 == 1 {
                out[i] ^= b[k];
            }
        }
    }
    out
}

#[test]
fn f2_tensor_square_commutant_by_brute_force() {
    // GL_2(F_2): 2×2 bit matrices with odd determinant.
    let mut gl2 = Vec::new();
    for bits in 0u8..16 {
        let g = [[bits & 1, bits >> 1 & 1], [bits >> 2 & 1, bits >> 3 & 1]];
        if (g[0][0] * g[1][1] + g[0][1] * g[1][0]) % 2 == 1 {
            gl2.push(g);
        }
    }
    assert_eq!(gl2.len(), 6);
    // g ⊗ g with row index 2i + k and column index 2j + l.
    let squares: Vec<M4> = gl2
        .iter()
        .map(|g| {
            let mut m = [0u8; 4];
            for i in 0..2 {
                for k in 0..2 {
                    for j in 0..2 {
                        for l in 0..2 {
                            m[2 * i + k] |= (g[i][j] & g[k][l]) << (2 * j + l);
                        }
                    }
                }
            }
            m
        })
        .collect();
    let count = (0u32..1 << 16)
        .filter(|&bits| {
            let phi: M4 = [0, 1, 2, 3].map(|r| (bits >> (4 * r) & 0xf) as u8);
            squares.iter().all(|s| mul4(&phi, s) == mul4(s, &phi))
        })
        .count();
    assert!(count.is_power_of_two());
    let dim = count.trailing_zeros() as usize;
    assert_eq!(dim, F2_GL2_TENSOR_SQUARE_DIM);

    let f2 = Domain::finite(FieldDescriptor::prime(2).unwrap());
    assert_eq!(schur_weyl_full_group(&f2, 2, 2).unwrap().dimension, dim);
}

fn is_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.clone();
        let x = rest.remove(k);
        for mut p in permutations(rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Unit-preserving relabelling `p` with `p(a·b) = p(a)·p(b)`.
fn isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    n == b.len()
        && permutations((1..n).collect()).into_iter().any(|rest| {
            let p: Vec<usize> = std::iter::once(0).chain(rest).collect();
            (0..n).all(|x| (0..n).all(|y| p[a[x][y]] == b[p[x]][p[y]]))
        })
}

/// Every unital multiplication on `{0..n}` with unit 0.
fn all_monoids(n: usize) -> Vec<Vec<Vec<usize>>> {
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for code in 0..n.pow(free.len() as u32) {
        let mut t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| if a == 0 { b } else if b == 0 { a } else { 0 }).collect()).collect();
        let mut c = code;
        for &(a, b) in &free {
            t[a][b] = c % n;
            c /= n;
        }
        if is_associative(&t) {
            out.push(t);
        }
    }
    out
}

#[test]
fn monoid_fixture_is_complete_up_to_isomorphism() {
    let fixture = fixture_monoids().unwrap();
    for n in 1..=3 {
        let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
        for t in all_monoids(n) {
            if !classes.iter().any(|c| isomorphic(c, &t)) {
                classes.push(t);
            }
        }
        let of_order: Vec<&FiniteMonoidTable> = fixture.iter().filter(|m| m.order() == n).collect();
        assert_eq!(of_order.len(), classes.len(), "order {n}");
        for c in &classes {
            let hits = of_order.iter().filter(|m| isomorphic(m.table(), c)).count();
            assert_eq!(hits, 1, "order {n}: class {c:?}");
        }
    }
}

#[test]
fn kron_matches_entrywise_formula() {
    let q = Domain::Rational;
    let a = ExactMatrix::from_i64(&q, &[&[1, 2, 0], &[-1, 3, 4]]).unwrap();
    let b = ExactMatrix::from_i64(&q, &[&[5, -2], &[0, 7]]).unwrap();
    let k = a.kron(&b).unwrap();
    assert_eq!((k.rows(), k.cols()), (4, 6));
    for i in 0..2 {
        for j in 0..3 {
            for r in 0..2 {
                for s in 0..2 {
                    let want = a.get(i, j).checked_mul(b.get(r, s)).unwrap();
                    assert_eq!(*k.get(2 * i + r, 2 * j + s), want);
                }
            }
        }
    }
}
