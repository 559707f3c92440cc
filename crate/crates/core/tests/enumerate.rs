mod common;

use std::time::Instant;

use common::*;
use reflexa::*;

/// Number of multisets of indecomposables (given by their dimensions) with
/// total dimension in `1..=n`.
fn multisets(ind: &[usize], n: usize) -> usize {
    // coin-change count over ordered kinds
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for &d in ind {
        for t in d..=n {
            ways[t] += ways[t - d];
        }
    }
    ways[1..].iter().sum()
}

fn check(a: &std::sync::Arc<Algebra>, ind_dims: &[usize], n: usize) {
    let t = Instant::now();
    let u = enumerate_modules(a, Side::Left, n, DEFAULT_BUDGET).unwrap();
    let mut got: Vec<usize> = u.indecomposables().map(|m| m.dim()).collect();
    got.sort();
    let mut want: Vec<usize> = ind_dims.iter().copied().filter(|&d| d <= n).collect();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(u.modules.len(), multisets(&want, n));
    eprintln!("enumerated {} modules in {:?}", u.modules.len(), t.elapsed());
}

#[test]
fn path_algebra_a2() {
    check(&a2(f2()), &[1, 1, 2], 4);
}

#[test]
fn truncated_polynomials() {
    check(&truncated(f2(), 2), &[1, 2], 4);
    check(&truncated(f2(), 3), &[1, 2, 3], 4);
}

#[test]
fn a3_linear() {
    let q = Quiver::from_triples(3, &[("a", 0, 1), ("b", 1, 2)]).unwrap();
    let a = Algebra::bound_quiver(f2(), q, &[]).unwrap();
    check(&a, &[1, 1, 1, 2, 2, 3], 4);
}

#[test]
fn local_rad_square_zero() {
    let a = rad_square_zero_two_loops(f2());
    let t = Instant::now();
    let u = enumerate_modules(&a, Side::Left, 4, DEFAULT_BUDGET).unwrap();
    eprintln!("k[x,y]/(x,y)^2: {} modules, {} indecomposable, {:?}", u.modules.len(), u.indecomposables().count(), t.elapsed());
    // every module is determined up to iso by a Kronecker representation
    let ind: Vec<usize> = u.indecomposables().map(|m| m.dim()).collect();
    assert_eq!(ind.iter().filter(|&&d| d == 1).count(), 1);
    assert_eq!(ind.iter().filter(|&&d| d == 3).count(), 2);
}

#[test]
fn random_algebras_are_seeded() {
    let a = random_monomial_algebra(f2(), 7, 8).unwrap();
    let b = random_monomial_algebra(f2(), 7, 8).unwrap();
    assert_eq!(a.fingerprint(), b.fingerprint());
    assert!(a.dim() <= 8);
}
