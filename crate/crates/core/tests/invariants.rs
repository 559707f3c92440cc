mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use reflexa::certify::sample_maps;
use reflexa::corpus::{auslander_x2, auslander_x3, corpus, linear_a};
use reflexa::refl::{is_reflexive, two_sided_22};
use reflexa::*;

fn scalar_matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, field.from_i64(entries[(i * cols + j) % entries.len()]));
        }
    }
    m
}

fn any_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::prime(2).unwrap()), Just(Field::prime(5).unwrap()), Just(Field::rational())]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rank_nullity(f in any_field(), rows in 1usize..7, cols in 1usize..7, entries in prop::collection::vec(-3i64..4, 49)) {
        let m = scalar_matrix(f, rows, cols, &entries);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.rows(), cols);
        prop_assert!(m.mul(&k.transpose()).is_zero());
        prop_assert_eq!(m.rank() + m.left_kernel_basis().rows(), rows);
        let r = m.rref();
        prop_assert_eq!(r.reduced.rref().reduced, r.reduced.clone());
    }

    #[test]
    fn inverses(f in any_field(), n in 1usize..6, entries in prop::collection::vec(-3i64..4, 36)) {
        let m = scalar_matrix(f, n, n, &entries);
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    // Random representations of the linear A3 quiver.
    #[test]
    fn representation_invariants(
        d in prop::collection::vec(0usize..3, 3),
        e in prop::collection::vec(0usize..3, 3),
        bits in prop::collection::vec(0i64..2, 36),
    ) {
        prop_assume!(d.iter().sum::<usize>() > 0 && e.iter().sum::<usize>() > 0);
        let f = f2();
        let a = linear_a(3).unwrap();
        let rep = |dims: &[usize], shift: usize| {
            let a1 = scalar_matrix(f, dims[0], dims[1], &bits[shift..]);
            let a2 = scalar_matrix(f, dims[1], dims[2], &bits[shift + 9..]);
            Module::from_arrow_matrices(&a, Side::Left, dims.to_vec(), &[("a1".into(), a1), ("a2".into(), a2)]).unwrap()
        };
        let m = rep(&d, 0);
        let n = rep(&e, 18);
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&n.d_dual(), &m.d_dual()).unwrap());
        prop_assert!(is_isomorphic(&m, &m.d_dual().d_dual(), DEFAULT_BUDGET).unwrap().is_some());
        let cap = default_cap(&a);
        let g = grade(&m, cap).unwrap();
        let s = sgrade(&m, cap).unwrap();
        prop_assert!(s.floor() <= g.floor());
        let seq = ab_sequence(&m, DEFAULT_BUDGET).unwrap();
        prop_assert!(seq.alpha.is_injective() && seq.gamma.is_surjective());
        prop_assert_eq!(seq.alpha.rank() + seq.beta.rank(), seq.x.dim());
        prop_assert_eq!(seq.beta.rank() + seq.gamma.rank(), seq.y.dim());
        // the sum decomposes into the summands' homs
        let (sum, _, _) = direct_sum(&a, Side::Left, &[m.clone(), n.clone()]);
        prop_assert_eq!(hom_dim(&sum, &sum).unwrap(),
            hom_dim(&m, &m).unwrap() + hom_dim(&m, &n).unwrap() + hom_dim(&n, &m).unwrap() + hom_dim(&n, &n).unwrap());
    }
}

fn syzygy(m: &Module, n: usize) -> Module {
    let res = min_proj_resolution(m, n).unwrap();
    match n {
        0 => m.clone(),
        1 => res.augmentation.kernel().0,
        // a resolution that stops early has zero higher syzygies
        _ => res.differentials.get(n - 2).map_or_else(|| Module::zero(m.algebra(), m.side()), |d| d.kernel().0),
    }
}

/// On two-sided (2,2) algebras a module of grade at least 2 has strong grade
/// at least 2 and is recovered as `Ext^2(Tr C, Λ)` for its first syzygy `C`.
#[test]
fn grade_two_modules_are_second_extensions() {
    for a in [auslander_x2().unwrap(), auslander_x3().unwrap()] {
        assert!(two_sided_22(&a).unwrap());
        let cap = default_cap(&a);
        let u = enumerate_modules(&a, Side::Left, 4, DEFAULT_BUDGET).unwrap();
        let mut found = 0;
        for x in &u.modules {
            let g = grade(x, cap).unwrap().at_least(2);
            assert_eq!(g, sgrade(x, cap).unwrap().at_least(2));
            if g {
                found += 1;
                let c = syzygy(x, 1);
                let e = ext_module(&transpose(&c).unwrap(), 2).unwrap();
                assert!(is_isomorphic(x, &e, DEFAULT_BUDGET).unwrap().is_some(), "{:?}", x.dims());
            }
        }
        assert!(found > 0);
        let v = enumerate_modules(&a, Side::Right, 3, DEFAULT_BUDGET).unwrap();
        for y in &v.modules {
            assert!(sgrade(&ext_module(y, 2).unwrap(), cap).unwrap().at_least(2));
        }
    }
}

/// `grade E >= n` forces `Ext^i(E, M) = 0` for n-th syzygies `M`, `i < n`.
#[test]
fn grade_kills_low_extensions_into_syzygies() {
    for e in corpus().unwrap().into_iter().take(8) {
        let a = &e.algebra;
        let cap = default_cap(a);
        let u = enumerate_modules(a, Side::Left, 3, DEFAULT_BUDGET).unwrap();
        for n in 1..=2 {
            let graded: Vec<&Module> = u.modules.iter().filter(|m| grade(m, cap).unwrap().at_least(n)).collect();
            let syz: Vec<Module> = u.modules.iter().map(|y| syzygy(y, n)).filter(|m| !m.is_zero()).collect();
            for x in &graded {
                for m in &syz {
                    for i in 0..n {
                        assert_eq!(ext_dim(x, m, i).unwrap(), 0, "{} n={n} i={i}", e.name);
                    }
                }
            }
        }
    }
}

fn kernels_stay_reflexive(refl: &[&Module]) -> bool {
    for x in refl {
        for y in refl {
            for f in sample_maps(x, y, 16).unwrap() {
                if !is_reflexive(&f.kernel().0).unwrap() {
                    return false;
                }
            }
        }
    }
    true
}

/// The kernel lemma: closure of reflexives under kernels, reflexive =
/// second syzygy, and `grade Ext^2(X, Λ) >= 1`, compared on enumerated data.
#[test]
fn kernel_conditions_agree() {
    for e in corpus().unwrap() {
        let a: &Arc<Algebra> = &e.algebra;
        let cap = default_cap(a);
        let u = enumerate_modules(a, Side::Left, 3, DEFAULT_BUDGET).unwrap();
        let grade_ext2 = u.modules.iter().all(|x| grade(&ext_module(x, 2).unwrap(), cap).unwrap().at_least(1));
        let syzygies_reflexive = u.modules.iter().all(|x| is_reflexive(&syzygy(x, 2)).unwrap());
        let refl: Vec<&Module> = u.modules.iter().filter(|m| is_reflexive(m).unwrap()).collect();
        let closed = kernels_stay_reflexive(&refl);
        eprintln!("{}: grade {grade_ext2} syzygies {syzygies_reflexive} kernels {closed}", e.name);
        assert_eq!(grade_ext2, syzygies_reflexive, "{}", e.name);
        if syzygies_reflexive {
            assert!(closed, "{}", e.name);
        }
        if two_sided_22(a).unwrap() {
            assert!(grade_ext2 && syzygies_reflexive && closed, "{}", e.name);
        }
    }
}
