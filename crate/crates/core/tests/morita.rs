mod common;

use std::sync::Arc;

use common::*;
use reflexa::certify::HarnessOptions;
use reflexa::morita::*;
use reflexa::refl::{dominant_dimension, is_reflexive, two_sided_22};
use reflexa::*;

fn list(ms: Vec<Module>) -> SummandList {
    SummandList::new(ms, DEFAULT_BUDGET).unwrap()
}

fn opts(d: usize) -> HarnessOptions {
    HarnessOptions { dim_budget: d, ..HarnessOptions::default() }
}

fn sigma_k() -> (Arc<Algebra>, SummandList) {
    let s = truncated(f2(), 2);
    let ms = list(vec![proj(&s, 0), simple(&s, 0)]);
    (s, ms)
}

#[test]
fn repeated_summands_are_rejected() {
    let a = a2(f2());
    let err = SummandList::new(vec![proj(&a, 0), simple(&a, 1), proj(&a, 1)], DEFAULT_BUDGET).unwrap_err();
    assert_eq!(err, Error::NotPairwiseNoniso(2, 3));
}

#[test]
fn end_of_regular_is_the_algebra() {
    for a in [a2(f2()), truncated(f2(), 3)] {
        let ms = list((0..a.vertex_count()).map(|v| proj(&a, v)).collect());
        let e = end_algebra(&ms).unwrap();
        assert_eq!(e.algebra.dim(), a.dim());
        for i in 0..a.vertex_count() {
            for j in 0..a.vertex_count() {
                assert_eq!(e.algebra.block_dim(i, j), a.block_dim(i, j));
            }
        }
        // Yoneda: Hom(M, M) is the regular module
        let fm = e.hom_functor(&ms.sum()).unwrap().0;
        let reg = Module::regular(&e.algebra, Side::Left).0;
        assert!(iso(&fm, &reg));
    }
}

#[test]
fn auslander_algebras_have_dimension_five() {
    let (_, ms) = sigma_k();
    assert_eq!(end_algebra(&ms).unwrap().algebra.dim(), 5);

    let a = a2(f2());
    let ms = list(vec![proj(&a, 0), proj(&a, 1), inj(&a, 0)]);
    let e = end_algebra(&ms).unwrap();
    assert_eq!(e.algebra.dim(), 5);
    let grid: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| e.blocks[i][j].len()).collect()).collect();
    assert_eq!(grid, vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 0, 1]]);
    assert!(two_sided_22(&e.algebra).unwrap());
    assert!(global_dimension(&e.algebra, Side::Left, 6).unwrap().floor() <= 2);
}

#[test]
fn hom_functor_on_objects_and_maps() {
    let (s, ms) = sigma_k();
    let e = end_algebra(&ms).unwrap();
    let k = simple(&s, 0);
    assert_eq!(e.hom_functor(&k).unwrap().0.dim(), 2);
    assert!(e.hom_functor(&Module::zero(&s, Side::Left)).unwrap().0.is_zero());

    let p = proj(&s, 0);
    let maps = hom_space(&p, &k).unwrap();
    let f = &maps[0];
    let ff = e.hom_functor_map(f).unwrap();
    assert_eq!(ff.rank(), 1);
    let id = e.hom_functor_map(&ModuleMap::identity(&p)).unwrap();
    assert!(id.matrix().is_identity());
    let inc = &hom_space(&k, &p).unwrap()[0];
    let comp = inc.then(f).unwrap();
    let lhs = e.hom_functor_map(&comp).unwrap();
    let rhs = e.hom_functor_map(inc).unwrap().then(&ff).unwrap();
    assert_eq!(lhs.matrix(), rhs.matrix());
}

#[test]
fn generator_and_cogenerator_tests() {
    let a = a2(f2());
    let all = list(vec![proj(&a, 0), proj(&a, 1), inj(&a, 0)]);
    assert!(is_generator(&all, Mode::ModuleCategory, &opts(3)).unwrap());
    assert!(is_cogenerator(&all, Mode::ModuleCategory, &opts(3)).unwrap());
    let p2 = list(vec![proj(&a, 1)]);
    assert!(!is_generator(&p2, Mode::ModuleCategory, &opts(3)).unwrap());

    let s = truncated(f2(), 2);
    let reg = list(vec![proj(&s, 0)]);
    assert!(is_generator(&reg, Mode::ModuleCategory, &opts(3)).unwrap());
    assert!(is_cogenerator(&reg, Mode::ModuleCategory, &opts(3)).unwrap());
    assert!(is_generator(&reg, Mode::ReflMax, &opts(3)).unwrap());
    assert!(is_cogenerator(&reg, Mode::ReflMax, &opts(3)).unwrap());
}

#[test]
fn equivalence_for_truncated_polynomial() {
    let (_, ms) = sigma_k();
    let r = verify_equivalence(&ms, Mode::ModuleCategory, &opts(3)).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.end_dim, 5);
    assert!(r.dominant_dimension.at_least(2));
    assert_eq!(r.counts, Some((2, 2)));
}

#[test]
fn equivalence_for_a2_auslander_algebra() {
    let a = a2(f2());
    let ms = list(vec![proj(&a, 0), proj(&a, 1), inj(&a, 0)]);
    let r = verify_equivalence(&ms, Mode::ModuleCategory, &opts(3)).unwrap();
    assert!(r.all_pass());
    let e = end_algebra(&ms).unwrap();
    assert_eq!(dominant_dimension(&e.algebra, Side::Left, 4).unwrap(), Bounded::Value(2));
    assert_eq!(r.counts, Some((3, 3)));
}

#[test]
fn reflexive_equivalences() {
    let s = truncated(f2(), 2);
    let ms = list(vec![proj(&s, 0), simple(&s, 0)]);
    let r = reflexive_equivalence_check(&ms, &opts(3)).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.end_dim, 5);

    let reg = list(vec![proj(&s, 0)]);
    assert_eq!(reflexive_equivalence_check(&reg, &opts(3)).unwrap().end_dim, 2);

    let a = a2(f2());
    assert!(!is_reflexive(&inj(&a, 0)).unwrap());
    let ms = list(vec![proj(&a, 0), proj(&a, 1)]);
    let r = reflexive_equivalence_check(&ms, &opts(3)).unwrap();
    assert!(r.all_pass());
}
