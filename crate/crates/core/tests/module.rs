use std::sync::Arc;

use reflexa::*;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn a2(f: Field) -> Arc<Algebra> {
    Algebra::bound_quiver(f, Quiver::from_triples(2, &[("a", 0, 1)]).unwrap(), &[]).unwrap()
}

fn dual_numbers(f: Field) -> Arc<Algebra> {
    let q = Quiver::from_triples(1, &[("x", 0, 0)]).unwrap();
    Algebra::bound_quiver(f, q, &[vec!["x".into(), "x".into()]]).unwrap()
}

fn rep(a: &Arc<Algebra>, dims: Vec<usize>, arrows: &[(&str, &[&[i64]])]) -> Module {
    let f = a.field();
    let arrows: Vec<(String, Matrix)> = arrows
        .iter()
        .map(|(n, m)| {
            let mat = if m.is_empty() { Matrix::zeros(f, 0, 0) } else { Matrix::from_i64(f, m) };
            (n.to_string(), mat)
        })
        .collect();
    Module::from_arrow_matrices(a, Side::Left, dims, &arrows).unwrap()
}

#[test]
fn projectives_and_injectives_of_a2() {
    let a = a2(f2());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    assert_eq!(p1.dims(), &[1, 1]);
    let i1 = Module::injective(&a, Side::Left, 0).unwrap();
    assert_eq!(i1.dims(), &[1, 0]);
    let i2 = Module::injective(&a, Side::Left, 1).unwrap();
    assert_eq!(i2.dims(), &[1, 1]);
    assert!(is_isomorphic(&p1, &i2, DEFAULT_BUDGET).unwrap().is_some());
    let s1 = Module::simple(&a, Side::Left, 0).unwrap();
    let s2 = Module::simple(&a, Side::Left, 1).unwrap();
    assert_eq!(s1.dims(), &[1, 0]);
    assert_eq!(s2.dims(), &[0, 1]);
    assert!(is_isomorphic(&s1, &s2, DEFAULT_BUDGET).unwrap().is_none());
    assert!(is_isomorphic(&s1, &i1, DEFAULT_BUDGET).unwrap().is_some());
}

#[test]
fn arrow_representation_matches_projective() {
    let a = a2(f2());
    let p1 = rep(&a, vec![1, 1], &[("a", &[&[1]])]);
    let proj = Module::projective(&a, Side::Left, 0).unwrap();
    assert!(is_isomorphic(&p1, &proj, DEFAULT_BUDGET).unwrap().is_some());
    assert_eq!(p1.arrow_matrices().unwrap()[0].1, Matrix::from_i64(f2(), &[&[1]]));
}

#[test]
fn relation_violation_rejected() {
    let a = dual_numbers(f2());
    let bad = Module::from_arrow_matrices(&a, Side::Left, vec![1], &[("x".into(), Matrix::from_i64(f2(), &[&[1]]))]);
    assert!(matches!(bad, Err(Error::InvalidModule(_))));
}

#[test]
fn hom_examples() {
    let a = a2(f2());
    let s1 = Module::simple(&a, Side::Left, 0).unwrap();
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    assert_eq!(hom_dim(&s1, &p1).unwrap(), 0);
    let end = hom_space(&s1, &s1).unwrap();
    assert_eq!(end.len(), 1);
    assert!(end[0].is_iso());
    let n = rep(&a, vec![2, 1], &[("a", &[&[1], &[0]])]);
    for i in 0..2 {
        let p = Module::projective(&a, Side::Left, i).unwrap();
        assert_eq!(hom_dim(&p, &n).unwrap(), n.dims()[i]);
    }
}

#[test]
fn hom_dual_symmetry() {
    let a = a2(Field::rational());
    let mods: Vec<Module> = (0..2)
        .flat_map(|i| {
            [
                Module::projective(&a, Side::Left, i).unwrap(),
                Module::injective(&a, Side::Left, i).unwrap(),
                Module::simple(&a, Side::Left, i).unwrap(),
            ]
        })
        .collect();
    for m in &mods {
        for n in &mods {
            assert_eq!(hom_dim(m, n).unwrap(), hom_dim(&n.d_dual(), &m.d_dual()).unwrap());
        }
    }
}

#[test]
fn cokernel_of_socle_inclusion() {
    let a = a2(f2());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    let (soc, incl) = p1.socle().unwrap();
    assert_eq!(soc.dims(), &[0, 1]);
    let (c, _) = incl.cokernel();
    assert_eq!(c.dims(), &[1, 0]);
    let (k, kin) = ModuleMap::identity(&p1).kernel();
    assert!(k.is_zero());
    assert!(kin.is_injective());
    let z = ModuleMap::zero(&p1, &p1);
    assert!(z.image().0.is_zero());
}

#[test]
fn rank_nullity_on_maps() {
    let a = a2(f2());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    let i1 = Module::injective(&a, Side::Left, 0).unwrap();
    for f in hom_space(&p1, &i1).unwrap() {
        let (k, kin) = f.kernel();
        let (im, onto, incl) = f.image();
        let (c, _) = f.cokernel();
        assert_eq!(p1.dim(), k.dim() + im.dim());
        assert_eq!(i1.dim(), im.dim() + c.dim());
        assert!(kin.then(&f).unwrap().is_zero());
        assert_eq!(onto.then(&incl).unwrap(), f);
    }
}

#[test]
fn top_radical_socle() {
    let a = a2(f2());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    assert_eq!(p1.top().unwrap().0.dims(), &[1, 0]);
    let d = dual_numbers(f2());
    let (reg, _) = Module::regular(&d, Side::Left);
    assert_eq!(reg.socle().unwrap().0.dim(), 1);
    let s = Module::simple(&d, Side::Left, 0).unwrap();
    let (ss, _, _) = direct_sum(&d, Side::Left, &[s.clone(), s]);
    assert!(ss.radical().unwrap().0.is_zero());
}

#[test]
fn regular_modules() {
    let d = dual_numbers(f2());
    let (reg, _) = Module::regular(&d, Side::Left);
    assert_eq!(reg.dim(), 2);
    let p = Module::projective(&d, Side::Left, 0).unwrap();
    let i = Module::injective(&d, Side::Left, 0).unwrap();
    assert!(is_isomorphic(&p, &reg, DEFAULT_BUDGET).unwrap().is_some());
    assert!(is_isomorphic(&i, &reg, DEFAULT_BUDGET).unwrap().is_some());
    let a = a2(f2());
    let (reg, parts) = Module::regular(&a, Side::Left);
    assert_eq!(reg.dim(), 3);
    assert_eq!(parts[0].source().dim(), 2);
    assert_eq!(parts[1].source().dim(), 1);
}

#[test]
fn covers_and_envelopes() {
    let a = a2(f2());
    let s1 = Module::simple(&a, Side::Left, 0).unwrap();
    let cover = projective_cover(&s1).unwrap();
    assert_eq!(cover.proj.vertices, vec![0]);
    let (k, _) = cover.map.kernel();
    let p2 = Module::projective(&a, Side::Left, 1).unwrap();
    assert!(is_isomorphic(&k, &p2, DEFAULT_BUDGET).unwrap().is_some());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    let c = projective_cover(&p1).unwrap();
    assert!(c.map.is_iso());
    let s2 = Module::simple(&a, Side::Left, 1).unwrap();
    let (env, verts) = injective_envelope(&s2).unwrap();
    assert_eq!(verts, vec![1]);
    assert_eq!(env.target().dims(), &[1, 1]);
    assert!(env.is_injective());
}

#[test]
fn d_dual_examples() {
    let a = a2(f2());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    let dp = p1.d_dual();
    assert_eq!(dp.side(), Side::Right);
    assert_eq!(dp.dims(), &[1, 1]);
    assert!(p1.double_dual_iso().unwrap().is_iso());
    let s1 = Module::simple(&a, Side::Left, 0).unwrap();
    let rs1 = Module::simple(&a, Side::Right, 0).unwrap();
    assert!(is_isomorphic(&s1.d_dual(), &rs1, DEFAULT_BUDGET).unwrap().is_some());
}

#[test]
fn composition_factors_examples() {
    let a = a2(f2());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    assert_eq!(p1.composition_factors().unwrap(), vec![1, 1]);
    assert_eq!(Module::zero(&a, Side::Left).composition_factors().unwrap(), vec![0, 0]);
}

#[test]
fn submodule_counts() {
    let d = dual_numbers(f2());
    let (reg, _) = Module::regular(&d, Side::Left);
    assert_eq!(enumerate_submodules(&reg, DEFAULT_BUDGET).unwrap().len(), 3);
    let a = a2(f2());
    let s1 = Module::simple(&a, Side::Left, 0).unwrap();
    assert_eq!(enumerate_submodules(&s1, DEFAULT_BUDGET).unwrap().len(), 2);
    let (ss, _, _) = direct_sum(&a, Side::Left, &[s1.clone(), s1]);
    let subs = enumerate_submodules(&ss, DEFAULT_BUDGET).unwrap();
    assert_eq!(subs.len(), 5);
    assert!(subs[0].0.is_zero());
    assert_eq!(subs[4].0.dim(), 2);
    let big = Module::zero(&a, Side::Left);
    assert_eq!(enumerate_submodules(&big, DEFAULT_BUDGET).unwrap().len(), 1);
    assert!(matches!(enumerate_submodules(&ss, 2), Err(Error::BudgetExceeded(_))));
}

#[test]
fn iso_over_rationals_uses_grid() {
    let a = a2(Field::rational());
    let p1 = Module::projective(&a, Side::Left, 0).unwrap();
    let i2 = Module::injective(&a, Side::Left, 1).unwrap();
    assert!(is_isomorphic(&p1, &i2, DEFAULT_BUDGET).unwrap().is_some());
    assert!(is_isomorphic(&p1, &p1, DEFAULT_BUDGET).unwrap().is_some());
}
