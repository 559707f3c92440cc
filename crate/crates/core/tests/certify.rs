mod common;

use std::time::Instant;

use common::*;
use reflexa::certify::*;

fn run(name: &str, a: &std::sync::Arc<reflexa::Algebra>) -> (Certificate, Certificate) {
    let t = Instant::now();
    let q = certify_quasi_abelian(a, HarnessOptions::default()).unwrap();
    let ab = certify_abelian(a, HarnessOptions::default()).unwrap();
    eprintln!(
        "{name}: qa {:?} cond {} witness {:?} | ab {:?} ddim {:?} witness {:?} tors {:?} | {:?} {:?}",
        q.verdict,
        q.condition,
        q.witness.as_ref().map(|w| (w.kind, w.detail.clone())),
        ab.verdict,
        ab.dominant_dimension,
        ab.witness.as_ref().map(|w| w.kind),
        ab.torsion_witness.as_ref().map(|w| w.detail.clone()),
        q.stats,
        t.elapsed()
    );
    (q, ab)
}

#[test]
fn a2_is_quasi_abelian_not_abelian() {
    let (q, ab) = run("kA2", &a2(f2()));
    assert_eq!(q.verdict, Verdict::Consistent);
    assert!(q.condition && q.witness.is_none());
    assert_eq!(ab.verdict, Verdict::Consistent);
    let w = ab.torsion_witness.unwrap();
    assert_eq!(w.modules[0].dims(), &[1, 0]);
}

#[test]
fn self_injective_is_abelian() {
    let (q, ab) = run("k[x]/x2", &truncated(f2(), 2));
    assert_eq!(q.verdict, Verdict::Consistent);
    assert_eq!(ab.verdict, Verdict::Consistent);
    assert!(ab.condition);
}

#[test]
fn rad_square_zero_has_a_witness() {
    let (q, ab) = run("k[x,y]/(x,y)^2", &rad_square_zero_two_loops(f2()));
    assert!(!q.condition);
    assert_eq!(q.verdict, Verdict::Consistent);
    assert_eq!(ab.verdict, Verdict::Consistent);
}
