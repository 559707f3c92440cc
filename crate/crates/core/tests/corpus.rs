use std::time::Instant;

use reflexa::certify::*;
use reflexa::corpus::corpus;
use reflexa::refl::{dominant_dimension, two_sided_22};
use reflexa::Side;

#[test]
fn corpus_shapes() {
    let c = corpus().unwrap();
    assert_eq!(c.len(), 13);
    let dims: Vec<usize> = c.iter().take(8).map(|e| e.algebra.dim()).collect();
    assert_eq!(dims, vec![3, 6, 2, 3, 3, 5, 14, 9]);
    for e in &c[8..] {
        assert!(e.algebra.dim() <= 8 && e.algebra.is_basic());
    }
}

#[test]
#[ignore]
fn corpus_report() {
    for e in corpus().unwrap() {
        let t = Instant::now();
        let a = &e.algebra;
        let p = a.presentation().map(|p| format!("{:?}", p)).unwrap_or_default();
        let q = certify_quasi_abelian(a, HarnessOptions::default()).unwrap();
        let ab = certify_abelian(a, HarnessOptions::default()).unwrap();
        eprintln!(
            "{} dim {} 22 {} ddim {:?}/{:?} | qa {:?} {:?} | ab {:?} {:?} | {:?}\n   {}",
            e.name,
            a.dim(),
            two_sided_22(a).unwrap(),
            dominant_dimension(a, Side::Left, 4).unwrap(),
            dominant_dimension(a, Side::Right, 4).unwrap(),
            q.verdict,
            q.witness.as_ref().map(|w| w.kind),
            ab.verdict,
            ab.witness.as_ref().map(|w| w.kind),
            t.elapsed(),
            p
        );
    }
}
