mod common;

use std::time::Instant;

use common::*;
use reflexa::certify::HarnessOptions;
use reflexa::corpus::corpus;
use reflexa::refl::two_sided_22;
use reflexa::serre::*;
use reflexa::*;

fn opts() -> HarnessOptions {
    HarnessOptions { dim_budget: 4, ..HarnessOptions::default() }
}

#[test]
fn simples_outside_d_are_rejected() {
    let a = a2(f2());
    assert_eq!(serre_exact_structure(&a, &[0]).unwrap_err(), Error::NotInD(1));
    assert_eq!(serre_exact_structure(&a, &[1]).unwrap_err(), Error::NotInD(2));
    let k = rad_square_zero_two_loops(f2());
    assert!(matches!(serre_exact_structure(&k, &[]).unwrap_err(), Error::ConditionFails(_)));
}

#[test]
fn empty_set_gives_surjective_deflations() {
    let a = a2(f2());
    let s = serre_exact_structure(&a, &[]).unwrap();
    let p1 = proj(&a, 0);
    let p2 = proj(&a, 1);
    let incl = hom_space(&p2, &p1).unwrap().remove(0);
    assert!(!s.is_deflation(&incl).unwrap());
    assert!(s.is_deflation(&ModuleMap::identity(&p1)).unwrap());
    let r = validate(&s, &opts()).unwrap();
    assert!(r.axioms_hold && r.roundtrip());
    assert!(r.regenerated.is_empty());
}

#[test]
fn roundtrip_on_corpus() {
    for e in corpus().unwrap() {
        let a = &e.algebra;
        if !two_sided_22(a).unwrap() {
            continue;
        }
        let t = Instant::now();
        let n = a.vertex_count();
        let in_d: Vec<bool> = (0..n)
            .map(|v| sgrade_oracle(&simple(a, v), 2, DEFAULT_BUDGET).unwrap().at_least(2))
            .collect();
        for mask in 0..(1u32 << n) {
            let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            match set.iter().find(|&&v| !in_d[v]) {
                Some(&v) => assert_eq!(serre_exact_structure(a, &set).unwrap_err(), Error::NotInD(v + 1)),
                None => {
                    let s = serre_exact_structure(a, &set).unwrap();
                    let r = validate(&s, &opts()).unwrap();
                    assert!(r.axioms_hold, "{}", e.name);
                    assert_eq!(r.regenerated, set, "{}", e.name);
                    eprintln!("{} {:?} {:?}", e.name, set, r.counts);
                }
            }
        }
        eprintln!("{}: D simples {:?} in {:?}", e.name, in_d, t.elapsed());
    }
}
