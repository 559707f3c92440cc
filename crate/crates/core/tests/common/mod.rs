#![allow(dead_code)]
use std::sync::Arc;

use reflexa::*;

pub fn f2() -> Field {
    Field::prime(2).unwrap()
}

pub fn a2(f: Field) -> Arc<Algebra> {
    Algebra::bound_quiver(f, Quiver::from_triples(2, &[("a", 0, 1)]).unwrap(), &[]).unwrap()
}

pub fn truncated(f: Field, n: usize) -> Arc<Algebra> {
    let q = Quiver::from_triples(1, &[("x", 0, 0)]).unwrap();
    Algebra::bound_quiver(f, q, &[vec!["x".to_string(); n]]).unwrap()
}

pub fn rad_square_zero_two_loops(f: Field) -> Arc<Algebra> {
    let q = Quiver::from_triples(1, &[("x", 0, 0), ("y", 0, 0)]).unwrap();
    let r: Vec<Vec<String>> = [["x", "x"], ["x", "y"], ["y", "x"], ["y", "y"]]
        .iter()
        .map(|p| p.iter().map(|s| s.to_string()).collect())
        .collect();
    Algebra::bound_quiver(f, q, &r).unwrap()
}

pub fn semisimple(f: Field, n: usize) -> Arc<Algebra> {
    Algebra::bound_quiver(f, Quiver::from_triples(n, &[]).unwrap(), &[]).unwrap()
}

pub fn simple(a: &Arc<Algebra>, i: usize) -> Module {
    Module::simple(a, Side::Left, i).unwrap()
}

pub fn proj(a: &Arc<Algebra>, i: usize) -> Module {
    Module::projective(a, Side::Left, i).unwrap()
}

pub fn inj(a: &Arc<Algebra>, i: usize) -> Module {
    Module::injective(a, Side::Left, i).unwrap()
}

pub fn iso(m: &Module, n: &Module) -> bool {
    is_isomorphic(m, n, DEFAULT_BUDGET).unwrap().is_some()
}
