//! The fixed family of test algebras over F_2.

use std::sync::Arc;

use crate::algebra::{Algebra, Quiver};
use crate::enumerate::random_monomial_algebra;
use crate::error::Result;
use crate::linalg::Field;
use crate::module::{Module, Side};
use crate::morita::{end_algebra, SummandList};
use crate::search::DEFAULT_BUDGET;

/// Number of random monomial algebras in the corpus.
pub const RANDOM_COUNT: usize = 5;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: Arc<Algebra>,
}

fn rels(paths: &[&[&str]]) -> Vec<Vec<String>> {
    paths.iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect()
}

fn quiver(n: usize, arrows: &[(&str, usize, usize)], relations: &[&[&str]]) -> Result<Arc<Algebra>> {
    Algebra::bound_quiver(Field::prime(2)?, Quiver::from_triples(n, arrows)?, &rels(relations))
}

pub fn linear_a(n: usize) -> Result<Arc<Algebra>> {
    let names: Vec<String> = (1..n).map(|k| format!("a{k}")).collect();
    let arrows: Vec<(&str, usize, usize)> = names.iter().enumerate().map(|(k, s)| (s.as_str(), k, k + 1)).collect();
    quiver(n, &arrows, &[])
}

/// `k[x]/(x^n)`.
pub fn truncated_polynomial(n: usize) -> Result<Arc<Algebra>> {
    let xs = vec!["x"; n];
    quiver(1, &[("x", 0, 0)], &[&xs])
}

/// `k[x,y]/(x,y)^2`.
pub fn two_loops_radical_square_zero() -> Result<Arc<Algebra>> {
    quiver(1, &[("x", 0, 0), ("y", 0, 0)], &[&["x", "x"], &["x", "y"], &["y", "x"], &["y", "y"]])
}

/// Auslander algebra of `k[x]/(x^2)`: `a: 1 -> 2`, `b: 2 -> 1`, `b.a = 0`.
pub fn auslander_x2() -> Result<Arc<Algebra>> {
    quiver(2, &[("a", 0, 1), ("b", 1, 0)], &[&["b", "a"]])
}

/// Auslander algebra of `k[x]/(x^3)`, built as the endomorphism algebra of
/// the sum of its three indecomposables.
pub fn auslander_x3() -> Result<Arc<Algebra>> {
    let s = truncated_polynomial(3)?;
    let reg = Module::projective(&s, Side::Left, 0)?;
    let (rad, _) = reg.radical()?;
    let (rad2, _) = rad.radical()?;
    let ms = SummandList::new(vec![reg, rad, rad2], DEFAULT_BUDGET)?;
    Ok(end_algebra(&ms)?.algebra)
}

/// The square `1 -> 2 -> 4`, `1 -> 3 -> 4` with the zero relation `a.b`.
pub fn square_with_zero_relation() -> Result<Arc<Algebra>> {
    quiver(4, &[("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)], &[&["a", "b"]])
}

pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = vec![
        ("kA2", linear_a(2)?),
        ("kA3", linear_a(3)?),
        ("k[x]/(x^2)", truncated_polynomial(2)?),
        ("k[x]/(x^3)", truncated_polynomial(3)?),
        ("k[x,y]/(x,y)^2", two_loops_radical_square_zero()?),
        ("auslander(k[x]/(x^2))", auslander_x2()?),
        ("auslander(k[x]/(x^3))", auslander_x3()?),
        ("square_zero_relation", square_with_zero_relation()?),
    ]
    .into_iter()
    .map(|(n, a)| CorpusEntry { name: n.to_string(), algebra: a })
    .collect::<Vec<_>>();
    // seeds are scanned in order; algebras resembling an earlier entry are skipped
    let mut keys: Vec<_> = out.iter().map(|e| shape_key(&e.algebra)).collect();
    let mut seed = 0;
    let mut picked = 0;
    while picked < RANDOM_COUNT {
        seed += 1;
        let a = random_monomial_algebra(Field::prime(2)?, seed, 8)?;
        let k = shape_key(&a);
        if keys.contains(&k) {
            continue;
        }
        keys.push(k);
        out.push(CorpusEntry { name: format!("random_monomial_seed{seed}"), algebra: a });
        picked += 1;
    }
    Ok(out)
}

/// Dimension data invariant under relabelling vertices and passing to the
/// opposite algebra.
fn shape_key(a: &Algebra) -> (usize, Vec<usize>, Vec<(usize, usize, usize)>) {
    let n = a.vertex_count();
    let mut diag: Vec<usize> = (0..n).map(|i| a.block_dim(i, i)).collect();
    diag.sort();
    let mut off: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a.block_dim(i, j), a.block_dim(j, i));
            let (lo, hi) = (x.min(y), x.max(y));
            let (di, dj) = (a.block_dim(i, i).min(a.block_dim(j, j)), a.block_dim(i, i).max(a.block_dim(j, j)));
            off.push((lo * 100 + hi, di, dj));
        }
    }
    off.sort();
    (a.dim(), diag, off)
}
