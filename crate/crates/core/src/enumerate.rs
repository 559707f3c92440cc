//! Exhaustive enumeration of small modules over prime fields, up to
//! isomorphism.
//!
//! Every module has a basis adapted to a composition series in which each
//! generator acts strictly upper triangularly, so a module of dimension `n`
//! is determined by a sequence of vertices (the composition factors in
//! order) and by entries at the positions `p < q` with matching vertices.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Algebra, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::{direct_sum, hom_dim, hom_space, ring_for, Module, Side};
use crate::search::is_isomorphic;

/// Iso classes of modules up to a total dimension.
#[derive(Clone, Debug)]
pub struct Universe {
    pub algebra: Arc<Algebra>,
    pub side: Side,
    pub max_dim: usize,
    /// Representatives, ordered by dimension and then by discovery order.
    pub modules: Vec<Module>,
    pub indecomposable: Vec<bool>,
}

impl Universe {
    pub fn indecomposables(&self) -> impl Iterator<Item = &Module> {
        self.modules.iter().zip(&self.indecomposable).filter(|(_, &i)| i).map(|(m, _)| m)
    }

    /// Index of the representative isomorphic to `m`, if it is in range.
    pub fn find(&self, m: &Module, budget: u64) -> Result<Option<usize>> {
        for (k, x) in self.modules.iter().enumerate() {
            if x.dims() == m.dims() && is_isomorphic(x, m, budget)?.is_some() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

fn vertex_sequences(nv: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for s in &out {
            for v in 0..nv {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Candidate modules for one composition sequence.
fn candidates(a: &Arc<Algebra>, side: Side, seq: &[usize], values: &[Scalar]) -> Vec<Module> {
    let ring = ring_for(a, side);
    let basic = match ring.basic() {
        Ok(b) => b,
        Err(_) => return vec![],
    };
    let f = a.field();
    let nv = ring.vertex_count();
    let mut dims = vec![0; nv];
    let mut local = Vec::with_capacity(seq.len());
    for &v in seq {
        local.push(dims[v]);
        dims[v] += 1;
    }
    // free positions per generator
    let mut slots: Vec<(usize, usize, usize)> = Vec::new();
    for (k, g) in basic.arrows.iter().enumerate() {
        for p in 0..seq.len() {
            for q in p + 1..seq.len() {
                if seq[p] == g.source && seq[q] == g.target {
                    slots.push((k, local[p], local[q]));
                }
            }
        }
    }
    let base = values.len();
    let total = match base.checked_pow(slots.len() as u32) {
        Some(t) if t <= 1 << 20 => t,
        _ => return vec![],
    };
    let mut out = Vec::new();
    for code in 0..total {
        let mut blocks: Vec<Matrix> = basic
            .arrows
            .iter()
            .map(|g| Matrix::zeros(f, dims[g.source], dims[g.target]))
            .collect();
        let mut c = code;
        for &(k, r, col) in &slots {
            let digit = c % base;
            c /= base;
            if digit != 0 {
                blocks[k].set(r, col, values[digit].clone());
            }
        }
        if let Ok(m) = Module::from_generator_blocks(a, side, dims.clone(), &blocks) {
            out.push(m);
        }
    }
    out
}

/// Radical-layer dimension vectors.
fn loewy_layers(m: &Module) -> Result<Vec<Vec<usize>>> {
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        let (rad, _) = cur.radical()?;
        layers.push(cur.dims().iter().zip(rad.dims()).map(|(a, b)| a - b).collect());
        cur = rad;
    }
    Ok(layers)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    dims: Vec<usize>,
    layers: Vec<Vec<usize>>,
    socle: Vec<usize>,
    end_dim: usize,
    probes: Vec<(usize, usize)>,
}

fn signature(m: &Module, probes: &[Module]) -> Result<Signature> {
    let mut p = Vec::with_capacity(probes.len());
    for x in probes {
        p.push((hom_dim(x, m)?, hom_dim(m, x)?));
    }
    Ok(Signature {
        dims: m.dims().to_vec(),
        layers: loewy_layers(m)?,
        socle: m.socle()?.0.dims().to_vec(),
        end_dim: hom_dim(m, m)?,
        probes: p,
    })
}

/// Decides indecomposability by Fitting's lemma: `m` decomposes iff some
/// endomorphism has a power of rank strictly between 0 and `dim m`.
pub fn is_indecomposable(m: &Module, budget: u64) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let n = m.dim();
    let ends = hom_space(m, m)?;
    let f = m.field();
    let splits = |x: &Matrix| -> bool {
        let mut p = x.clone();
        for _ in 1..n {
            p = p.mul(x);
        }
        let r = p.rank();
        r > 0 && r < n
    };
    let mats: Vec<&Matrix> = ends.iter().map(|e| e.matrix()).collect();
    for x in &mats {
        if splits(x) {
            return Ok(false);
        }
    }
    let values = match f.elements() {
        Some(v) => v,
        None => return Err(Error::Undecided(budget)),
    };
    let q = values.len() as u64;
    let h = mats.len() as u32;
    let total = q.checked_pow(h).filter(|&t| t <= budget).ok_or(Error::Undecided(budget))?;
    for code in 1..total {
        let mut c = code;
        let mut terms = Vec::new();
        for x in &mats {
            let d = (c % q) as usize;
            c /= q;
            if d != 0 {
                terms.push((values[d].clone(), *x));
            }
        }
        if terms.len() < 2 {
            continue;
        }
        if splits(&Matrix::combination(f, (n, n), &terms)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All modules of total dimension `1..=max_dim` up to isomorphism (the zero
/// module excluded). Requires a basic algebra over a prime field.
pub fn enumerate_modules(a: &Arc<Algebra>, side: Side, max_dim: usize, budget: u64) -> Result<Universe> {
    let f = a.field();
    let values = match f {
        Field::Prime(_) => f.elements().expect("finite field"),
        Field::Rational => return Err(Error::BudgetExceeded("module enumeration needs a prime field".into())),
    };
    let ring = ring_for(a, side);
    ring.basic()?;
    let nv = ring.vertex_count();
    let mut modules: Vec<Module> = Vec::new();
    let mut indecomposable: Vec<bool> = Vec::new();
    let mut probes: Vec<Module> = (0..nv).map(|i| Module::simple(a, side, i)).collect::<Result<_>>()?;
    for n in 1..=max_dim {
        let seqs = vertex_sequences(nv, n);
        let raw: Vec<Vec<Module>> = seqs.par_iter().map(|s| candidates(a, side, s, &values)).collect();
        let mut seen = HashSet::new();
        let mut cands = Vec::new();
        for m in raw.into_iter().flatten() {
            if seen.insert((m.dims().to_vec(), m.generator_blocks().to_vec())) {
                cands.push(m);
            }
        }
        let sigs: Vec<Signature> = cands.par_iter().map(|m| signature(m, &probes)).collect::<Result<_>>()?;
        let mut buckets: BTreeMap<Signature, Vec<Module>> = BTreeMap::new();
        for (m, s) in cands.into_iter().zip(sigs) {
            let reps = buckets.entry(s).or_default();
            let mut found = false;
            for r in reps.iter() {
                if is_isomorphic(r, &m, budget)?.is_some() {
                    found = true;
                    break;
                }
            }
            if !found {
                reps.push(m);
            }
        }
        let level: Vec<Module> = buckets.into_values().flatten().collect();
        let flags: Vec<bool> = level.par_iter().map(|m| is_indecomposable(m, budget)).collect::<Result<_>>()?;
        for (m, ind) in level.into_iter().zip(flags) {
            if ind {
                probes.push(m.clone());
            }
            modules.push(m);
            indecomposable.push(ind);
        }
    }
    Ok(Universe { algebra: a.clone(), side, max_dim, modules, indecomposable })
}

/// Direct sums of pairs from a universe, used as extra probe objects.
pub fn pair_sums(u: &Universe, max_dim: usize) -> Vec<Module> {
    let mut out = Vec::new();
    for (i, x) in u.modules.iter().enumerate() {
        for y in &u.modules[i..] {
            if x.dim() + y.dim() <= max_dim {
                out.push(direct_sum(&u.algebra, u.side, &[x.clone(), y.clone()]).0);
            }
        }
    }
    out
}

fn connected(nv: usize, arrows: &[(String, usize, usize)]) -> bool {
    let mut seen = vec![false; nv];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (_, s, t) in arrows {
            for (x, y) in [(*s, *t), (*t, *s)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// A seeded random monomial algebra on a connected quiver, of dimension at
/// most `max_dim`.
pub fn random_monomial_algebra(field: Field, seed: u64, max_dim: usize) -> Result<Arc<Algebra>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let nv = rng.gen_range(1..=3usize);
        let na = rng.gen_range(1..=4usize);
        let arrows: Vec<(String, usize, usize)> =
            (0..na).map(|k| (format!("a{}", k + 1), rng.gen_range(0..nv), rng.gen_range(0..nv))).collect();
        let triples: Vec<(&str, usize, usize)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
        let quiver = Quiver::from_triples(nv, &triples)?;
        if !connected(nv, &arrows) {
            continue;
        }
        let mut rels: Vec<Vec<String>> = Vec::new();
        for _ in 0..rng.gen_range(0..=4usize) {
            let len = rng.gen_range(2..=3usize);
            let mut path = vec![rng.gen_range(0..na)];
            while path.len() < len {
                let end = quiver.arrows[*path.last().unwrap()].target;
                let next: Vec<usize> = (0..na).filter(|&b| quiver.arrows[b].source == end).collect();
                if next.is_empty() {
                    break;
                }
                path.push(next[rng.gen_range(0..next.len())]);
            }
            if path.len() >= 2 {
                let names: Vec<String> = path.iter().map(|&k| quiver.arrows[k].name.clone()).collect();
                if !rels.contains(&names) {
                    rels.push(names);
                }
            }
        }
        match Algebra::bound_quiver(field, quiver, &rels) {
            Ok(alg) if alg.dim() <= max_dim && alg.dim() > nv && alg.is_basic() => return Ok(alg),
            _ => continue,
        }
    }
    Err(Error::Internal(format!("no random monomial algebra found for seed {seed}")))
}
