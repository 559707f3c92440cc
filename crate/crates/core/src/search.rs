//! Exhaustive searches over finite fields: submodule lattices and
//! isomorphisms.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::{hom_space, Module, ModuleMap};

pub const DEFAULT_BUDGET: u64 = 1 << 16;

/// Per-vertex canonical (RREF) bases of a subspace.
pub type SubspaceKey = Vec<Matrix>;

fn pow_bounded(p: u64, e: usize, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// The smallest submodule containing the per-vertex rows `seed`.
fn closure(m: &Module, seed: Vec<Matrix>) -> SubspaceKey {
    let st = m.ring().structure();
    let blocks = m.generator_blocks();
    let mut cur: Vec<Matrix> = seed.into_iter().map(|s| s.row_space()).collect();
    loop {
        let mut next = cur.clone();
        for (k, g) in st.generators.iter().enumerate() {
            if cur[g.source].rows() == 0 {
                continue;
            }
            let img = cur[g.source].mul(&blocks[k]);
            next[g.target] = next[g.target].vstack(&img);
        }
        let next: Vec<Matrix> = next.into_iter().map(|s| s.row_space()).collect();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn vectors_mod(f: Field, sub: &Matrix, d: usize) -> Vec<Matrix> {
    // representatives of nonzero classes of F_p^d / sub, supported on non-pivot columns
    let r = sub.rref();
    let free: Vec<usize> = (0..d).filter(|c| !r.pivot_cols.contains(c)).collect();
    let elems = f.elements().expect("finite field");
    let mut out = Vec::new();
    let total = elems.len().pow(free.len() as u32);
    for code in 1..total {
        let mut v = Matrix::zeros(f, 1, d);
        let mut c = code;
        let mut lead_one = false;
        for &col in free.iter().rev() {
            let digit = c % elems.len();
            c /= elems.len();
            v.set(0, col, elems[digit].clone());
        }
        // keep one vector per line: first nonzero entry equal to one
        for &col in &free {
            let x = v.get(0, col);
            if !x.is_zero() {
                lead_one = x == f.one();
                break;
            }
        }
        if lead_one {
            out.push(v);
        }
    }
    out
}

/// Every submodule of `m` exactly once, ordered by dimension and then by
/// the per-vertex RREF signature. Requires a prime field with
/// `p^dim <= budget`.
pub fn enumerate_submodules(m: &Module, budget: u64) -> Result<Vec<(Module, ModuleMap)>> {
    let keys = submodule_keys(m, budget)?;
    Ok(keys.into_iter().map(|k| m.submodule(k)).collect())
}

pub fn submodule_keys(m: &Module, budget: u64) -> Result<Vec<SubspaceKey>> {
    let f = m.field();
    let p = match f {
        Field::Prime(p) => p as u64,
        Field::Rational => return Err(Error::BudgetExceeded("submodule enumeration needs a prime field".into())),
    };
    if pow_bounded(p, m.dim(), budget).is_none() {
        return Err(Error::BudgetExceeded(format!("{p}^{} exceeds the budget {budget}", m.dim())));
    }
    let nv = m.dims().len();
    let zero: SubspaceKey = (0..nv).map(|v| Matrix::zeros(f, 0, m.dims()[v])).collect();
    let mut seen: HashSet<SubspaceKey> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(u) = queue.pop_front() {
        for v in 0..nv {
            for x in vectors_mod(f, &u[v], m.dims()[v]) {
                let mut seed = u.clone();
                seed[v] = seed[v].vstack(&x);
                let w = closure(m, seed);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    let ordered: BTreeSet<(usize, Vec<Vec<Vec<Scalar>>>)> = seen
        .iter()
        .map(|k| (k.iter().map(|b| b.rows()).sum(), k.iter().map(|b| b.to_rows()).collect()))
        .collect();
    Ok(ordered
        .into_iter()
        .map(|(_, rows)| {
            rows.into_iter()
                .enumerate()
                .map(|(v, r)| Matrix::from_rows_with_cols(f, &r, m.dims()[v]).expect("consistent shape"))
                .collect()
        })
        .collect())
}

fn invertible_on_vertices(m: &Module, map: &Matrix, n: &Module) -> bool {
    (0..m.dims().len()).all(|v| map.submatrix(m.range(v), n.range(v)).is_invertible())
}

/// Cheap invariants that isomorphic modules share.
fn invariants_agree(m: &Module, n: &Module) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.ring().is_basic() {
        if m.top()?.0.dims() != n.top()?.0.dims() || m.socle()?.0.dims() != n.socle()?.0.dims() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches `Hom(m, n)` for an isomorphism: exhaustively over `F_p` when
/// `p^(hom dim) <= budget`, over the coefficient grid `{-2..2}` over `Q`.
/// Returns `Err(Undecided)` when the search space exceeds the budget (or the
/// grid is exhausted over `Q`) without a verdict.
pub fn is_isomorphic(m: &Module, n: &Module, budget: u64) -> Result<Option<ModuleMap>> {
    m.check_same(n)?;
    if !invariants_agree(m, n)? {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let basis = hom_space(m, n)?;
    let h = basis.len();
    if h == 0 || h != hom_space(m, m)?.len() {
        return Ok(None);
    }
    let f = m.field();
    let mats: Vec<&Matrix> = basis.iter().map(|b| b.matrix()).collect();
    let quick: Vec<Matrix> = mats
        .iter()
        .map(|x| (*x).clone())
        .chain(std::iter::once(mats.iter().fold(Matrix::zeros(f, m.dim(), n.dim()), |a, x| a.add(x))))
        .collect();
    for cand in quick {
        if invertible_on_vertices(m, &cand, n) {
            return Ok(Some(ModuleMap::new(m.clone(), n.clone(), cand)?));
        }
    }
    let (values, exhaustive): (Vec<Scalar>, bool) = match f {
        Field::Prime(_) => (f.elements().expect("finite"), true),
        Field::Rational => ((-2..=2).map(|k| f.from_i64(k)).collect(), false),
    };
    let q = values.len() as u64;
    let total = match pow_bounded(q, h, budget) {
        Some(t) => t,
        None => return Err(Error::Undecided(budget)),
    };
    for code in 1..total {
        let mut c = code;
        let mut terms = Vec::with_capacity(h);
        for x in &mats {
            let digit = (c % q) as usize;
            c /= q;
            if !values[digit].is_zero() {
                terms.push((values[digit].clone(), *x));
            }
        }
        let cand = Matrix::combination(f, (m.dim(), n.dim()), &terms);
        if invertible_on_vertices(m, &cand, n) {
            return Ok(Some(ModuleMap::new(m.clone(), n.clone(), cand)?));
        }
    }
    if exhaustive {
        Ok(None)
    } else {
        Err(Error::Undecided(budget))
    }
}
