//! Endomorphism algebras of sums of pairwise non-isomorphic modules, the
//! functor `Hom(M, -)`, and equivalence checks on enumerated universes.
//!
//! `End(M)` multiplies as composition in diagrammatic order: `x y` is
//! "first `x`, then `y`", matching the row-vector convention. With this
//! product `Hom(M, X)` is a left `End(M)`-module by precomposition.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::certify::HarnessOptions;
use crate::enumerate::enumerate_modules;
use crate::error::{Error, Result};
use crate::homology::{min_proj_resolution, star_dual, Bounded};
use crate::linalg::{Field, Matrix};
use crate::module::{direct_sum, hom_dim, hom_space, Module, ModuleMap, Side};
use crate::refl::{
    dominant_dimension, is_mono_with_torsion_free_cokernel, is_refl_cokernel_of_kernel, is_reflexive,
    two_sided_22,
};
use crate::search::is_isomorphic;

/// Nonzero modules over one algebra and side, certified pairwise
/// non-isomorphic.
#[derive(Clone, Debug)]
pub struct SummandList {
    pub summands: Vec<Module>,
    pub pairwise_noniso: bool,
}

impl SummandList {
    pub fn new(summands: Vec<Module>, budget: u64) -> Result<SummandList> {
        if summands.is_empty() {
            return Err(Error::InvalidModule("empty summand list".into()));
        }
        for (i, m) in summands.iter().enumerate() {
            if m.is_zero() {
                return Err(Error::InvalidModule(format!("summand {} is zero", i + 1)));
            }
            summands[0].check_same(m)?;
        }
        for i in 0..summands.len() {
            for j in i + 1..summands.len() {
                if is_isomorphic(&summands[i], &summands[j], budget)?.is_some() {
                    return Err(Error::NotPairwiseNoniso(i + 1, j + 1));
                }
            }
        }
        Ok(SummandList { summands, pairwise_noniso: true })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.summands[0].algebra()
    }

    pub fn side(&self) -> Side {
        self.summands[0].side()
    }

    pub fn sum(&self) -> Module {
        direct_sum(self.algebra(), self.side(), &self.summands).0
    }
}

/// Where each basis element of `End(M)` comes from.
#[derive(Clone, Debug)]
pub struct HomEntry {
    pub source: usize,
    pub target: usize,
    pub map: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: Arc<Algebra>,
    pub summands: SummandList,
    /// Basis element `k` of the algebra is `dictionary[k].map`.
    pub dictionary: Vec<HomEntry>,
    /// Basis indices of the maps `M_i -> M_j`.
    pub blocks: Vec<Vec<Vec<usize>>>,
}

/// Solves `v = sum c_k basis_k` for maps given as flattened matrices.
fn coordinates(f: Field, basis: &[&Matrix], v: &Matrix) -> Result<Matrix> {
    let mut flat = Matrix::zeros(f, 0, v.rows() * v.cols());
    for b in basis {
        flat = flat.vstack(&b.flatten());
    }
    flat.solve_left(&v.flatten())?
        .ok_or_else(|| Error::Internal("map is not in the span of the hom basis".into()))
}

pub fn end_algebra(ms: &SummandList) -> Result<EndAlgebra> {
    let f = ms.algebra().field();
    let s = ms.summands.len();
    let mut dictionary = Vec::new();
    let mut blocks = vec![vec![Vec::new(); s]; s];
    for i in 0..s {
        for j in 0..s {
            for h in hom_space(&ms.summands[i], &ms.summands[j])? {
                blocks[i][j].push(dictionary.len());
                dictionary.push(HomEntry { source: i, target: j, map: h });
            }
        }
    }
    let d = dictionary.len();
    let zero_row = vec![f.zero(); d];
    let mut table = vec![vec![zero_row.clone(); d]; d];
    for (x, ex) in dictionary.iter().enumerate() {
        for (y, ey) in dictionary.iter().enumerate() {
            if ex.target != ey.source {
                continue;
            }
            let prod = ex.map.matrix().mul(ey.map.matrix());
            let idx = &blocks[ex.source][ey.target];
            if idx.is_empty() {
                continue;
            }
            let basis: Vec<&Matrix> = idx.iter().map(|&k| dictionary[k].map.matrix()).collect();
            let c = coordinates(f, &basis, &prod)?;
            for (n, &k) in idx.iter().enumerate() {
                table[x][y][k] = c.get(0, n);
            }
        }
    }
    let mut idempotents = Vec::new();
    let mut unit = vec![f.zero(); d];
    for i in 0..s {
        let idx = &blocks[i][i];
        let basis: Vec<&Matrix> = idx.iter().map(|&k| dictionary[k].map.matrix()).collect();
        let c = coordinates(f, &basis, &Matrix::identity(f, ms.summands[i].dim()))?;
        let mut e = vec![f.zero(); d];
        for (n, &k) in idx.iter().enumerate() {
            e[k] = c.get(0, n);
            unit[k] = c.get(0, n);
        }
        idempotents.push(e);
    }
    let mut labels = vec![String::new(); d];
    for (i, row) in blocks.iter().enumerate() {
        for (j, idx) in row.iter().enumerate() {
            for (n, &k) in idx.iter().enumerate() {
                labels[k] = format!("h{}{}_{}", i + 1, j + 1, n + 1);
            }
        }
    }
    let algebra = Algebra::from_table(f, labels, table, unit, idempotents)?;
    Ok(EndAlgebra { algebra, summands: ms.clone(), dictionary, blocks })
}

impl EndAlgebra {
    /// `Hom(M, x)` as a left module, with basis `hom_space(M_i, x)` at vertex `i`.
    pub fn hom_functor(&self, x: &Module) -> Result<(Module, Vec<Vec<ModuleMap>>)> {
        let ms = &self.summands.summands;
        ms[0].check_same(x)?;
        let f = x.field();
        let bases: Vec<Vec<ModuleMap>> = ms.iter().map(|m| hom_space(m, x)).collect::<Result<_>>()?;
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let n: usize = dims.iter().sum();
        let mut offs = vec![0];
        for d in &dims {
            offs.push(offs.last().unwrap() + d);
        }
        let mut actions = Vec::with_capacity(self.dictionary.len());
        for e in &self.dictionary {
            // h in Hom(M_target, x) goes to e.map . h in Hom(M_source, x)
            let mut a = Matrix::zeros(f, n, n);
            let (i, j) = (e.source, e.target);
            if dims[i] > 0 {
                let basis: Vec<&Matrix> = bases[i].iter().map(|b| b.matrix()).collect();
                for (r, h) in bases[j].iter().enumerate() {
                    let c = coordinates(f, &basis, &e.map.matrix().mul(h.matrix()))?;
                    a.set_block(offs[j] + r, offs[i], &c);
                }
            }
            actions.push(a);
        }
        let module = Module::from_parts_over(&self.algebra, Side::Left, dims, actions);
        module.validate()?;
        Ok((module, bases))
    }

    /// `Hom(M, f)`: postcomposition with `f`.
    pub fn hom_functor_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        let (fx, bx) = self.hom_functor(f.source())?;
        let (fy, by) = self.hom_functor(f.target())?;
        let field = f.source().field();
        let mut mat = Matrix::zeros(field, fx.dim(), fy.dim());
        for i in 0..bx.len() {
            let basis: Vec<&Matrix> = by[i].iter().map(|b| b.matrix()).collect();
            for (r, h) in bx[i].iter().enumerate() {
                if basis.is_empty() {
                    continue;
                }
                let c = coordinates(field, &basis, &h.matrix().mul(f.matrix()))?;
                mat.set_block(fx.offset(i) + r, fy.offset(i), &c);
            }
        }
        ModuleMap::new(fx, fy, mat)
    }

    /// The map `M^a -> M^b` corresponding to a map between sums of the
    /// projectives `Hom(M, M_v)`.
    fn transport(&self, src: &[usize], tgt: &[usize], entries: &[Vec<Matrix>]) -> Result<ModuleMap> {
        let ms = &self.summands.summands;
        let a = self.summands.algebra();
        let side = self.summands.side();
        let f = a.field();
        let (m0, _, prj0) = direct_sum(a, side, &src.iter().map(|&v| ms[v].clone()).collect::<Vec<_>>());
        let (m1, inj1, _) = direct_sum(a, side, &tgt.iter().map(|&v| ms[v].clone()).collect::<Vec<_>>());
        let mut mat = Matrix::zeros(f, m0.dim(), m1.dim());
        for (x, &v) in src.iter().enumerate() {
            for (y, &w) in tgt.iter().enumerate() {
                let e = &entries[x][y];
                let mut block = Matrix::zeros(f, ms[v].dim(), ms[w].dim());
                for &k in &self.blocks[v][w] {
                    let c = e.get(0, k);
                    if !c.is_zero() {
                        block.add_scaled(&c, self.dictionary[k].map.matrix());
                    }
                }
                let full = prj0[x].matrix().mul(&block).mul(inj1[y].matrix());
                mat = mat.add(&full);
            }
        }
        ModuleMap::new(m0, m1, mat)
    }

    /// For a reflexive left module `l` over the endomorphism algebra, the
    /// module `X = Ker(M^0 -> M^1)` transported from `0 -> l -> P^0 -> P^1`.
    pub fn preimage_of_reflexive(&self, l: &Module) -> Result<Module> {
        let sd = star_dual(l)?;
        let res = min_proj_resolution(&sd.module, 1)?;
        let g = match res.elements.first() {
            Some(d1) => {
                let d = d1.dual();
                self.transport(&d.source, &d.target, &d.entries)?
            }
            None => {
                let p0 = res.vertices(0).to_vec();
                self.transport(&p0, &[], &vec![vec![]; p0.len()])?
            }
        };
        Ok(g.kernel().0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    ModuleCategory,
    ReflMax,
}

/// `add M` contains every indecomposable projective (generator) or every
/// indecomposable injective (cogenerator); in `ReflMax` mode every
/// enumerated reflexive admits a deflation from (inflation into) `add M`.
pub fn is_generator(ms: &SummandList, mode: Mode, opts: &HarnessOptions) -> Result<bool> {
    approximation_check(ms, mode, opts, true)
}

pub fn is_cogenerator(ms: &SummandList, mode: Mode, opts: &HarnessOptions) -> Result<bool> {
    approximation_check(ms, mode, opts, false)
}

fn contains_all(ms: &SummandList, targets: &[Module], budget: u64) -> Result<bool> {
    for t in targets {
        let mut found = false;
        for m in &ms.summands {
            if is_isomorphic(m, t, budget)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn approximation_check(ms: &SummandList, mode: Mode, opts: &HarnessOptions, generator: bool) -> Result<bool> {
    let a = ms.algebra();
    let side = ms.side();
    match mode {
        Mode::ModuleCategory => {
            let targets: Vec<Module> = (0..a.vertex_count())
                .map(|v| if generator { Module::projective(a, side, v) } else { Module::injective(a, side, v) })
                .collect::<Result<_>>()?;
            contains_all(ms, &targets, opts.search_budget)
        }
        Mode::ReflMax => {
            if !two_sided_22(a)? {
                return Err(Error::ConditionFails("the maximum exact structure needs the two-sided (2,2)-condition".into()));
            }
            let u = enumerate_modules(a, side, opts.dim_budget, opts.search_budget)?;
            let refl: Vec<Module> = u
                .modules
                .into_par_iter()
                .filter(|m| is_reflexive(m).unwrap_or(false))
                .collect();
            let ok: Vec<bool> = refl
                .par_iter()
                .map(|x| {
                    if generator {
                        let p = right_approximation(ms, x)?;
                        is_refl_cokernel_of_kernel(&p)
                    } else {
                        let i = left_approximation(ms, x)?;
                        is_mono_with_torsion_free_cokernel(&i)
                    }
                })
                .collect::<Result<_>>()?;
            Ok(ok.into_iter().all(|b| b))
        }
    }
}

/// `sum_i M_i (x) Hom(M_i, x) -> x`.
pub fn right_approximation(ms: &SummandList, x: &Module) -> Result<ModuleMap> {
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for m in &ms.summands {
        for h in hom_space(m, x)? {
            parts.push(m.clone());
            maps.push(h);
        }
    }
    let (sum, _, prj) = direct_sum(x.algebra(), x.side(), &parts);
    let mut acc = ModuleMap::zero(&sum, x);
    for (p, h) in prj.iter().zip(&maps) {
        acc = acc.add(&p.then(h)?);
    }
    Ok(acc)
}

/// `x -> sum_i M_i (x) D Hom(x, M_i)`.
pub fn left_approximation(ms: &SummandList, x: &Module) -> Result<ModuleMap> {
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for m in &ms.summands {
        for h in hom_space(x, m)? {
            parts.push(m.clone());
            maps.push(h);
        }
    }
    let (sum, inj, _) = direct_sum(x.algebra(), x.side(), &parts);
    let mut acc = ModuleMap::zero(x, &sum);
    for (i, h) in inj.iter().zip(&maps) {
        acc = acc.add(&h.then(i)?);
    }
    Ok(acc)
}

/// Outcome of one named check in an equivalence report.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub instances: usize,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub end_dim: usize,
    pub dominant_dimension: Bounded,
    pub checks: Vec<Check>,
    /// Indecomposable reflexive modules over the endomorphism algebra and
    /// indecomposable source modules, within the transported budget.
    pub counts: Option<(usize, usize)>,
}

impl EquivalenceReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn violation(what: &str) -> Error {
    Error::TheoremViolation(what.to_string())
}

/// Checks `Hom(M, -)` against the Morita-type theorems on the enumerated
/// universe of the source category. Any failed check is returned as a
/// theorem violation.
pub fn verify_equivalence(ms: &SummandList, mode: Mode, opts: &HarnessOptions) -> Result<EquivalenceReport> {
    let e = end_algebra(ms)?;
    let lam = e.algebra.clone();
    let a = ms.algebra();
    let side = ms.side();
    let mut checks = Vec::new();

    // (a)
    if !two_sided_22(&lam)? {
        return Err(violation("End(M) fails the two-sided (2,2)-condition"));
    }
    checks.push(Check { name: "two_sided_22", passed: true, instances: 1 });

    let u = enumerate_modules(a, side, opts.dim_budget, opts.search_budget)?;
    let mut xs: Vec<Module> = u.modules.clone();
    if mode == Mode::ReflMax {
        xs = xs.into_par_iter().filter(|m| is_reflexive(m).unwrap_or(false)).collect();
    }
    let images: Vec<Module> = xs.par_iter().map(|x| Ok(e.hom_functor(x)?.0)).collect::<Result<_>>()?;

    // (b) full faithfulness in dimensions
    let pairs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..xs.len()).map(move |j| (i, j))).collect();
    let bad = pairs
        .par_iter()
        .map(|&(i, j)| Ok(hom_dim(&xs[i], &xs[j])? != hom_dim(&images[i], &images[j])?))
        .collect::<Result<Vec<bool>>>()?;
    if bad.iter().any(|&b| b) {
        return Err(violation("Hom(M, -) is not fully faithful on an enumerated pair"));
    }
    checks.push(Check { name: "fully_faithful", passed: true, instances: pairs.len() });

    // (c) Hom(M, x)* against Hom(x, M), and reflexivity of the image
    let sum = ms.sum();
    let ok: Vec<bool> = xs
        .par_iter()
        .zip(&images)
        .map(|(x, fx)| Ok(star_dual(fx)?.module.dim() == hom_dim(x, &sum)? && is_reflexive(fx)?))
        .collect::<Result<_>>()?;
    if ok.iter().any(|&b| !b) {
        return Err(violation("dual of Hom(M, x) differs from Hom(x, M) or is not reflexive"));
    }
    checks.push(Check { name: "duality_and_reflexive_image", passed: true, instances: xs.len() });

    // (d) essential surjectivity on enumerated reflexives over End(M)
    let lu = enumerate_modules(&lam, Side::Left, opts.dim_budget, opts.search_budget)?;
    let lflags: Vec<bool> = lu.modules.par_iter().map(is_reflexive).collect::<Result<_>>()?;
    let lrefl: Vec<(&Module, bool)> =
        lu.modules.iter().zip(&lu.indecomposable).zip(&lflags).filter(|(_, &r)| r).map(|((m, &i), _)| (m, i)).collect();
    let ok: Vec<bool> = lrefl
        .par_iter()
        .map(|(l, _)| {
            let x = e.preimage_of_reflexive(l)?;
            let fx = e.hom_functor(&x)?.0;
            Ok(is_isomorphic(&fx, l, opts.search_budget)?.is_some())
        })
        .collect::<Result<_>>()?;
    if ok.iter().any(|&b| !b) {
        return Err(violation("an enumerated reflexive module is not in the image of Hom(M, -)"));
    }
    checks.push(Check { name: "essentially_surjective", passed: true, instances: lrefl.len() });

    // (e) indecomposable counts
    let ddim = dominant_dimension(&lam, Side::Left, 4)?;
    let mut counts = None;
    if mode == Mode::ModuleCategory && ddim.at_least(2) {
        let refl_ind = lrefl.iter().filter(|(_, i)| *i).count();
        let mut src_ind = 0;
        for (x, ind) in u.modules.iter().zip(&u.indecomposable) {
            if *ind && e.hom_functor(x)?.0.dim() <= opts.dim_budget {
                src_ind += 1;
            }
        }
        if refl_ind != src_ind {
            return Err(violation(&format!(
                "{refl_ind} indecomposable reflexives against {src_ind} indecomposable source modules"
            )));
        }
        checks.push(Check { name: "indecomposable_count", passed: true, instances: refl_ind });
        counts = Some((refl_ind, src_ind));
    }
    Ok(EquivalenceReport { end_dim: lam.dim(), dominant_dimension: ddim, checks, counts })
}

/// For a two-sided (2,2) algebra and a list of reflexive modules containing
/// the regular module's summands, checks the generator-cogenerator property
/// in the maximum exact structure, the (2,2)-condition on `End(M)`, and the
/// equivalence `refl` to `refl End(M)`.
pub fn reflexive_equivalence_check(ms: &SummandList, opts: &HarnessOptions) -> Result<EquivalenceReport> {
    let a = ms.algebra();
    if !two_sided_22(a)? {
        return Err(Error::ConditionFails("the ambient algebra fails the two-sided (2,2)-condition".into()));
    }
    for m in &ms.summands {
        if !is_reflexive(m)? {
            return Err(Error::InvalidModule("summands must be reflexive".into()));
        }
    }
    let projs: Vec<Module> =
        (0..a.vertex_count()).map(|v| Module::projective(a, ms.side(), v)).collect::<Result<_>>()?;
    if !contains_all(ms, &projs, opts.search_budget)? {
        return Err(Error::InvalidModule("the list must contain the regular module".into()));
    }
    if !is_generator(ms, Mode::ReflMax, opts)? || !is_cogenerator(ms, Mode::ReflMax, opts)? {
        return Err(violation("a list containing the regular module is not a generator-cogenerator of refl"));
    }
    verify_equivalence(ms, Mode::ReflMax, opts)
}

/// Witness-free summary used by reports: dimension vectors of the summands.
pub fn summand_dims(ms: &SummandList) -> Vec<Vec<usize>> {
    ms.summands.iter().map(|m| m.dims().to_vec()).collect()
}
