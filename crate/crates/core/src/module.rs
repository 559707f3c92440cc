//! Finitely generated modules as representations.
//!
//! Internally every module is a right module over a ring `R` in the row
//! convention: `v` maps to `v * rho(x)` and `rho(x) rho(y) = rho(x y)`. A right
//! module over the algebra uses `R = A`; a left module is a right module over
//! `R = A^op`, which has the same basis. The basis of a module is grouped by
//! vertex: the block `offsets[i]..offsets[i] + dims[i]` spans `M e_i`.

use std::ops::Range;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Algebra, Generator};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// The ring over which `side` modules of `algebra` are right modules.
pub fn ring_for(algebra: &Arc<Algebra>, side: Side) -> Arc<Algebra> {
    match side {
        Side::Left => algebra.opposite(),
        Side::Right => algebra.clone(),
    }
}

struct ModuleInner {
    algebra: Arc<Algebra>,
    side: Side,
    ring: Arc<Algebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    actions: Vec<Matrix>,
    generator_blocks: OnceLock<Vec<Matrix>>,
}

#[derive(Clone)]
pub struct Module(Arc<ModuleInner>);

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module[{} dims {:?}]", self.side().name(), self.dims())
    }
}

impl PartialEq for Module {
    /// Equality of presentations: same category, same basis, same actions.
    fn eq(&self, other: &Self) -> bool {
        self.same_category(other) && self.0.dims == other.0.dims && self.0.actions == other.0.actions
    }
}

impl Eq for Module {}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for &d in dims {
        off.push(acc);
        acc += d;
    }
    off.push(acc);
    off
}

/// Restricts actions to the row space of `iota` (full row rank, invariant).
#[derive(Debug)]
pub(crate) struct Restrictor {
    iota: Matrix,
    pivots: Vec<usize>,
    inv: Matrix,
}

impl Restrictor {
    pub(crate) fn new(iota: Matrix) -> Restrictor {
        let r = iota.rref();
        let pivots = r.pivot_cols.clone();
        let inv = iota.select_cols(&pivots).inverse().expect("restrictor needs full row rank");
        Restrictor { iota, pivots, inv }
    }

    /// Coordinates of the rows of `v` in the basis `iota` (assumes membership).
    pub(crate) fn coords(&self, v: &Matrix) -> Matrix {
        v.select_cols(&self.pivots).mul(&self.inv)
    }

    pub(crate) fn restrict(&self, a: &Matrix) -> Matrix {
        self.coords(&self.iota.mul(a))
    }
}

impl Module {
    fn assemble(algebra: Arc<Algebra>, side: Side, ring: Arc<Algebra>, dims: Vec<usize>, actions: Vec<Matrix>) -> Module {
        let offsets = offsets_of(&dims);
        Module(Arc::new(ModuleInner {
            algebra,
            side,
            ring,
            dims,
            offsets,
            actions,
            generator_blocks: OnceLock::new(),
        }))
    }

    /// Builds a module from vertex-grouped actions without checks.
    pub(crate) fn from_parts(like: &Module, dims: Vec<usize>, actions: Vec<Matrix>) -> Module {
        Module::assemble(like.0.algebra.clone(), like.0.side, like.0.ring.clone(), dims, actions)
    }

    pub(crate) fn from_parts_over(algebra: &Arc<Algebra>, side: Side, dims: Vec<usize>, actions: Vec<Matrix>) -> Module {
        Module::assemble(algebra.clone(), side, ring_for(algebra, side), dims, actions)
    }

    pub fn zero(algebra: &Arc<Algebra>, side: Side) -> Module {
        let ring = ring_for(algebra, side);
        let f = algebra.field();
        let actions = (0..algebra.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Module::assemble(algebra.clone(), side, ring, vec![0; algebra.vertex_count()], actions)
    }

    /// A module from full action matrices, one per basis element of the
    /// algebra (`v -> v * rho(b)` realizes `b . v` for left modules and
    /// `v . b` for right modules). The basis is re-chosen to be grouped by
    /// vertex; the returned matrix has the new basis vectors as rows, in the
    /// old coordinates.
    pub fn from_actions(algebra: &Arc<Algebra>, side: Side, actions: Vec<Matrix>) -> Result<(Module, Matrix)> {
        let ring = ring_for(algebra, side);
        let d = algebra.dim();
        if actions.len() != d {
            return Err(Error::InvalidModule(format!("expected {d} action matrices, got {}", actions.len())));
        }
        let n = actions[0].rows();
        if actions.iter().any(|a| a.shape() != (n, n)) {
            return Err(Error::InvalidModule("action matrices must be square of equal size".into()));
        }
        let f = algebra.field();
        let mut dims = Vec::new();
        let mut basis = Matrix::zeros(f, 0, n);
        for e in ring.idempotents() {
            let rho = combine(f, &actions, e, n);
            let img = rho.row_space();
            dims.push(img.rows());
            basis = basis.vstack(&img);
        }
        if basis.rows() != n || !basis.is_invertible() {
            return Err(Error::InvalidModule("idempotent actions do not decompose the space".into()));
        }
        let inv = basis.inverse().expect("checked invertible");
        let new_actions: Vec<Matrix> = actions.iter().map(|a| basis.mul(a).mul(&inv)).collect();
        let m = Module::assemble(algebra.clone(), side, ring, dims, new_actions);
        m.validate()?;
        Ok((m, basis))
    }

    /// A module from per-vertex dimensions and the action blocks of the ring
    /// generators (`ring.structure().generators`), extended along the word
    /// basis. Requires a basic algebra.
    pub fn from_generator_blocks(algebra: &Arc<Algebra>, side: Side, dims: Vec<usize>, blocks: &[Matrix]) -> Result<Module> {
        let m = Module::from_generator_blocks_unchecked(algebra, side, dims, blocks)?;
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_generator_blocks_unchecked(
        algebra: &Arc<Algebra>,
        side: Side,
        dims: Vec<usize>,
        blocks: &[Matrix],
    ) -> Result<Module> {
        let ring = ring_for(algebra, side);
        let basic = ring.basic()?;
        if dims.len() != ring.vertex_count() {
            return Err(Error::InvalidModule(format!("expected {} vertex dimensions", ring.vertex_count())));
        }
        if blocks.len() != basic.arrows.len() {
            return Err(Error::InvalidModule("one block per generator expected".into()));
        }
        let f = ring.field();
        let off = offsets_of(&dims);
        let n = off[dims.len()];
        let mut full = Vec::with_capacity(blocks.len());
        for (g, b) in basic.arrows.iter().zip(blocks) {
            if b.shape() != (dims[g.source], dims[g.target]) {
                return Err(Error::InvalidModule(format!(
                    "block for a generator {} -> {} must be {} x {}",
                    g.source + 1,
                    g.target + 1,
                    dims[g.source],
                    dims[g.target]
                )));
            }
            let mut m = Matrix::zeros(f, n, n);
            m.set_block(off[g.source], off[g.target], b);
            full.push(m);
        }
        let mut word_mats = Vec::with_capacity(basic.words.len());
        for w in &basic.words {
            let mut m = Matrix::zeros(f, n, n);
            m.set_block(off[w.start], off[w.start], &Matrix::identity(f, dims[w.start]));
            for &a in &w.arrows {
                m = m.mul(&full[a]);
            }
            word_mats.push(m);
        }
        let actions = (0..ring.dim())
            .map(|b| {
                let terms: Vec<(Scalar, &Matrix)> =
                    (0..word_mats.len()).map(|k| (basic.coords.get(b, k), &word_mats[k])).collect();
                Matrix::combination(f, (n, n), &terms)
            })
            .collect();
        Ok(Module::assemble(algebra.clone(), side, ring, dims, actions))
    }

    /// Checks that the actions form a representation of the ring.
    pub fn validate(&self) -> Result<()> {
        let ring = &self.0.ring;
        let f = ring.field();
        let n = self.dim();
        if self.action_of(ring.unit()) != Matrix::identity(f, n) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for (i, e) in ring.idempotents().iter().enumerate() {
            let mut expect = Matrix::zeros(f, n, n);
            expect.set_block(self.offset(i), self.offset(i), &Matrix::identity(f, self.dims()[i]));
            if self.action_of(e) != expect {
                return Err(Error::InvalidModule(format!("idempotent {} does not act as a vertex projection", i + 1)));
            }
        }
        let st = ring.structure();
        for g in &st.generators {
            let rg = self.action_of(&g.elem);
            for b in 0..ring.dim() {
                let prod = ring.mul(&ring.basis_vector(b), &g.elem);
                if self.0.actions[b].mul(&rg) != self.action_of(&prod) {
                    return Err(Error::InvalidModule(format!(
                        "actions violate the multiplication table at basis element {:?}",
                        ring.labels()[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn ring(&self) -> &Arc<Algebra> {
        &self.0.ring
    }

    pub fn side(&self) -> Side {
        self.0.side
    }

    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self) -> usize {
        *self.0.offsets.last().unwrap_or(&0)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn offset(&self, v: usize) -> usize {
        self.0.offsets[v]
    }

    pub fn range(&self, v: usize) -> Range<usize> {
        self.0.offsets[v]..self.0.offsets[v + 1]
    }

    /// Vertex owning basis index `k`.
    pub fn vertex_of(&self, k: usize) -> usize {
        (0..self.dims().len()).find(|&v| self.range(v).contains(&k)).expect("index in range")
    }

    /// Action matrix of basis element `b`.
    pub fn action(&self, b: usize) -> &Matrix {
        &self.0.actions[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.0.actions
    }

    /// Action of an arbitrary ring element given as a `1 x dim` row.
    pub fn action_of(&self, x: &Matrix) -> Matrix {
        combine(self.field(), &self.0.actions, x, self.dim())
    }

    /// Action blocks of the ring generators, `source -> target`.
    pub fn generator_blocks(&self) -> &[Matrix] {
        self.0.generator_blocks.get_or_init(|| {
            self.0
                .ring
                .structure()
                .generators
                .iter()
                .map(|g| self.block_of(g))
                .collect()
        })
    }

    pub fn block_of(&self, g: &Generator) -> Matrix {
        self.action_of(&g.elem).submatrix(self.range(g.source), self.range(g.target))
    }

    pub fn same_category(&self, other: &Module) -> bool {
        self.0.side == other.0.side && self.0.algebra.same_as(&other.0.algebra)
    }

    pub(crate) fn check_same(&self, other: &Module) -> Result<()> {
        if self.same_category(other) {
            Ok(())
        } else {
            Err(Error::SideMismatch)
        }
    }

    /// Arrow matrices of a quiver-presented algebra, keyed by arrow name.
    pub fn arrow_matrices(&self) -> Option<Vec<(String, Matrix)>> {
        let p = self.algebra().presentation()?;
        let out = p
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let x = self.0.ring.basis_vector(p.arrow_basis[k]);
                let (s, t) = match self.side() {
                    Side::Left => (a.source, a.target),
                    Side::Right => (a.target, a.source),
                };
                (a.name.clone(), self.action_of(&x).submatrix(self.range(s), self.range(t)))
            })
            .collect();
        Some(out)
    }

    /// A representation of a quiver-presented algebra: `arrows` gives the
    /// matrix of each named arrow (`d_source x d_target` for left modules,
    /// `d_target x d_source` for right modules). Missing arrows act by zero.
    pub fn from_arrow_matrices(
        algebra: &Arc<Algebra>,
        side: Side,
        dims: Vec<usize>,
        arrows: &[(String, Matrix)],
    ) -> Result<Module> {
        let p = algebra
            .presentation()
            .ok_or_else(|| Error::InvalidModule("algebra has no quiver presentation".into()))?;
        let ring = ring_for(algebra, side);
        let basic = ring.basic()?;
        let f = algebra.field();
        for (name, _) in arrows {
            if p.quiver.arrow_index(name).is_none() {
                return Err(Error::InvalidModule(format!("unknown arrow {name:?}")));
            }
        }
        if dims.len() != ring.vertex_count() {
            return Err(Error::InvalidModule(format!("expected {} vertex dimensions", ring.vertex_count())));
        }
        let mut blocks = Vec::new();
        for g in &basic.arrows {
            let k = p
                .arrow_basis
                .iter()
                .position(|&b| g.elem == ring.basis_vector(b))
                .ok_or_else(|| Error::Internal("generator is not an arrow".into()))?;
            let name = &p.quiver.arrows[k].name;
            let block = match arrows.iter().find(|(n, _)| n == name) {
                Some((_, m)) => m.clone(),
                None => Matrix::zeros(f, dims[g.source], dims[g.target]),
            };
            blocks.push(block);
        }
        Module::from_generator_blocks(algebra, side, dims, &blocks)
    }
}

fn combine(f: Field, actions: &[Matrix], x: &Matrix, n: usize) -> Matrix {
    let terms: Vec<(Scalar, &Matrix)> = (0..actions.len())
        .filter(|&b| !x.get(0, b).is_zero())
        .map(|b| (x.get(0, b), &actions[b]))
        .collect();
    Matrix::combination(f, (n, n), &terms)
}

/// A module homomorphism, stored as one block-diagonal matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleMap {
    /// Checks shape, vertex compatibility and the intertwining identities.
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleMap> {
        source.check_same(&target)?;
        if matrix.shape() != (source.dim(), target.dim()) {
            return Err(Error::InvalidMap(format!(
                "matrix is {:?}, expected {:?}",
                matrix.shape(),
                (source.dim(), target.dim())
            )));
        }
        let nv = source.dims().len();
        for i in 0..nv {
            for j in 0..nv {
                if i != j && !matrix.submatrix(source.range(i), target.range(j)).is_zero() {
                    return Err(Error::InvalidMap("map mixes vertex components".into()));
                }
            }
        }
        let map = ModuleMap { source, target, matrix };
        let st = map.source.ring().structure();
        for (k, g) in st.generators.iter().enumerate() {
            let a = &map.source.generator_blocks()[k];
            let b = &map.target.generator_blocks()[k];
            if a.mul(&map.block(g.target)) != map.block(g.source).mul(b) {
                return Err(Error::InvalidMap("map does not commute with the action".into()));
            }
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Matrix) -> ModuleMap {
        debug_assert_eq!(matrix.shape(), (source.dim(), target.dim()));
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        ModuleMap::new_unchecked(source.clone(), target.clone(), Matrix::zeros(source.field(), source.dim(), target.dim()))
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// The vertex-`v` block.
    pub fn block(&self, v: usize) -> Matrix {
        self.matrix.submatrix(self.source.range(v), self.target.range(v))
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ModuleMap) -> Result<ModuleMap> {
        if self.target.dim() != g.source.dim() || !self.target.same_category(&g.source) {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        Ok(ModuleMap::new_unchecked(self.source.clone(), g.target.clone(), self.matrix.mul(&g.matrix)))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        if !self.is_iso() {
            return None;
        }
        Some(ModuleMap::new_unchecked(self.target.clone(), self.source.clone(), self.matrix.inverse()?))
    }

    /// `D(f): D(target) -> D(source)`.
    pub fn d_dual(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.target.d_dual(), self.source.d_dual(), self.matrix.transpose())
    }

    pub fn kernel(&self) -> (Module, ModuleMap) {
        let bases = (0..self.source.dims().len()).map(|v| self.block(v).left_kernel_basis()).collect();
        self.source.submodule(bases)
    }

    /// The image with the factorization `source -> image -> target`.
    pub fn image(&self) -> (Module, ModuleMap, ModuleMap) {
        let bases = (0..self.target.dims().len()).map(|v| self.block(v).row_space()).collect();
        let (im, incl) = self.target.submodule(bases);
        let r = Restrictor::new(incl.matrix.clone());
        let coeff = if im.dim() == 0 {
            Matrix::zeros(self.source.field(), self.source.dim(), 0)
        } else {
            r.coords(&self.matrix)
        };
        let onto = ModuleMap::new_unchecked(self.source.clone(), im.clone(), coeff);
        (im, onto, incl)
    }

    pub fn cokernel(&self) -> (Module, ModuleMap) {
        let subs = (0..self.target.dims().len()).map(|v| self.block(v)).collect();
        self.target.quotient(subs)
    }
}

/// Basis of `Hom(m, n)`, from the kernel of the stacked commutation system.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    m.check_same(n)?;
    let f = m.field();
    let nv = m.dims().len();
    let (dm, dn) = (m.dims(), n.dims());
    let mut var_off = vec![0; nv + 1];
    for v in 0..nv {
        var_off[v + 1] = var_off[v] + dm[v] * dn[v];
    }
    let nvars = var_off[nv];
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let st = m.ring().structure();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (k, g) in st.generators.iter().enumerate() {
        let (i, j) = (g.source, g.target);
        let a = &m.generator_blocks()[k];
        let b = &n.generator_blocks()[k];
        // A F_j - F_i B = 0, entry (r, c)
        for r in 0..dm[i] {
            for c in 0..dn[j] {
                let mut row = vec![f.zero(); nvars];
                let mut nonzero = false;
                for kk in 0..dm[j] {
                    let x = a.get(r, kk);
                    if !x.is_zero() {
                        let idx = var_off[j] + kk * dn[j] + c;
                        row[idx] = f.add(&row[idx], &x);
                        nonzero = true;
                    }
                }
                for kk in 0..dn[i] {
                    let x = b.get(kk, c);
                    if !x.is_zero() {
                        let idx = var_off[i] + r * dn[i] + kk;
                        row[idx] = f.add(&row[idx], &f.neg(&x));
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_rows_with_cols(f, &rows, nvars)?;
    let ker = sys.kernel_basis();
    let mut out = Vec::with_capacity(ker.rows());
    for h in 0..ker.rows() {
        let mut mat = Matrix::zeros(f, m.dim(), n.dim());
        for v in 0..nv {
            for r in 0..dm[v] {
                for c in 0..dn[v] {
                    let x = ker.get(h, var_off[v] + r * dn[v] + c);
                    if !x.is_zero() {
                        mat.set(m.offset(v) + r, n.offset(v) + c, x);
                    }
                }
            }
        }
        out.push(ModuleMap::new_unchecked(m.clone(), n.clone(), mat));
    }
    Ok(out)
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

impl Module {
    /// The submodule spanned by the given per-vertex row bases (local
    /// coordinates, linearly independent, assumed invariant).
    pub fn submodule(&self, bases: Vec<Matrix>) -> (Module, ModuleMap) {
        let f = self.field();
        let dims: Vec<usize> = bases.iter().map(|b| b.rows()).collect();
        let k: usize = dims.iter().sum();
        let mut iota = Matrix::zeros(f, k, self.dim());
        let mut r0 = 0;
        for (v, b) in bases.iter().enumerate() {
            iota.set_block(r0, self.offset(v), b);
            r0 += b.rows();
        }
        let actions = if k == 0 {
            (0..self.actions().len()).map(|_| Matrix::zeros(f, 0, 0)).collect()
        } else {
            let r = Restrictor::new(iota.clone());
            self.actions().iter().map(|a| r.restrict(a)).collect()
        };
        let sub = Module::from_parts(self, dims, actions);
        let incl = ModuleMap::new_unchecked(sub.clone(), self.clone(), iota);
        (sub, incl)
    }

    /// The quotient by the submodule spanned by the per-vertex rows `subs`.
    pub fn quotient(&self, subs: Vec<Matrix>) -> (Module, ModuleMap) {
        let f = self.field();
        let nv = self.dims().len();
        let mut sections = Vec::new();
        let mut projs = Vec::new();
        let mut dims = Vec::new();
        for (v, u) in subs.iter().enumerate().take(nv) {
            let d = self.dims()[v];
            let rr = u.rref();
            let free: Vec<usize> = (0..d).filter(|c| !rr.pivot_cols.contains(c)).collect();
            let q = free.len();
            let mut s = Matrix::zeros(f, q, d);
            let mut p = Matrix::zeros(f, d, q);
            for (qi, &c) in free.iter().enumerate() {
                s.set(qi, c, f.one());
                p.set(c, qi, f.one());
                for (t, &pc) in rr.pivot_cols.iter().enumerate() {
                    let x = rr.reduced.get(t, c);
                    if !x.is_zero() {
                        p.set(pc, qi, f.neg(&x));
                    }
                }
            }
            dims.push(q);
            sections.push(s);
            projs.push(p);
        }
        let qdim: usize = dims.iter().sum();
        let mut sec = Matrix::zeros(f, qdim, self.dim());
        let mut proj = Matrix::zeros(f, self.dim(), qdim);
        let mut q0 = 0;
        for v in 0..nv {
            sec.set_block(q0, self.offset(v), &sections[v]);
            proj.set_block(self.offset(v), q0, &projs[v]);
            q0 += dims[v];
        }
        let actions = self.actions().iter().map(|a| sec.mul(a).mul(&proj)).collect();
        let quo = Module::from_parts(self, dims, actions);
        let map = ModuleMap::new_unchecked(self.clone(), quo.clone(), proj);
        (quo, map)
    }

    /// `D(M) = Hom_k(M, k)`, a module on the other side with transposed actions.
    pub fn d_dual(&self) -> Module {
        let side = self.side().flip();
        let actions = self.actions().iter().map(|a| a.transpose()).collect();
        Module::assemble(self.algebra().clone(), side, ring_for(self.algebra(), side), self.dims().to_vec(), actions)
    }

    /// The natural isomorphism `M -> D(D(M))`.
    pub fn double_dual_iso(&self) -> Result<ModuleMap> {
        ModuleMap::new(self.clone(), self.d_dual().d_dual(), Matrix::identity(self.field(), self.dim()))
    }

    /// The radical `M J` with its inclusion.
    pub fn radical(&self) -> Result<(Module, ModuleMap)> {
        let basic = self.ring().basic()?;
        let nv = self.dims().len();
        let f = self.field();
        let mut bases = Vec::with_capacity(nv);
        for t in 0..nv {
            let mut rows = Matrix::zeros(f, 0, self.dims()[t]);
            for s in 0..nv {
                let rad = &basic.radical[s][t];
                for r in 0..rad.rows() {
                    let a = self.action_of(&rad.select_rows(&[r]));
                    rows = rows.vstack(&a.submatrix(self.range(s), self.range(t)));
                }
            }
            bases.push(rows.row_space());
        }
        Ok(self.submodule(bases))
    }

    /// The socle: vectors annihilated by the radical of the ring.
    pub fn socle(&self) -> Result<(Module, ModuleMap)> {
        let basic = self.ring().basic()?;
        let nv = self.dims().len();
        let f = self.field();
        let mut bases = Vec::with_capacity(nv);
        for s in 0..nv {
            let mut cols = Matrix::zeros(f, self.dims()[s], 0);
            for g in basic.arrows.iter().filter(|g| g.source == s) {
                cols = cols.hstack(&self.block_of(g));
            }
            bases.push(cols.left_kernel_basis());
        }
        Ok(self.submodule(bases))
    }

    /// `M / rad M` with the projection.
    pub fn top(&self) -> Result<(Module, ModuleMap)> {
        let (_, incl) = self.radical()?;
        Ok(incl.cokernel())
    }

    /// Multiplicity of each simple module, read off the radical series.
    pub fn composition_factors(&self) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.dims().len()];
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (rad, _) = cur.radical()?;
            if rad.dim() == cur.dim() {
                return Err(Error::Internal("radical series does not descend".into()));
            }
            for (v, c) in counts.iter_mut().enumerate() {
                *c += cur.dims()[v] - rad.dims()[v];
            }
            cur = rad;
        }
        Ok(counts)
    }

    pub fn simple(algebra: &Arc<Algebra>, side: Side, i: usize) -> Result<Module> {
        Ok(Module::projective(algebra, side, i)?.top()?.0)
    }

    /// The indecomposable projective at vertex `i`: `A e_i` for left modules,
    /// `e_i A` for right modules.
    pub fn projective(algebra: &Arc<Algebra>, side: Side, i: usize) -> Result<Module> {
        ring_for(algebra, side).basic()?;
        Ok(peirce_projective(algebra, side, i).0)
    }

    pub fn injective(algebra: &Arc<Algebra>, side: Side, i: usize) -> Result<Module> {
        Ok(Module::projective(algebra, side.flip(), i)?.d_dual())
    }

    /// The regular module with the inclusions of its Peirce summands.
    pub fn regular(algebra: &Arc<Algebra>, side: Side) -> (Module, Vec<ModuleMap>) {
        let parts: Vec<Module> = (0..algebra.vertex_count()).map(|i| peirce_projective(algebra, side, i).0).collect();
        let (sum, inj, _) = direct_sum(algebra, side, &parts);
        (sum, inj)
    }
}

/// `e_i R` for the ring of `side` modules, with its basis as ring elements.
pub(crate) fn peirce_projective(algebra: &Arc<Algebra>, side: Side, i: usize) -> (Module, Matrix) {
    let ring = ring_for(algebra, side);
    let st = ring.structure();
    let f = ring.field();
    let mut iota = Matrix::zeros(f, 0, ring.dim());
    let mut dims = Vec::new();
    for j in 0..ring.vertex_count() {
        dims.push(st.blocks[i][j].rows());
        iota = iota.vstack(&st.blocks[i][j]);
    }
    let r = Restrictor::new(iota.clone());
    let actions = (0..ring.dim()).map(|b| r.restrict(ring.right_mult(b))).collect();
    (Module::from_parts_over(algebra, side, dims, actions), iota)
}

/// Direct sum with its injections and projections.
pub fn direct_sum(algebra: &Arc<Algebra>, side: Side, parts: &[Module]) -> (Module, Vec<ModuleMap>, Vec<ModuleMap>) {
    let f = algebra.field();
    let nv = algebra.vertex_count();
    let mut dims = vec![0; nv];
    for p in parts {
        for v in 0..nv {
            dims[v] += p.dims()[v];
        }
    }
    let off = offsets_of(&dims);
    let total = off[nv];
    let mut fill = off.clone();
    let mut embeds = Vec::with_capacity(parts.len());
    for p in parts {
        let mut e = Matrix::zeros(f, p.dim(), total);
        for v in 0..nv {
            for k in 0..p.dims()[v] {
                e.set(p.offset(v) + k, fill[v] + k, f.one());
            }
            fill[v] += p.dims()[v];
        }
        embeds.push(e);
    }
    let actions = (0..algebra.dim())
        .map(|b| {
            let mut m = Matrix::zeros(f, total, total);
            for (p, e) in parts.iter().zip(&embeds) {
                m = m.add(&e.transpose().mul(p.action(b)).mul(e));
            }
            m
        })
        .collect();
    let sum = Module::from_parts_over(algebra, side, dims, actions);
    let inj = parts
        .iter()
        .zip(&embeds)
        .map(|(p, e)| ModuleMap::new_unchecked(p.clone(), sum.clone(), e.clone()))
        .collect();
    let proj = parts
        .iter()
        .zip(&embeds)
        .map(|(p, e)| ModuleMap::new_unchecked(sum.clone(), p.clone(), e.transpose()))
        .collect();
    (sum, inj, proj)
}

/// A direct sum of indecomposable projectives with the ring element behind
/// each basis vector.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub module: Module,
    /// Vertex of each summand.
    pub vertices: Vec<usize>,
    /// Summand owning each basis vector.
    pub summand_of: Vec<usize>,
    /// Row `k`: the element of `e_v R` represented by basis vector `k`.
    pub elements: Matrix,
    /// Basis index of the generator `e_v` of each summand.
    pub generators: Vec<usize>,
    injections: Vec<Matrix>,
    restrictors: Vec<Arc<Restrictor>>,
}

impl ProjSum {
    pub fn new(algebra: &Arc<Algebra>, side: Side, vertices: Vec<usize>) -> Result<ProjSum> {
        let ring = ring_for(algebra, side);
        ring.basic()?;
        let f = algebra.field();
        let nv = algebra.vertex_count();
        let mut cache: Vec<Option<(Module, Matrix, Arc<Restrictor>)>> = vec![None; nv];
        let mut parts = Vec::new();
        let mut restrictors = Vec::new();
        for &v in &vertices {
            if cache[v].is_none() {
                let (m, iota) = peirce_projective(algebra, side, v);
                let r = Arc::new(Restrictor::new(iota.clone()));
                cache[v] = Some((m, iota, r));
            }
            let (m, _, r) = cache[v].as_ref().unwrap();
            parts.push(m.clone());
            restrictors.push(r.clone());
        }
        let (module, inj, _) = direct_sum(algebra, side, &parts);
        let n = module.dim();
        let mut elements = Matrix::zeros(f, n, ring.dim());
        let mut summand_of = vec![0; n];
        let mut generators = Vec::new();
        let mut injections = Vec::new();
        for (s, &v) in vertices.iter().enumerate() {
            let (p, iota, _) = cache[v].as_ref().unwrap();
            let e = inj[s].matrix();
            elements = elements.add(&e.transpose().mul(iota));
            for k in 0..p.dim() {
                let pos = (0..n).find(|&c| !e.get(k, c).is_zero()).expect("injection row");
                summand_of[pos] = s;
                if k == p.offset(v) {
                    generators.push(pos);
                }
            }
            injections.push(e.clone());
        }
        Ok(ProjSum { module, vertices, summand_of, elements, generators, injections, restrictors })
    }

    /// The map sending the generator of summand `s` to `images[s]`, a row
    /// vector of `target` lying in its vertex `vertices[s]` part.
    pub fn map_from_generators(&self, target: &Module, images: &[Matrix]) -> Result<ModuleMap> {
        let f = target.field();
        let mut mat = Matrix::zeros(f, self.module.dim(), target.dim());
        for k in 0..self.module.dim() {
            let s = self.summand_of[k];
            let img = images[s].mul(&target.action_of(&self.elements.select_rows(&[k])));
            mat.set_block(k, 0, &img);
        }
        ModuleMap::new(self.module.clone(), target.clone(), mat)
    }

    /// The vector of the element `y` of `e_v R` placed in summand `s`.
    pub fn embed(&self, s: usize, y: &Matrix) -> Matrix {
        self.restrictors[s].coords(y).mul(&self.injections[s])
    }

    /// Component of a vector of the sum in summand `s`, as a ring element.
    pub fn component(&self, s: usize, x: &Matrix) -> Matrix {
        x.mul(&self.injections[s].transpose()).mul(&self.restrictors[s].iota)
    }
}

/// A projective cover with its minimality certificate checked.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub proj: ProjSum,
    pub map: ModuleMap,
}

pub fn projective_cover(m: &Module) -> Result<ProjectiveCover> {
    let (_, rad_incl) = m.radical()?;
    let f = m.field();
    let nv = m.dims().len();
    let mut vertices = Vec::new();
    let mut lifts = Vec::new();
    for v in 0..nv {
        // rows of the inclusion's vertex block span rad(M) e_v
        let rr = rad_incl.block(v).rref();
        for c in 0..m.dims()[v] {
            if !rr.pivot_cols.contains(&c) {
                let mut x = Matrix::zeros(f, 1, m.dim());
                x.set(0, m.offset(v) + c, f.one());
                vertices.push(v);
                lifts.push(x);
            }
        }
    }
    let proj = ProjSum::new(m.algebra(), m.side(), vertices)?;
    let mut mat = Matrix::zeros(f, proj.module.dim(), m.dim());
    for k in 0..proj.module.dim() {
        let s = proj.summand_of[k];
        let img = lifts[s].mul(&m.action_of(&proj.elements.select_rows(&[k])));
        mat.set_block(k, 0, &img);
    }
    let map = ModuleMap::new_unchecked(proj.module.clone(), m.clone(), mat);
    if !map.is_surjective() {
        return Err(Error::Internal("projective cover is not surjective".into()));
    }
    let (_, kin) = map.kernel();
    let (_, prad) = proj.module.radical()?;
    if prad.matrix().vstack(kin.matrix()).rank() != prad.matrix().rank() {
        return Err(Error::Internal("projective cover kernel leaves the radical".into()));
    }
    Ok(ProjectiveCover { proj, map })
}

/// The injective envelope `m -> I`, dual to the projective cover of `D(m)`.
pub fn injective_envelope(m: &Module) -> Result<(ModuleMap, Vec<usize>)> {
    let cover = projective_cover(&m.d_dual())?;
    let env = cover.map.d_dual();
    let map = ModuleMap::new_unchecked(m.clone(), env.target().clone(), env.matrix().clone());
    let (_, soc) = map.target().socle()?;
    let img = map.matrix().row_space();
    if img.vstack(soc.matrix()).rank() != img.rows() {
        return Err(Error::Internal("injective envelope image misses the socle".into()));
    }
    Ok((map, cover.proj.vertices))
}
