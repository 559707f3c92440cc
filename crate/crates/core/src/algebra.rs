//! Finite-dimensional algebras given by structure constants or by a quiver
//! with monomial relations.
//!
//! Paths are written in traversal order: the basis label `a.b` is the path
//! that runs along `a` and then along `b`. The product `p * q` of two paths is
//! the composite "first `q`, then `p`", so an arrow `a: i -> j` satisfies
//! `a = e_j * a * e_i`. With this convention a left module is a
//! representation of the quiver.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {:?}", a.name)));
            }
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidQuiver(format!("arrow {:?} has a vertex out of range", a.name)));
            }
            if a.name.is_empty() || a.name.contains('.') {
                return Err(Error::InvalidQuiver(format!("bad arrow name {:?}", a.name)));
            }
        }
        Ok(Quiver { vertex_count, arrows })
    }

    /// Convenience constructor from `(name, source, target)` triples (0-based vertices).
    pub fn from_triples(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Quiver> {
        Quiver::new(
            vertex_count,
            arrows
                .iter()
                .map(|(n, s, t)| Arrow { name: n.to_string(), source: *s, target: *t })
                .collect(),
        )
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// A quiver together with monomial relations, each a list of arrow indices in
/// traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Vec<usize>>,
    /// Basis index of each arrow.
    pub arrow_basis: Vec<usize>,
}

/// Finite-dimensional associative unital algebra with a complete set of
/// orthogonal idempotents.
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    /// `right_mult[j]` has row `i` equal to the coordinates of `b_i * b_j`.
    right_mult: Vec<Matrix>,
    unit: Matrix,
    idempotents: Vec<Matrix>,
    presentation: Option<Presentation>,
    fingerprint: u64,
    structure: OnceLock<Arc<Structure>>,
    opposite_strong: OnceLock<Arc<Algebra>>,
    opposite_weak: OnceLock<Weak<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.field == other.field
            && self.labels == other.labels
            && self.right_mult == other.right_mult
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }
}

impl Eq for Algebra {}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra[{}; dim {}; basis {:?}]", self.field, self.dim(), self.labels)
    }
}

/// An algebra element of a Peirce block `e_source * A * e_target`. Acting on a
/// right module it maps the `source` vertex space to the `target` one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub elem: Matrix,
    pub source: usize,
    pub target: usize,
}

/// A product of arrows starting at a vertex idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub start: usize,
    pub arrows: Vec<usize>,
}

/// Data available only for basic algebras.
#[derive(Clone, Debug)]
pub struct BasicData {
    /// `radical[i][j]`: basis rows of `e_i J e_j`.
    pub radical: Vec<Vec<Matrix>>,
    /// Lifts of a basis of `J / J^2`, block by block.
    pub arrows: Vec<Generator>,
    /// A basis of the algebra made of words in idempotents and arrows.
    pub words: Vec<Word>,
    /// Row `k` is the value of `words[k]`.
    pub word_values: Matrix,
    /// Row `b` gives the coordinates of basis element `b` over `words`.
    pub coords: Matrix,
    /// Loewy length of the algebra: least `k` with `J^k = 0`.
    pub loewy_length: usize,
}

#[derive(Clone, Debug)]
pub struct Structure {
    /// `blocks[i][j]`: basis rows of `e_i A e_j`. For basic algebras the
    /// diagonal block lists `e_i` first, followed by a basis of its radical.
    pub blocks: Vec<Vec<Matrix>>,
    /// Elements whose actions, together with the idempotents, determine a module.
    pub generators: Vec<Generator>,
    pub basic: std::result::Result<BasicData, Error>,
}

impl Algebra {
    /// Builds an algebra from structure constants: `table[i][j]` holds the
    /// coordinates of `b_i * b_j`.
    pub fn from_table(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Vec<Scalar>>,
    ) -> Result<Arc<Algebra>> {
        let d = labels.len();
        if table.len() != d || table.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(Error::DimensionMismatch(format!("multiplication table must be {d} x {d} x {d}")));
        }
        if unit.len() != d || idempotents.iter().any(|e| e.len() != d) {
            return Err(Error::DimensionMismatch("unit and idempotents need one coordinate per basis element".into()));
        }
        let mut right_mult = Vec::with_capacity(d);
        for j in 0..d {
            let rows: Vec<Vec<Scalar>> = (0..d).map(|i| table[i][j].clone()).collect();
            right_mult.push(Matrix::from_rows_with_cols(field, &rows, d)?);
        }
        let unit = Matrix::from_rows_with_cols(field, &[unit], d)?;
        let idempotents = idempotents
            .into_iter()
            .map(|e| Matrix::from_rows_with_cols(field, &[e], d))
            .collect::<Result<Vec<_>>>()?;
        let alg = Algebra::assemble(field, labels, right_mult, unit, idempotents, None);
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    /// The path algebra of `quiver` modulo the ideal generated by the given
    /// monomial relations (arrow names in traversal order).
    pub fn bound_quiver(field: Field, quiver: Quiver, relations: &[Vec<String>]) -> Result<Arc<Algebra>> {
        let mut rels = Vec::new();
        for r in relations {
            if r.len() < 2 {
                return Err(Error::InvalidRelation(format!("relations must have length >= 2, got {r:?}")));
            }
            let mut idx = Vec::new();
            for name in r {
                let k = quiver
                    .arrow_index(name)
                    .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow {name:?}")))?;
                idx.push(k);
            }
            for w in idx.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(Error::InvalidRelation(format!("relation {r:?} is not a composable path")));
                }
            }
            rels.push(idx);
        }
        let paths = enumerate_paths(&quiver, &rels)?;
        let d = paths.len();
        let index: HashMap<&PathKey, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let labels: Vec<String> = paths
            .iter()
            .map(|p| {
                if p.arrows.is_empty() {
                    format!("e{}", p.start + 1)
                } else {
                    p.arrows.iter().map(|&a| quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
                }
            })
            .collect();
        let one = field.one();
        let mut right_mult = vec![Matrix::zeros(field, d, d); d];
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                // p * q: first q, then p
                if let Some(prod) = concat(&quiver, q, p) {
                    if contains_relation(&prod.arrows, &rels) {
                        continue;
                    }
                    let k = index[&prod];
                    right_mult[j].set(i, k, one.clone());
                }
            }
        }
        let mut unit = Matrix::zeros(field, 1, d);
        let mut idempotents = Vec::new();
        for v in 0..quiver.vertex_count {
            let k = index[&PathKey { start: v, end: v, arrows: vec![] }];
            unit.set(0, k, one.clone());
            let mut e = Matrix::zeros(field, 1, d);
            e.set(0, k, one.clone());
            idempotents.push(e);
        }
        let arrow_basis = (0..quiver.arrows.len())
            .map(|a| {
                let arr = &quiver.arrows[a];
                index[&PathKey { start: arr.source, end: arr.target, arrows: vec![a] }]
            })
            .collect();
        let pres = Presentation { quiver, relations: rels, arrow_basis };
        let alg = Algebra::assemble(field, labels, right_mult, unit, idempotents, Some(pres));
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn assemble(
        field: Field,
        labels: Vec<String>,
        right_mult: Vec<Matrix>,
        unit: Matrix,
        idempotents: Vec<Matrix>,
        presentation: Option<Presentation>,
    ) -> Algebra {
        let mut h = DefaultHasher::new();
        field.hash(&mut h);
        labels.hash(&mut h);
        right_mult.hash(&mut h);
        unit.hash(&mut h);
        idempotents.hash(&mut h);
        Algebra {
            field,
            labels,
            right_mult,
            unit,
            idempotents,
            presentation,
            fingerprint: h.finish(),
            structure: OnceLock::new(),
            opposite_strong: OnceLock::new(),
            opposite_weak: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let f = self.field;
        for j in 0..d {
            for k in 0..d {
                // (b_i b_j) b_k versus b_i (b_j b_k), for all i at once
                let lhs = self.right_mult[j].mul(&self.right_mult[k]);
                let jk = self.right_mult[k].select_rows(&[j]);
                let rhs = self.action(&jk);
                if lhs != rhs {
                    let i = (0..d).find(|&i| lhs.row(i) != rhs.row(i)).unwrap_or(0);
                    return Err(Error::NonAssociative(i, j, k));
                }
            }
        }
        let id = Matrix::identity(f, d);
        if self.action(&self.unit) != id {
            return Err(Error::BadUnit("u is not a right identity".into()));
        }
        for j in 0..d {
            if self.mul(&self.unit, &self.basis_vector(j)) != self.basis_vector(j) {
                return Err(Error::BadUnit(format!("u * {} != {}", self.labels[j], self.labels[j])));
            }
        }
        if self.idempotents.is_empty() {
            return Err(Error::BadIdempotents("no idempotents given".into()));
        }
        let mut sum = Matrix::zeros(f, 1, d);
        for (i, e) in self.idempotents.iter().enumerate() {
            if e.is_zero() {
                return Err(Error::BadIdempotents(format!("idempotent {} is zero", i + 1)));
            }
            for (j, g) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, g);
                let expect = if i == j { e.clone() } else { Matrix::zeros(f, 1, d) };
                if p != expect {
                    return Err(Error::BadIdempotents(if i == j {
                        format!("idempotent {} does not square to itself", i + 1)
                    } else {
                        format!("idempotents {} and {} are not orthogonal", i + 1, j + 1)
                    }));
                }
            }
            sum = sum.add(e);
        }
        if sum != self.unit {
            return Err(Error::BadIdempotents("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// The opposite algebra: same basis, `b_i *op b_j = b_j * b_i`. The result
    /// is cached, and its own opposite is `self`.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(a) = self.opposite_weak.get().and_then(Weak::upgrade) {
            return a;
        }
        self.opposite_strong
            .get_or_init(|| {
                let op = Arc::new(self.build_opposite());
                let _ = op.opposite_weak.set(Arc::downgrade(self));
                op
            })
            .clone()
    }

    fn build_opposite(&self) -> Algebra {
        let d = self.dim();
        let right_mult: Vec<Matrix> = (0..d)
            .map(|j| {
                let mut m = Matrix::zeros(self.field, d, d);
                for i in 0..d {
                    // row i of op_j = coords of b_j * b_i = row j of right_mult[i]
                    m.set_block(i, 0, &self.right_mult[i].select_rows(&[j]));
                }
                m
            })
            .collect();
        let presentation = self.presentation.as_ref().map(|p| Presentation {
            quiver: p.quiver.reversed(),
            relations: p.relations.iter().map(|r| r.iter().rev().copied().collect()).collect(),
            arrow_basis: p.arrow_basis.clone(),
        });
        Algebra::assemble(
            self.field,
            self.labels.clone(),
            right_mult,
            self.unit.clone(),
            self.idempotents.clone(),
            presentation,
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn idempotent(&self, i: usize) -> &Matrix {
        &self.idempotents[i]
    }

    pub fn idempotents(&self) -> &[Matrix] {
        &self.idempotents
    }

    /// Structure constants as `table[i][j] = b_i * b_j`.
    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.right_mult[j].row(i)).collect()).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Matrix {
        let mut v = Matrix::zeros(self.field, 1, self.dim());
        v.set(0, i, self.field.one());
        v
    }

    /// Matrix of right multiplication by `v` (a `1 x dim` row).
    pub fn action(&self, v: &Matrix) -> Matrix {
        let d = self.dim();
        let terms: Vec<(Scalar, &Matrix)> = (0..d).map(|l| (v.get(0, l), &self.right_mult[l])).collect();
        Matrix::combination(self.field, (d, d), &terms)
    }

    pub fn right_mult(&self, j: usize) -> &Matrix {
        &self.right_mult[j]
    }

    /// Product `u * v` of two elements given as `1 x dim` rows.
    pub fn mul(&self, u: &Matrix, v: &Matrix) -> Matrix {
        u.mul(&self.action(v))
    }

    /// Product of every row of `u` with `v`.
    pub fn mul_rows(&self, u: &Matrix, v: &Matrix) -> Matrix {
        u.mul(&self.action(v))
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    pub fn structure(&self) -> Arc<Structure> {
        self.structure.get_or_init(|| Arc::new(compute_structure(self))).clone()
    }

    pub fn basic(&self) -> Result<BasicData> {
        self.structure().basic.clone()
    }

    pub fn is_basic(&self) -> bool {
        self.structure().basic.is_ok()
    }

    /// `dim e_i A e_j`.
    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.structure().blocks[i][j].rows()
    }

    /// True when the algebra is semisimple (zero radical); requires basic.
    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.basic()?.loewy_length <= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PathKey {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

fn concat(q: &Quiver, first: &PathKey, then: &PathKey) -> Option<PathKey> {
    if first.end != then.start {
        return None;
    }
    let _ = q;
    let mut arrows = first.arrows.clone();
    arrows.extend_from_slice(&then.arrows);
    Some(PathKey { start: first.start, end: then.end, arrows })
}

fn contains_relation(path: &[usize], rels: &[Vec<usize>]) -> bool {
    rels.iter().any(|r| r.len() <= path.len() && path.windows(r.len()).any(|w| w == r.as_slice()))
}

fn enumerate_paths(q: &Quiver, rels: &[Vec<usize>]) -> Result<Vec<PathKey>> {
    let max_rel = rels.iter().map(|r| r.len()).max().unwrap_or(1);
    // Avoidance only depends on the last max_rel - 1 arrows, so a surviving
    // path longer than the number of such windows can be pumped forever.
    let windows = (q.arrows.len().max(1) as u128).saturating_pow(max_rel.saturating_sub(1) as u32);
    let bound = windows.saturating_add(max_rel as u128).min(4096) as usize;
    let mut all: Vec<PathKey> = (0..q.vertex_count)
        .map(|v| PathKey { start: v, end: v, arrows: vec![] })
        .collect();
    let mut frontier: Vec<PathKey> = all.clone();
    let mut len = 0;
    while !frontier.is_empty() {
        len += 1;
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source != p.end {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(ai);
                let tail_ok = rels.iter().all(|r| r.len() > arrows.len() || arrows[arrows.len() - r.len()..] != r[..]);
                if tail_ok {
                    next.push(PathKey { start: p.start, end: a.target, arrows });
                }
            }
        }
        if !next.is_empty() && (len > bound || all.len() + next.len() > 20_000) {
            return Err(Error::InfiniteDimensional(format!(
                "surviving paths of length {len} exist; an unavoidable cycle remains"
            )));
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

fn compute_structure(a: &Algebra) -> Structure {
    let n = a.vertex_count();
    let d = a.dim();
    let f = a.field();
    let mut blocks = vec![vec![Matrix::zeros(f, 0, d); n]; n];
    let id = Matrix::identity(f, d);
    for i in 0..n {
        let left = a.idempotent(i).clone();
        // rows: e_i * b_k for all k
        let ei_b = Matrix::zeros(f, d, d);
        let mut ei_b = ei_b;
        for k in 0..d {
            ei_b.set_block(k, 0, &a.mul(&left, &id.select_rows(&[k])));
        }
        for j in 0..n {
            let prod = a.mul_rows(&ei_b, a.idempotent(j));
            blocks[i][j] = prod.row_space();
        }
    }
    let basic = basic_data(a, &mut blocks);
    let generators = match &basic {
        Ok(b) => b.arrows.clone(),
        Err(_) => {
            let mut g = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for r in 0..blocks[i][j].rows() {
                        g.push(Generator { elem: blocks[i][j].select_rows(&[r]), source: i, target: j });
                    }
                }
            }
            g
        }
    };
    Structure { blocks, generators, basic }
}

/// Eigenvalue of an element `x` of the local algebra `e A e` with unit `e`,
/// read off its minimal polynomial `(t - c)^m`.
fn local_eigenvalue(a: &Algebra, e: &Matrix, x: &Matrix) -> Option<Scalar> {
    let f = a.field();
    let mut powers = e.clone();
    let mut last = e.clone();
    loop {
        let next = a.mul(&last, x);
        let m = powers.rows();
        if let Ok(Some(coeffs)) = powers.solve_left(&next) {
            // x^m = sum a_k x^k; (t - c)^m = (t^q - c)^r with q = p^s
            let p = f.characteristic();
            let mut q = 1usize;
            if p > 0 {
                while m % (q * p as usize) == 0 {
                    q *= p as usize;
                }
            }
            let r = m / q;
            let ak = coeffs.get(0, m - q);
            let rinv = f.inv(&f.from_i64(r as i64))?;
            return Some(f.mul(&ak, &rinv));
        }
        if m > a.dim() {
            return None;
        }
        powers = powers.vstack(&next);
        last = next;
    }
}

fn basic_data(a: &Algebra, blocks: &mut [Vec<Matrix>]) -> Result<BasicData> {
    let n = a.vertex_count();
    let d = a.dim();
    let f = a.field();
    let mut radical = vec![vec![Matrix::zeros(f, 0, d); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                radical[i][j] = blocks[i][j].clone();
            }
        }
        let e = a.idempotent(i).clone();
        let block = blocks[i][i].clone();
        let mut rad_rows = Matrix::zeros(f, 0, d);
        for r in 0..block.rows() {
            let x = block.select_rows(&[r]);
            let c = local_eigenvalue(a, &e, &x).ok_or_else(|| {
                Error::NotBasic(format!("no eigenvalue for an element of e{} A e{}", i + 1, i + 1))
            })?;
            rad_rows = rad_rows.vstack(&x.sub(&e.scale(&c)));
        }
        let rad = rad_rows.row_space();
        if rad.rows() + 1 != block.rows() {
            return Err(Error::NotBasic(format!(
                "e{} A e{} modulo its radical is not 1-dimensional",
                i + 1,
                i + 1
            )));
        }
        radical[i][i] = rad.clone();
        blocks[i][i] = e.vstack(&rad);
    }
    let mut j_rows = Matrix::zeros(f, 0, d);
    for row in &radical {
        for m in row {
            j_rows = j_rows.vstack(m);
        }
    }
    let jdim = j_rows.rows();
    // two-sided ideal check
    let mut prods = Matrix::zeros(f, 0, d);
    for k in 0..d {
        let b = a.basis_vector(k);
        prods = prods.vstack(&a.mul_rows(&j_rows, &b));
        for r in 0..jdim {
            prods = prods.vstack(&a.mul(&b, &j_rows.select_rows(&[r])));
        }
    }
    if j_rows.vstack(&prods).rank() != jdim {
        return Err(Error::NotBasic("candidate radical is not an ideal".into()));
    }
    // nilpotency and J^2
    let mut power = j_rows.clone();
    let mut j2 = None;
    let mut loewy = 1;
    while power.rows() > 0 {
        if loewy > d + 1 {
            return Err(Error::NotBasic("candidate radical is not nilpotent".into()));
        }
        let mut next = Matrix::zeros(f, 0, d);
        for r in 0..jdim {
            next = next.vstack(&a.mul_rows(&power, &j_rows.select_rows(&[r])));
        }
        let next = next.row_space();
        if next.rows() == power.rows() && next.rows() > 0 {
            return Err(Error::NotBasic("candidate radical is not nilpotent".into()));
        }
        if j2.is_none() {
            j2 = Some(next.clone());
        }
        power = next;
        loewy += 1;
    }
    let loewy_length = if jdim == 0 { 1 } else { loewy };
    let j2 = j2.unwrap_or_else(|| Matrix::zeros(f, 0, d));
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // e_i J^2 e_j
            let ei = a.idempotent(i);
            let mut part = Matrix::zeros(f, 0, d);
            for r in 0..j2.rows() {
                part = part.vstack(&a.mul(&a.mul(ei, &j2.select_rows(&[r])), a.idempotent(j)));
            }
            let mut span = part.row_space();
            let mut rank = span.rows();
            for r in 0..radical[i][j].rows() {
                let x = radical[i][j].select_rows(&[r]);
                let cand = span.vstack(&x);
                let cr = cand.rank();
                if cr > rank {
                    span = cand;
                    rank = cr;
                    arrows.push(Generator { elem: x, source: i, target: j });
                }
            }
        }
    }
    // word basis, breadth first, keeping only words independent of earlier ones
    let mut words: Vec<Word> = Vec::new();
    let mut values = Matrix::zeros(f, 0, d);
    let mut frontier: Vec<(Word, Matrix, usize)> = Vec::new();
    for i in 0..n {
        let w = Word { start: i, arrows: vec![] };
        values = values.vstack(a.idempotent(i));
        words.push(w.clone());
        frontier.push((w, a.idempotent(i).clone(), i));
    }
    let mut rank = values.rank();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, val, end) in &frontier {
            for (k, g) in arrows.iter().enumerate() {
                if g.source != *end {
                    continue;
                }
                let v = a.mul(val, &g.elem);
                if v.is_zero() {
                    continue;
                }
                let cand = values.vstack(&v);
                let cr = cand.rank();
                if cr > rank {
                    rank = cr;
                    values = cand;
                    let mut arr = w.arrows.clone();
                    arr.push(k);
                    let nw = Word { start: w.start, arrows: arr };
                    words.push(nw.clone());
                    next.push((nw, v, g.target));
                }
            }
        }
        frontier = next;
    }
    if rank != d {
        return Err(Error::NotBasic("idempotents and arrows do not generate the algebra".into()));
    }
    let coords = values
        .solve_left(&Matrix::identity(f, d))?
        .ok_or_else(|| Error::Internal("word basis is not invertible".into()))?;
    Ok(BasicData { radical, arrows, words, word_values: values, coords, loewy_length })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    pub(crate) fn a2(f: Field) -> Arc<Algebra> {
        let q = Quiver::from_triples(2, &[("a", 0, 1)]).unwrap();
        Algebra::bound_quiver(f, q, &[]).unwrap()
    }

    fn dual_numbers_table(f: Field) -> Result<Arc<Algebra>> {
        let z = f.zero();
        let o = f.one();
        Algebra::from_table(
            f,
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
                vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
            ],
            vec![o.clone(), z.clone()],
            vec![vec![o, z]],
        )
    }

    #[test]
    fn field_as_algebra() {
        let f = Field::rational();
        let k = Algebra::from_table(f, vec!["1".into()], vec![vec![vec![f.one()]]], vec![f.one()], vec![vec![f.one()]])
            .unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.is_basic());
        assert!(k.is_semisimple().unwrap());
    }

    #[test]
    fn dual_numbers_from_table() {
        let a = dual_numbers_table(f2()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.vertex_count(), 1);
        let b = a.basic().unwrap();
        assert_eq!(b.arrows.len(), 1);
        assert_eq!(b.loewy_length, 2);
    }

    #[test]
    fn bad_idempotent_rejected() {
        let f = f2();
        let z = f.zero();
        let o = f.one();
        // x * x = 1, claimed idempotent x
        let r = Algebra::from_table(
            f,
            vec!["1".into(), "x".into()],
            vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
                vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]],
            ],
            vec![o.clone(), z.clone()],
            vec![vec![z, o]],
        );
        assert!(matches!(r, Err(Error::BadIdempotents(_))));
    }

    #[test]
    fn non_associative_rejected() {
        let f = Field::rational();
        let z = f.zero();
        let o = f.one();
        // x*x = y, y*x = 0 but x*y = x: (x x) x = 0, x (x x) = x
        let t = vec![
            vec![vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()], vec![z.clone(), o.clone(), z.clone()]],
            vec![vec![z.clone(), z.clone(), o.clone()], vec![z.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), z.clone()]],
        ];
        let r = Algebra::from_table(f, vec!["1".into(), "x".into(), "y".into()], t, vec![o.clone(), z.clone(), z.clone()], vec![vec![o, z.clone(), z]]);
        assert!(matches!(r, Err(Error::NonAssociative(..))));
    }

    #[test]
    fn a2_path_basis() {
        let a = a2(f2());
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
        // dim e_j A e_i = number of paths i -> j
        assert_eq!(a.block_dim(1, 0), 1);
        assert_eq!(a.block_dim(0, 1), 0);
        assert_eq!(a.block_dim(0, 0), 1);
    }

    #[test]
    fn loop_with_square_relation() {
        let q = Quiver::from_triples(1, &[("x", 0, 0)]).unwrap();
        let a = Algebra::bound_quiver(f2(), q, &[vec!["x".into(), "x".into()]]).unwrap();
        assert_eq!(a.labels(), &["e1", "x"]);
        let t = dual_numbers_table(f2()).unwrap();
        assert_eq!(a.table(), t.table());
    }

    #[test]
    fn free_loop_is_infinite() {
        let q = Quiver::from_triples(1, &[("x", 0, 0)]).unwrap();
        assert!(matches!(Algebra::bound_quiver(f2(), q, &[]), Err(Error::InfiniteDimensional(_))));
    }

    #[test]
    fn short_relation_rejected() {
        let q = Quiver::from_triples(1, &[("x", 0, 0)]).unwrap();
        assert!(matches!(
            Algebra::bound_quiver(f2(), q, &[vec!["x".into()]]),
            Err(Error::InvalidRelation(_))
        ));
    }

    #[test]
    fn opposite_is_involution() {
        let a = a2(Field::rational());
        let op = a.opposite();
        assert_eq!(op.presentation().unwrap().quiver.arrows[0].source, 1);
        let back = op.opposite();
        assert!(Arc::ptr_eq(&back, &a));
        assert_eq!(*Arc::new(op.build_opposite()), *a);
        assert_eq!(back.presentation(), a.presentation());
        let t = dual_numbers_table(f2()).unwrap();
        assert_eq!(t.opposite().table(), t.table());
    }

    #[test]
    fn opposite_of_a2_is_reversed_a2() {
        let a = a2(f2());
        let rev = Algebra::bound_quiver(f2(), Quiver::from_triples(2, &[("a", 1, 0)]).unwrap(), &[]).unwrap();
        assert_eq!(a.opposite().table(), rev.table());
    }

    #[test]
    fn radical_square_zero_two_loops() {
        let q = Quiver::from_triples(1, &[("x", 0, 0), ("y", 0, 0)]).unwrap();
        let r: Vec<Vec<String>> = [["x", "x"], ["x", "y"], ["y", "x"], ["y", "y"]]
            .iter()
            .map(|p| p.iter().map(|s| s.to_string()).collect())
            .collect();
        let a = Algebra::bound_quiver(f2(), q, &r).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basic().unwrap().arrows.len(), 2);
    }

    #[test]
    fn matrix_algebra_is_not_basic() {
        // M_2(k) with the diagonal idempotents
        let f = Field::rational();
        let d = 4; // e11 e12 e21 e22
        let idx = |i: usize, j: usize| i * 2 + j;
        let mut table = vec![vec![vec![f.zero(); d]; d]; d];
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (k, l) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if j == k {
                    table[idx(i, j)][idx(k, l)][idx(i, l)] = f.one();
                }
            }
        }
        let mut unit = vec![f.zero(); d];
        unit[0] = f.one();
        unit[3] = f.one();
        let mut e1 = vec![f.zero(); d];
        e1[0] = f.one();
        let mut e2 = vec![f.zero(); d];
        e2[3] = f.one();
        let a = Algebra::from_table(f, (0..4).map(|i| format!("m{i}")).collect(), table, unit, vec![e1, e2]).unwrap();
        assert!(matches!(a.basic(), Err(Error::NotBasic(_))));
    }
}
