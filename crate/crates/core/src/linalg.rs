//! Exact dense linear algebra over prime fields and the rationals.
//!
//! Matrices act on row vectors from the right throughout the crate: a map
//! `V -> W` between spaces of dimension `m` and `n` is an `m x n` matrix and
//! sends `v` to `v * A`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base field. Prime fields are limited to `p <= 2^31` so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p > (1u64 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime <= 2^31")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn rational() -> Field {
        Field::Rational
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p as u64,
            Field::Rational => 0,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p as u64),
            Field::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u32),
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Parses `"3"`, `"-2"` or `"2/5"`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad field element {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u32::try_from(r).unwrap()
                };
                let d = reduce(&den);
                if d == 0 {
                    return Err(Error::Parse(format!("denominator of {s:?} vanishes mod {p}")));
                }
                let a = Fp(*p);
                Ok(Scalar::Fp(a.mul(&reduce(&num), &a.inv(&d))))
            }
            Field::Rational => Ok(Scalar::Q(BigRational::new(num, den))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(Fp(*p).add(x, y)),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(Fp(*p).mul(x, y)),
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(Fp(*p).neg(x)),
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(Fp(*p).inv(x)),
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(x.recip()),
            _ => panic!("scalar from a different field"),
        })
    }

    /// All elements of a prime field in increasing order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Scalar::Fp).collect()),
            Field::Rational => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fp(u32),
    Q(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 0,
            Scalar::Q(x) => x.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Q(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

pub(crate) trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn wrap(&self, v: Vec<Self::E>) -> Entries;
    fn scalar(&self, a: &Self::E) -> Scalar;
    fn unscalar(&self, s: &Scalar) -> Self::E;

    /// `acc += c * x` elementwise.
    fn axpy(&self, acc: &mut [Self::E], c: &Self::E, x: &[Self::E]) {
        for (a, b) in acc.iter_mut().zip(x) {
            if !self.is_zero(b) {
                *a = self.add(a, &self.mul(c, b));
            }
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Fp(pub u32);

impl Arith for Fp {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.0 as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.0 as u64 - *b as u64;
        (s % self.0 as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.0 as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        // Fermat; a != 0 is the caller's obligation
        let p = self.0 as u64;
        let mut base = *a as u64 % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
    fn wrap(&self, v: Vec<u32>) -> Entries {
        Entries::Fp { p: self.0, v }
    }
    fn scalar(&self, a: &u32) -> Scalar {
        Scalar::Fp(*a)
    }
    fn unscalar(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Fp(x) => *x,
            Scalar::Q(_) => panic!("rational scalar in a prime field"),
        }
    }
    fn axpy(&self, acc: &mut [u32], c: &u32, x: &[u32]) {
        let p = self.0 as u64;
        let c = *c as u64;
        for (a, b) in acc.iter_mut().zip(x) {
            if *b != 0 {
                *a = ((*a as u64 + c * *b as u64) % p) as u32;
            }
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Qf;

impl Arith for Qf {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn wrap(&self, v: Vec<BigRational>) -> Entries {
        Entries::Q(v)
    }
    fn scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Q(a.clone())
    }
    fn unscalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Q(x) => x.clone(),
            Scalar::Fp(_) => panic!("prime-field scalar in the rationals"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Fp { p: u32, v: Vec<u32> },
    Q(Vec<BigRational>),
}

macro_rules! with_arith {
    ($m:expr, |$a:ident, $v:ident| $body:expr) => {
        match &$m.data {
            Entries::Fp { p, v: $v } => {
                let $a = Fp(*p);
                $body
            }
            Entries::Q($v) => {
                let $a = Qf;
                $body
            }
        }
    };
}

macro_rules! with_arith2 {
    ($m:expr, $n:expr, |$a:ident, $v:ident, $w:ident| $body:expr) => {
        match (&$m.data, &$n.data) {
            (Entries::Fp { p, v: $v }, Entries::Fp { p: q, v: $w }) if p == q => {
                let $a = Fp(*p);
                $body
            }
            (Entries::Q($v), Entries::Q($w)) => {
                let $a = Qf;
                $body
            }
            _ => panic!("matrices over different fields"),
        }
    };
}

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Entries,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let data = match field {
            Field::Prime(p) => Entries::Fp { p, v: vec![0; rows * cols] },
            Field::Rational => Entries::Q(vec![BigRational::zero(); rows * cols]),
        };
        Matrix { rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_rows_with_cols(field, rows, c).map(|m| {
            debug_assert_eq!(m.rows, r);
            m
        })
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count so that
    /// `0 x n` matrices can be built.
    pub fn from_rows_with_cols(field: Field, rows: &[Vec<Scalar>], cols: usize) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, s) in row.iter().enumerate() {
                let ok = matches!(
                    (field, s),
                    (Field::Prime(p), Scalar::Fp(x)) if *x < p
                ) || matches!((field, s), (Field::Rational, Scalar::Q(_)));
                if !ok {
                    return Err(Error::InvalidField(format!("entry {s} not in {field}")));
                }
                m.set(i, j, s.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*x));
            }
        }
        m
    }

    pub fn row_vector(field: Field, entries: &[Scalar]) -> Matrix {
        Matrix::from_rows_with_cols(field, &[entries.to_vec()], entries.len())
            .expect("row vector entries from the field")
    }

    pub fn field(&self) -> Field {
        match &self.data {
            Entries::Fp { p, .. } => Field::Prime(*p),
            Entries::Q(_) => Field::Rational,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols);
        with_arith!(self, |a, v| a.scalar(&v[i * self.cols + j]))
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols);
        let k = i * self.cols + j;
        match (&mut self.data, s) {
            (Entries::Fp { p, v }, Scalar::Fp(x)) => v[k] = x % *p,
            (Entries::Q(v), Scalar::Q(x)) => v[k] = x,
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        with_arith!(self, |a, v| v.iter().all(|x| a.is_zero(x)))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field(), self.rows)
    }

    /// Number of nonzero entries.
    pub fn support(&self) -> usize {
        with_arith!(self, |a, v| v.iter().filter(|x| !a.is_zero(x)).count())
    }

    pub fn transpose(&self) -> Matrix {
        with_arith!(self, |a, v| {
            let mut out = Vec::with_capacity(v.len());
            for j in 0..self.cols {
                for i in 0..self.rows {
                    out.push(v[i * self.cols + j].clone());
                }
            }
            Matrix { rows: self.cols, cols: self.rows, data: a.wrap(out) }
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let (n, k, m) = (self.rows, self.cols, other.cols);
        with_arith2!(self, other, |a, x, y| {
            let mut out = vec![a.zero(); n * m];
            for i in 0..n {
                for l in 0..k {
                    let c = &x[i * k + l];
                    if a.is_zero(c) {
                        continue;
                    }
                    a.axpy(&mut out[i * m..(i + 1) * m], c, &y[l * m..(l + 1) * m]);
                }
            }
            Matrix { rows: n, cols: m, data: a.wrap(out) }
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        with_arith2!(self, other, |a, x, y| Matrix {
            rows: self.rows,
            cols: self.cols,
            data: a.wrap(x.iter().zip(y).map(|(s, t)| a.add(s, t)).collect()),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        with_arith2!(self, other, |a, x, y| Matrix {
            rows: self.rows,
            cols: self.cols,
            data: a.wrap(x.iter().zip(y).map(|(s, t)| a.sub(s, t)).collect()),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        with_arith!(self, |a, v| {
            let c = a.unscalar(c);
            Matrix {
                rows: self.rows,
                cols: self.cols,
                data: a.wrap(v.iter().map(|x| a.mul(&c, x)).collect()),
            }
        })
    }

    pub fn neg(&self) -> Matrix {
        with_arith!(self, |a, v| Matrix {
            rows: self.rows,
            cols: self.cols,
            data: a.wrap(v.iter().map(|x| a.neg(x)).collect()),
        })
    }

    /// Linear combination `sum c_i * m_i`; all matrices share `shape`.
    pub fn combination(field: Field, shape: (usize, usize), terms: &[(Scalar, &Matrix)]) -> Matrix {
        let mut acc = Matrix::zeros(field, shape.0, shape.1);
        for (c, m) in terms {
            if c.is_zero() {
                continue;
            }
            acc.add_scaled(c, m);
        }
        acc
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!(self.shape(), other.shape());
        match (&mut self.data, &other.data) {
            (Entries::Fp { p, v }, Entries::Fp { v: w, .. }) => {
                let a = Fp(*p);
                a.axpy(v, &a.unscalar(c), w)
            }
            (Entries::Q(v), Entries::Q(w)) => Qf.axpy(v, &Qf.unscalar(c), w),
            _ => panic!("matrices over different fields"),
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        with_arith2!(self, other, |a, x, y| {
            let mut out = Vec::with_capacity(x.len() + y.len());
            for i in 0..self.rows {
                out.extend_from_slice(&x[i * self.cols..(i + 1) * self.cols]);
                out.extend_from_slice(&y[i * other.cols..(i + 1) * other.cols]);
            }
            Matrix { rows: self.rows, cols: self.cols + other.cols, data: a.wrap(out) }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        with_arith2!(self, other, |a, x, y| {
            let mut out = x.clone();
            out.extend_from_slice(y);
            Matrix { rows: self.rows + other.rows, cols: self.cols, data: a.wrap(out) }
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let f = self.field();
        let top = self.hstack(&Matrix::zeros(f, self.rows, other.cols));
        let bottom = Matrix::zeros(f, other.rows, self.cols).hstack(other);
        top.vstack(&bottom)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        with_arith!(self, |a, v| {
            let mut out = Vec::with_capacity(rows.len() * cols.len());
            for i in rows.clone() {
                out.extend_from_slice(&v[i * self.cols + cols.start..i * self.cols + cols.end]);
            }
            Matrix { rows: rows.len(), cols: cols.len(), data: a.wrap(out) }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        with_arith!(self, |a, v| {
            let mut out = Vec::with_capacity(idx.len() * self.cols);
            for &i in idx {
                out.extend_from_slice(&v[i * self.cols..(i + 1) * self.cols]);
            }
            Matrix { rows: idx.len(), cols: self.cols, data: a.wrap(out) }
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        with_arith!(self, |a, v| {
            let mut out = Vec::with_capacity(idx.len() * self.rows);
            for i in 0..self.rows {
                for &j in idx {
                    out.push(v[i * self.cols + j].clone());
                }
            }
            Matrix { rows: self.rows, cols: idx.len(), data: a.wrap(out) }
        })
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols);
        match (&mut self.data, &block.data) {
            (Entries::Fp { v, .. }, Entries::Fp { v: w, .. }) => {
                for i in 0..block.rows {
                    let dst = (r + i) * self.cols + c;
                    v[dst..dst + block.cols].copy_from_slice(&w[i * block.cols..(i + 1) * block.cols]);
                }
            }
            (Entries::Q(v), Entries::Q(w)) => {
                for i in 0..block.rows {
                    let dst = (r + i) * self.cols + c;
                    v[dst..dst + block.cols].clone_from_slice(&w[i * block.cols..(i + 1) * block.cols]);
                }
            }
            _ => panic!("matrices over different fields"),
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        with_arith!(self, |a, v| {
            let mut w = v.clone();
            let pivots = rref_in_place(&a, &mut w, self.rows, self.cols);
            Rref {
                rank: pivots.len(),
                reduced: Matrix { rows: self.rows, cols: self.cols, data: a.wrap(w) },
                pivot_cols: pivots,
            }
        })
    }

    pub fn rank(&self) -> usize {
        with_arith!(self, |a, v| {
            let mut w = v.clone();
            rref_in_place(&a, &mut w, self.rows, self.cols).len()
        })
    }

    /// Rows form the canonical basis of the right null space `{x : self * x^T = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let r = self.rref();
        let field = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivot_cols.contains(c)).collect();
        let mut out = Matrix::zeros(field, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, field.one());
            for (pr, &pc) in r.pivot_cols.iter().enumerate() {
                let e = r.reduced.get(pr, fc);
                if !e.is_zero() {
                    out.set(k, pc, field.neg(&e));
                }
            }
        }
        out
    }

    /// Rows form the canonical basis of `{v : v * self = 0}`.
    pub fn left_kernel_basis(&self) -> Matrix {
        self.transpose().kernel_basis()
    }

    /// The nonzero rows of the reduced row echelon form: a canonical basis of
    /// the row space.
    pub fn row_space(&self) -> Matrix {
        let r = self.rref();
        r.reduced.submatrix(0..r.rank, 0..self.cols)
    }

    /// Some `x` with `self * x = b` (free variables zero), or `None`.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows against {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let r = aug.rref();
        if r.pivot_cols.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let field = self.field();
        let mut x = Matrix::zeros(field, self.cols, b.cols);
        for (pr, &pc) in r.pivot_cols.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.reduced.get(pr, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Some `x` with `x * self = b`, or `None`.
    pub fn solve_left(&self, b: &Matrix) -> Result<Option<Matrix>> {
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(self.field(), self.rows);
        match self.solve(&id) {
            Ok(Some(x)) if self.rank() == self.rows => Some(x),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Flattens to a `1 x (rows*cols)` row vector.
    pub fn flatten(&self) -> Matrix {
        Matrix { rows: 1, cols: self.rows * self.cols, data: self.data.clone() }
    }

    /// Inverse of [`Matrix::flatten`].
    pub fn reshape(&self, rows: usize, cols: usize) -> Matrix {
        assert_eq!(self.rows * self.cols, rows * cols);
        Matrix { rows, cols, data: self.data.clone() }
    }

    /// True when every rational entry is in lowest terms with positive denominator.
    pub fn is_canonical(&self) -> bool {
        match &self.data {
            Entries::Fp { p, v } => v.iter().all(|x| x < p),
            Entries::Q(v) => v.iter().all(|x| {
                use num_integer::Integer;
                x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
            }),
        }
    }

    /// Row space of `self` intersected with the row space of `other`.
    pub fn row_space_intersection(&self, other: &Matrix) -> Matrix {
        // v = x*A = y*B  <=>  [x, -y] * [A; B] = 0
        let stacked = self.vstack(other);
        let k = stacked.left_kernel_basis();
        let coeffs = k.submatrix(0..k.rows, 0..self.rows);
        coeffs.mul(self).row_space()
    }
}

pub(crate) fn rref_in_place<A: Arith>(a: &A, w: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a.is_zero(&w[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                w.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = a.inv(&w[r * cols + c]);
        for j in c..cols {
            let x = a.mul(&w[r * cols + j], &inv);
            w[r * cols + j] = x;
        }
        let pivot_row: Vec<A::E> = w[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = w[i * cols + c].clone();
            if a.is_zero(&f) {
                continue;
            }
            let nf = a.neg(&f);
            a.axpy(&mut w[i * cols..(i + 1) * cols], &nf, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{}x{} [", self.field(), self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rref_identity_f2() {
        let id = Matrix::identity(f2(), 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one_f2() {
        let m = Matrix::from_i64(f2(), &[&[1, 1], &[1, 1]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(f2(), &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn rref_rational_full_rank() {
        let q = Field::rational();
        let m = Matrix::from_i64(q, &[&[2, 4], &[1, 3]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::identity(q, 2));
        assert_eq!((r.rank, r.pivot_cols), (2, vec![0, 1]));
    }

    #[test]
    fn kernel_examples() {
        let z = Matrix::zeros(f2(), 2, 3);
        assert_eq!(z.kernel_basis(), Matrix::identity(f2(), 3));
        let inv = Matrix::from_i64(f2(), &[&[1, 1], &[0, 1]]);
        assert_eq!(inv.kernel_basis().rows(), 0);
        let m = Matrix::from_i64(f2(), &[&[1, 1]]);
        assert_eq!(m.kernel_basis(), Matrix::from_i64(f2(), &[&[1, 1]]));
    }

    #[test]
    fn solve_examples() {
        let q = Field::rational();
        let b = Matrix::from_i64(q, &[&[3, -1], &[2, 7]]);
        assert_eq!(Matrix::identity(q, 2).solve(&b).unwrap(), Some(b.clone()));
        let a = Matrix::from_i64(q, &[&[1], &[0]]);
        let b = Matrix::from_i64(q, &[&[0], &[1]]);
        assert_eq!(a.solve(&b).unwrap(), None);
        let a = Matrix::from_i64(f2(), &[&[1, 1], &[0, 1]]);
        let b = Matrix::from_i64(f2(), &[&[0], &[1]]);
        assert_eq!(a.solve(&b).unwrap(), Some(Matrix::from_i64(f2(), &[&[1], &[1]])));
        assert!(matches!(
            a.solve(&Matrix::zeros(f2(), 3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn parse_elements() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap(), Scalar::Fp(6));
        assert_eq!(f7.parse("1/2").unwrap(), Scalar::Fp(4));
        assert!(f7.parse("1/7").is_err());
        let q = Field::rational();
        assert_eq!(q.parse("4/6").unwrap().to_string(), "2/3");
        assert_eq!(q.parse("-3/-6").unwrap().to_string(), "1/2");
        assert!(Field::prime(4).is_err());
        assert!(Field::prime((1u64 << 31) + 11).is_err());
    }

    #[test]
    fn intersection_of_row_spaces() {
        let q = Field::rational();
        let a = Matrix::from_i64(q, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = Matrix::from_i64(q, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.row_space_intersection(&b), Matrix::from_i64(q, &[&[0, 1, 0]]));
    }
}
