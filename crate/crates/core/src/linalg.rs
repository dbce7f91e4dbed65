//! Dense exact linear algebra over the rationals and over prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A field given by a context object; elements are plain values.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn name(&self) -> String;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// Integers modulo a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Option<Self> {
        if p < 2 || p >= 1 << 31 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a % self.p != 0, "inverse of zero");
        // Fermat
        let mut base = *a % self.p;
        let mut e = self.p - 2;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let r = rows.len();
        Matrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(columns: &[Vec<E>], rows: usize) -> Self {
        let cols = columns.len();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in columns {
                data.push(c[r].clone());
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<G: Clone>(&self, f: impl Fn(&E) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Matrix<E> {
        self.map(|a| f.mul(a, s))
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Matrix<E>, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(f, &mut rows, self.cols);
        let mut padded = rows;
        padded.resize(self.rows, vec![f.zero(); self.cols]);
        (Matrix::from_rows(padded, self.cols), pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        let mut rows = self.to_rows();
        rref_rows(f, &mut rows, self.cols).len()
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn nullspace<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut rows = self.to_rows();
        let pivots = rref_rows(f, &mut rows, self.cols);
        nullspace_from_rref(f, &rows, &pivots, self.cols)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Matrix<E>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<E>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(
            rows.into_iter().map(|r| r[n..].to_vec()).collect(),
            n,
        ))
    }
}

/// In-place reduced row echelon form; zero rows are dropped. Returns pivot columns.
pub fn rref_rows<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r].iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn nullspace_from_rref<F: Field>(
    f: &F,
    rows: &[Vec<F::Elem>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (row, &p) in rows.iter().zip(pivots) {
                v[p] = f.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// A subspace of `F^dim` held as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, dim: usize) -> Self {
        Subspace {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut v = vec![field.zero(); dim];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field: field.clone(),
            dim,
            rows,
            pivots: (0..dim).collect(),
        }
    }

    pub fn span(field: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let mut rows: Vec<Vec<F::Elem>> = vectors.to_vec();
        let pivots = rref_rows(field, &mut rows, dim);
        Subspace {
            field: field.clone(),
            dim,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(p) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v);
        let f = self.field.clone();
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]);
        let r: Vec<F::Elem> = r.iter().map(|x| f.mul(x, &inv)).collect();
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r).skip(p) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut out = self.clone();
        for v in &other.rows {
            out.insert(v);
        }
        out
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        let f = &self.field;
        // v = Σ a_i u_i = Σ b_j w_j  ⇔  [U | -W] (a, b) = 0
        let k = self.dim();
        let mut columns: Vec<Vec<F::Elem>> = self.rows.clone();
        columns.extend(other.rows.iter().map(|w| w.iter().map(|x| f.neg(x)).collect()));
        if columns.is_empty() {
            return Subspace::zero(f, self.dim);
        }
        let m = Matrix::from_columns(&columns, self.dim);
        let vectors: Vec<Vec<F::Elem>> = m
            .nullspace(f)
            .into_iter()
            .map(|coef| combine(f, &self.rows, &coef[..k], self.dim))
            .collect();
        Subspace::span(f, self.dim, &vectors)
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Subspace<F>) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

/// `Σ coef_i · vectors_i`.
pub fn combine<F: Field>(f: &F, vectors: &[Vec<F::Elem>], coef: &[F::Elem], dim: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); dim];
    for (v, c) in vectors.iter().zip(coef) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !f.is_zero(x) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
    }
    out
}

/// Intersection of kernels of the given square matrices.
pub fn common_kernel<F: Field>(f: &F, dim: usize, maps: &[&Matrix<F::Elem>]) -> Subspace<F> {
    if maps.is_empty() {
        return Subspace::full(f, dim);
    }
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for m in maps {
        rows.extend(m.to_rows());
    }
    let pivots = rref_rows(f, &mut rows, dim);
    let ns = nullspace_from_rref(f, &rows, &pivots, dim);
    Subspace::span(f, dim, &ns)
}

/// Renders a rational as `a` or `a/b`.
pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_is_negative(x: &BigRational) -> bool {
    x.is_negative()
}
