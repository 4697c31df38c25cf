//! Dense exact linear algebra: matrices, row reduction, kernels, affine solves and
//! subspaces in canonical (reduced row echelon) form.
//!
//! Matrices act on column vectors. Column `j` of a matrix representing a linear map
//! is the image of the `j`-th basis vector. Pivots are always chosen as the first
//! nonzero entry in column order, so every result here is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

pub fn zero_vector<F: Field>(n: usize) -> Vec<F> {
    vec![F::zero(); n]
}

pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = zero_vector(n);
    v[i] = F::one();
    v
}

pub fn is_zero_vector<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vectors<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect()
}

pub fn sub_vectors<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub_ref(y)).collect()
}

pub fn scale_vector<F: Field>(c: &F, v: &[F]) -> Vec<F> {
    v.iter().map(|x| c.mul_ref(x)).collect()
}

/// `y += c * x`
pub fn axpy<F: Field>(y: &mut [F], c: &F, x: &[F]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.add_ref(&c.mul_ref(xi));
        }
    }
}

/// Dense matrix over an exact field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ";")?;
            }
            for c in 0..self.cols {
                write!(f, " {:?}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, " ]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::dims("ragged matrix rows", c, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Builds a `rows x n` matrix from `n` column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::dims("matrix column length", rows, col.len()));
            }
            for (r, x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x.clone();
            }
        }
        Ok(m)
    }

    /// Matrix of the linear map `f: F^n_in -> F^n_out`, built by evaluating it on the
    /// standard basis.
    pub fn from_linear_map(n_in: usize, n_out: usize, mut f: impl FnMut(&[F]) -> Vec<F>) -> Self {
        let mut m = Self::zeros(n_out, n_in);
        for j in 0..n_in {
            let image = f(&unit_vector(n_in, j));
            assert_eq!(image.len(), n_out, "linear map produced wrong output length");
            for (i, x) in image.into_iter().enumerate() {
                m.data[i * n_in + j] = x;
            }
        }
        m
    }

    /// Integer entries, convenient for fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer rows")
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

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries, the vectorisation used for spaces of linear maps.
    pub fn to_flat(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims("flat matrix data", rows * cols, data.len()));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out: Vec<F> = zero_vector(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o = o.add_ref(&a.mul_ref(x));
                }
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + c];
                    if !b.is_zero() {
                        let idx = r * rhs.cols + c;
                        out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &rhs.data),
        }
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &rhs.data),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    pub fn neg(&self) -> Matrix<F> {
        self.scale(&F::one().neg_ref())
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn pow(&self, n: u32) -> Matrix<F> {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut out = Matrix::identity(self.rows);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, rhs: &Matrix<F>) -> Matrix<F> {
        let mut out = Matrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, block: &Matrix<F>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(row0 + r, col0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Matrix<F> {
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(row0 + r, col0 + c).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let columns: Vec<Vec<F>> = cols.iter().map(|&c| self.column(c)).collect();
        Matrix::from_columns(self.rows, &columns).expect("consistent column lengths")
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv();
            for c in col..m.cols {
                let v = m.get(row, c).mul_ref(&inv);
                m.set(row, c, v);
            }
            let pivot_row = m.row(row).to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let start = r * m.cols;
                for c in col..m.cols {
                    if !pivot_row[c].is_zero() {
                        m.data[start + c] = m.data[start + c].sub_ref(&factor.mul_ref(&pivot_row[c]));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{v : Av = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = zero_vector(self.cols);
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(row, free).neg_ref();
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, &basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace<F> {
        Subspace::from_spanning(self.rows, &self.columns())
    }

    /// One solution of `Ax = b` with every free variable set to zero, or `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let rhs = Matrix::from_columns(self.rows, &[b.to_vec()]).expect("column length checked");
        let (r, pivots) = self.hstack(&rhs).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = det.neg_ref();
            }
            let pivot = m.get(col, col).clone();
            det = det.mul_ref(&pivot);
            for r in col + 1..n {
                let factor = m.get(r, col).div_ref(&pivot);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).sub_ref(&factor.mul_ref(m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// A linear subspace of `F^n`, stored as the rows of a reduced row echelon basis.
///
/// The representation is canonical: two subspaces are equal iff their bases are
/// entrywise equal, so the derived `PartialEq` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        let m = Matrix::from_rows(vectors.to_vec()).expect("equal-length rows");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn span_of_units(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<F>> = indices.iter().map(|&i| unit_vector(ambient, i)).collect();
        Self::from_spanning(ambient, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.ambient, &self.basis).expect("basis vectors have ambient length")
    }

    /// Non-pivot coordinate indices; the corresponding unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Subtracts the component along this subspace. The residual vanishes on pivot
    /// coordinates and is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if !c.is_zero() {
                axpy(&mut out, &c.neg_ref(), b);
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains(&self, other: &Subspace<F>) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn combine(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim(), "coordinate vector has wrong length");
        let mut out = zero_vector(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, b);
        }
        out
    }

    fn check_ambient(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dims("subspace ambient dimension", self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Self::from_spanning(self.ambient, &vs))
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // x = sum a_i u_i = sum b_j v_j  <=>  (a, b) in ker [U | -V]
        let u = self.basis_matrix();
        let v = other.basis_matrix().neg();
        let ker = u.hstack(&v).kernel();
        let k = self.dim();
        let vs: Vec<Vec<F>> = ker.basis.iter().map(|ab| self.combine(&ab[..k])).collect();
        Ok(Self::from_spanning(self.ambient, &vs))
    }

    /// Vectors of `other` (taken in canonical order) that complete this subspace to
    /// `self + other`; they represent a basis of `(self + other) / self`.
    pub fn quotient_basis(&self, other: &Subspace<F>) -> Result<Vec<Vec<F>>> {
        self.check_ambient(other)?;
        let mut acc = self.clone();
        let mut reps = Vec::new();
        for v in &other.basis {
            if !acc.contains_vector(v) {
                reps.push(v.clone());
                let mut vs = acc.basis.clone();
                vs.push(v.clone());
                acc = Self::from_spanning(self.ambient, &vs);
            }
        }
        Ok(reps)
    }

    /// `A(U)` for `A: F^ambient -> F^m`.
    pub fn image_under(&self, a: &Matrix<F>) -> Subspace<F> {
        assert_eq!(a.cols(), self.ambient, "image_under dimension mismatch");
        let vs: Vec<Vec<F>> = self.basis.iter().map(|b| a.apply(b)).collect();
        Subspace::from_spanning(a.rows(), &vs)
    }

    /// `{x : Ax in U}` for `A: F^n -> F^ambient`.
    pub fn preimage_under(&self, a: &Matrix<F>) -> Subspace<F> {
        assert_eq!(a.rows(), self.ambient, "preimage_under dimension mismatch");
        let residuals: Vec<Vec<F>> = a.columns().iter().map(|c| self.reduce(c)).collect();
        Matrix::from_columns(self.ambient, &residuals)
            .expect("residual lengths")
            .kernel()
    }
}

/// Incremental row echelon form over sparse rows.
///
/// Used where the ambient dimension is large but the spanning vectors are sparse
/// (graded pieces of free algebras). Each stored row has its leading entry normalised
/// to one at its pivot column and no entries before it.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<F> {
    ambient: usize,
    rows: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(ambient: usize) -> Self {
        SparseEchelon {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Residual of `v` after elimination; it vanishes on every pivot column.
    pub fn reduce(&self, v: &BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let mut v: BTreeMap<usize, F> = v
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (*k, x.clone()))
            .collect();
        let mut cursor = 0;
        loop {
            let Some((&col, coeff)) = v.range(cursor..).find(|(c, _)| self.rows.contains_key(c)) else {
                break;
            };
            let coeff = coeff.clone();
            let row = &self.rows[&col];
            for (c, x) in row {
                let entry = v.entry(*c).or_insert_with(F::zero);
                *entry = entry.sub_ref(&coeff.mul_ref(x));
                if entry.is_zero() {
                    v.remove(c);
                }
            }
            cursor = col + 1;
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &BTreeMap<usize, F>) -> bool {
        let r = self.reduce(v);
        let Some((&lead, lead_coeff)) = r.iter().next() else {
            return false;
        };
        let inv = lead_coeff.inv();
        let row = r.into_iter().map(|(c, x)| (c, x.mul_ref(&inv))).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, v: &BTreeMap<usize, F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BTreeMap<usize, F>> {
        self.rows.values()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.rows.contains_key(c)).collect()
    }
}
