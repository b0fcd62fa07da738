//! Exact linear algebra over prime fields.
//!
//! Every dimension reported by this crate comes from row reduction in this
//! module. Matrices are dense; over 𝔽₂ row reduction runs on packed 64-bit
//! words, otherwise on `u32` residues with `u64` intermediate products.
//! Both backends compute the reduced row echelon form, which is unique, so
//! they agree bit for bit.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("ambient dimensions differ ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
}

/// The prime field 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p < 2 || p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub const fn gf2() -> Self {
        Self { p: 2 }
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(self.p) - u64::from(b)) % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse via Fermat. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        let mut base = u64::from(a) % u64::from(self.p);
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % u64::from(self.p);
            }
            base = base * base % u64::from(self.p);
            exp >>= 1;
        }
        acc as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::gf2()
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-reduction backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Residues in `u32`, any prime.
    Dense,
    /// Packed bit rows; 𝔽₂ only.
    PackedGf2,
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: PrimeField,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    /// `cols` fixes the width when `rows` is empty or all rows are empty.
    pub fn from_rows(
        field: PrimeField,
        rows: &[Vec<i64>],
        cols: usize,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged {
                    row: r,
                    len: row.len(),
                    expected: cols,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = field.reduce(v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns<I, V>(field: PrimeField, rows: usize, columns: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let columns: Vec<V> = columns.into_iter().collect();
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            assert_eq!(col.len(), rows, "column {c} has wrong length");
            for (r, &v) in col.iter().enumerate() {
                m.data[r * cols + c] = v % field.p;
            }
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = field.reduce(f(r, c));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Entries as symmetric representatives in (-p/2, p/2].
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        let p = i64::from(self.field.p);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|&v| {
                        let v = i64::from(v);
                        if 2 * v > p {
                            v - p
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch in product");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = u64::from(self.field.p);
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u64; rhs.cols];
            for k in 0..self.cols {
                let a = u64::from(self.data[r * self.cols + k]);
                if a == 0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (slot, &b) in acc.iter_mut().zip(rhs_row) {
                    *slot = (*slot + a * u64::from(b)) % p;
                }
            }
            for (c, v) in acc.into_iter().enumerate() {
                out.data[r * rhs.cols + c] = v as u32;
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (i, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + i] = self.get(r, c);
            }
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let cols = self.cols + rhs.cols;
        let mut out = Self::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(rhs.row(r));
        }
        out
    }

    pub fn row_echelon(&self) -> Echelon {
        if self.field.p == 2 {
            self.row_echelon_with(Backend::PackedGf2)
        } else {
            self.row_echelon_with(Backend::Dense)
        }
    }

    pub fn row_echelon_with(&self, backend: Backend) -> Echelon {
        match backend {
            Backend::Dense => rref_dense(self),
            Backend::PackedGf2 => {
                assert_eq!(self.field.p, 2, "packed backend requires F_2");
                rref_packed(self)
            }
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.row_echelon().pivots.len()
    }

    /// Null space; basis vectors follow the free columns in increasing order.
    pub fn kernel_basis(&self) -> Subspace {
        let ech = self.row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let field = self.field;
        let columns = free.iter().map(|&f| {
            let mut v = vec![0u32; self.cols];
            v[f] = 1;
            for (i, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = field.neg(ech.reduced.get(i, f));
            }
            v
        });
        Subspace {
            ambient_dim: self.cols,
            basis: Matrix::from_columns(field, self.cols, columns),
        }
    }

    /// Column space, spanned by the pivot columns of `self`.
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self)
    }
}

fn rref_dense(m: &Matrix) -> Echelon {
    let field = m.field;
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&r| a.data[r * cols + c] != 0) else {
            continue;
        };
        if sel != pr {
            for k in 0..cols {
                a.data.swap(sel * cols + k, pr * cols + k);
            }
        }
        let inv = field.inv(a.data[pr * cols + c]);
        for k in c..cols {
            a.data[pr * cols + k] = field.mul(a.data[pr * cols + k], inv);
        }
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = a.data[r * cols + c];
            if factor == 0 {
                continue;
            }
            for k in c..cols {
                let sub = field.mul(factor, a.data[pr * cols + k]);
                a.data[r * cols + k] = field.sub(a.data[r * cols + k], sub);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    Echelon { reduced: a, pivots }
}

fn rref_packed(m: &Matrix) -> Echelon {
    let (rows, cols) = (m.rows, m.cols);
    let words = cols.div_ceil(64);
    let mut bits: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut w = vec![0u64; words];
            for (c, &v) in m.row(r).iter().enumerate() {
                if v & 1 == 1 {
                    w[c / 64] |= 1 << (c % 64);
                }
            }
            w
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let (word, mask) = (c / 64, 1u64 << (c % 64));
        let Some(sel) = (pr..rows).find(|&r| bits[r][word] & mask != 0) else {
            continue;
        };
        bits.swap(sel, pr);
        let pivot_row = bits[pr].clone();
        for (r, row) in bits.iter_mut().enumerate() {
            if r != pr && row[word] & mask != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(word) {
                    *x ^= *y;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    let mut reduced = Matrix::zeros(m.field, rows, cols);
    for (r, row) in bits.iter().enumerate() {
        for c in 0..cols {
            if row[c / 64] >> (c % 64) & 1 == 1 {
                reduced.data[r * cols + c] = 1;
            }
        }
    }
    Echelon { reduced, pivots }
}

/// A subspace of 𝔽_p^n given by an independent spanning set (the columns of `basis`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(field, ambient_dim, 0),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(field: PrimeField, ambient_dim: usize, axes: &[usize]) -> Self {
        let columns = axes.iter().map(|&i| {
            let mut v = vec![0u32; ambient_dim];
            v[i] = 1;
            v
        });
        Self {
            ambient_dim,
            basis: Matrix::from_columns(field, ambient_dim, columns),
        }
    }

    /// Span of the columns of `m`; keeps the pivot columns.
    pub fn span(m: &Matrix) -> Self {
        let ech = m.row_echelon();
        Self {
            ambient_dim: m.rows,
            basis: m.select_columns(&ech.pivots),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field
    }

    /// Re-expresses the subspace in a larger space, sending coordinate `i`
    /// to coordinate `positions[i]`.
    pub fn embed(&self, positions: &[usize], ambient_dim: usize) -> Subspace {
        assert_eq!(
            positions.len(),
            self.ambient_dim,
            "embedding has wrong arity"
        );
        let mut basis = Matrix::zeros(self.field(), ambient_dim, self.dim());
        for (i, &pos) in positions.iter().enumerate() {
            for c in 0..self.dim() {
                basis.set(pos, c, self.basis.get(i, c));
            }
        }
        Subspace { ambient_dim, basis }
    }

    pub fn sum_dim(&self, other: &Subspace) -> Result<usize, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.basis.hstack(&other.basis).rank())
    }

    /// `dim U + dim W - dim (U + W)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize, LinalgError> {
        let sum = self.sum_dim(other)?;
        Ok(self.dim() + other.dim() - sum)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let col = Matrix::from_columns(self.field(), self.ambient_dim, [v]);
        self.basis.hstack(&col).rank() == self.dim()
    }

    /// Columns of `self`'s basis that extend a basis of `sub` to a basis of
    /// `self + sub`; when `sub ⊆ self` these span a complement of `sub`.
    pub fn complement_of(&self, sub: &Subspace) -> Result<Matrix, LinalgError> {
        self.check_ambient(sub)?;
        let joined = sub.basis.hstack(&self.basis);
        let ech = joined.row_echelon();
        let picked: Vec<usize> = ech
            .pivots
            .iter()
            .filter(|&&c| c >= sub.dim())
            .map(|&c| c - sub.dim())
            .collect();
        Ok(self.basis.select_columns(&picked))
    }

    /// Coordinates of the columns of `vectors` in this basis, or `None` if
    /// some column lies outside the subspace.
    pub fn coordinates(&self, vectors: &Matrix) -> Option<Matrix> {
        assert_eq!(vectors.rows, self.ambient_dim, "vector length mismatch");
        let k = self.dim();
        let ech = self.basis.hstack(vectors).row_echelon();
        if ech.pivots.len() != k || ech.pivots.iter().any(|&p| p >= k) {
            return None;
        }
        let mut out = Matrix::zeros(self.field(), k, vectors.cols);
        for i in 0..k {
            for j in 0..vectors.cols {
                out.set(i, j, ech.reduced.get(i, k + j));
            }
        }
        Some(out)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }
}
