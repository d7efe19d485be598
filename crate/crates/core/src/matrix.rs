//! Dense matrices over the ground field: arithmetic, Gauss-Jordan reduction,
//! companion matrices and direct sums.

use std::fmt;
use std::ops::{Index, IndexMut};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{Degree, Polynomial};

/// Row-major matrix with entries in a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixK {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl MatrixK {
    /// Builds a matrix from row-major entries. Both dimensions must be positive.
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|c| c.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(MatrixK {
            spec,
            rows,
            cols,
            data,
        })
    }

    pub fn from_i64s(spec: FieldSpec, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(
            spec,
            rows,
            cols,
            data.iter().map(|&v| spec.from_i64(v)).collect(),
        )
    }

    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(spec, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(spec: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let cols = columns.len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for col in columns {
                data.push(col[i].clone());
            }
        }
        Self::new(spec, rows, cols, data)
    }

    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixK {
            spec,
            rows,
            cols,
            data: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m[(i, i)] = spec.one();
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(spec: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Self {
        MatrixK {
            spec,
            rows,
            cols,
            data: (0..rows * cols).map(|_| spec.random(rng)).collect(),
        }
    }

    /// Zero matrix with a single one at `(i, j)`.
    pub fn unit(spec: FieldSpec, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(spec, rows, cols);
        m[(i, j)] = spec.one();
        m
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatrixK {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        MatrixK {
            spec: self.spec,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn check_same_shape(&self, other: &MatrixK) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixK) -> Result<MatrixK> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MatrixK) -> Result<MatrixK> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MatrixK {
        MatrixK {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn matmul(&self, other: &MatrixK) -> Result<MatrixK> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixK::zeros(self.spec, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.spec.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &MatrixK) -> Result<MatrixK> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn commutes_with(&self, other: &MatrixK) -> bool {
        self.commutator(other).is_ok_and(|c| c.is_zero())
    }

    pub fn pow(&self, exp: usize) -> Result<MatrixK> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = MatrixK::identity(self.spec, self.rows);
        for _ in 0..exp {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatrixK {
        let mut out = MatrixK::zeros(self.spec, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatrixK) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// Pivots are taken as the first nonzero entry scanning columns left to
    /// right, so the result is deterministic.
    pub fn rref(&self) -> (MatrixK, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &factor * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form together with a kernel basis, one generator
    /// per free column carrying a one in that column.
    pub fn rref_kernel(&self) -> (MatrixK, Vec<Vec<Scalar>>) {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = vec![self.spec.zero(); self.cols];
                v[free] = self.spec.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&rref[(row, free)];
                }
                v
            })
            .collect();
        (rref, kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.rref_kernel().1
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<MatrixK> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = MatrixK::zeros(self.spec, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &MatrixK::identity(self.spec, n));
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(red.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.spec.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(self.spec.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            let inv = pivot.inv()?;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let t = &factor * &m[(c, j)];
                    m[(i, j)] -= &t;
                }
            }
        }
        Ok(det)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row-major flattening into a vector of length `rows * cols`.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Inverse of [`MatrixK::vectorize`].
    pub fn devectorize(spec: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Result<MatrixK> {
        Self::new(spec, rows, cols, v.to_vec())
    }
}

impl Index<(usize, usize)> for MatrixK {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixK {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self.data.iter().map(Scalar::to_text).collect();
        let width = texts.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", texts[i * self.cols + j]))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Companion matrix of a monic `f`: ones on the subdiagonal and
/// `-c_0, ..., -c_{n-1}` down the last column.
pub fn companion(f: &Polynomial) -> Result<MatrixK> {
    let n = match f.degree() {
        Degree::NegInf | Degree::Finite(0) => return Err(Error::DegreeZero),
        Degree::Finite(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let spec = f.spec();
    let mut m = MatrixK::zeros(spec, n, n);
    for i in 1..n {
        m[(i, i - 1)] = spec.one();
    }
    for i in 0..n {
        m[(i, n - 1)] = -&f.coeffs()[i];
    }
    Ok(m)
}

/// Block-diagonal `a ⊕ b`.
pub fn direct_sum(a: &MatrixK, b: &MatrixK) -> Result<MatrixK> {
    direct_sum_all(&[a.clone(), b.clone()])
}

/// Block-diagonal sum of a nonempty list of square matrices.
pub fn direct_sum_all(blocks: &[MatrixK]) -> Result<MatrixK> {
    let first = blocks.first().ok_or(Error::EmptyMatrix)?;
    let spec = first.spec();
    let mut n = 0;
    for b in blocks {
        if b.spec() != spec {
            return Err(Error::SpecMismatch);
        }
        if !b.is_square() {
            return Err(Error::NonSquare {
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        if b.rows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        n += b.rows();
    }
    let mut out = MatrixK::zeros(spec, n, n);
    let mut offset = 0;
    for b in blocks {
        out.set_block(offset, offset, b);
        offset += b.rows();
    }
    Ok(out)
}
