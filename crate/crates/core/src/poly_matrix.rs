//! Matrices over `k[x]`.

use std::fmt;
use std::ops::{Index, IndexMut};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::MatrixK;
use crate::poly::Polynomial;

/// Row-major matrix of polynomials over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPoly {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl MatrixPoly {
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, data: Vec<Polynomial>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} polynomial matrix",
                data.len()
            )));
        }
        if data.iter().any(|p| p.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(MatrixPoly {
            spec,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixPoly {
            spec,
            rows,
            cols,
            data: vec![Polynomial::zero(spec); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m[(i, i)] = Polynomial::one(spec);
        }
        m
    }

    /// `rows x cols` matrix with `diag` down the main diagonal.
    pub fn diagonal(spec: FieldSpec, rows: usize, cols: usize, diag: &[Polynomial]) -> Self {
        let mut m = Self::zeros(spec, rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Embeds a constant matrix.
    pub fn from_constant(a: &MatrixK) -> Self {
        MatrixPoly {
            spec: a.spec(),
            rows: a.rows(),
            cols: a.cols(),
            data: a
                .entries()
                .iter()
                .cloned()
                .map(Polynomial::constant)
                .collect(),
        }
    }

    /// Entries with random degree in `0..=max_degree` (some may come out zero).
    pub fn random<R: Rng + ?Sized>(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        max_degree: usize,
        rng: &mut R,
    ) -> Self {
        let data = (0..rows * cols)
            .map(|_| {
                let d = rng.gen_range(0..=max_degree);
                let coeffs = (0..=d).map(|_| spec.random(rng)).collect();
                Polynomial::from_trusted(spec, coeffs)
            })
            .collect();
        MatrixPoly {
            spec,
            rows,
            cols,
            data,
        }
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

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn matmul(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixPoly::zeros(self.spec, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(self.spec));
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Polynomial::one(self.spec);
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(Polynomial::zero(self.spec));
                };
                m.swap_rows(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[(k, k)] * &m[(i, j)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = num.exact_div(&prev).map_err(|_| {
                        Error::InternalInconsistency("inexact Bareiss division".into())
                    })?;
                }
                m[(i, k)] = Polynomial::zero(self.spec);
            }
            prev = m[(k, k)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        Ok(if negate { -&det } else { det })
    }

    /// Square with a nonzero constant determinant.
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().is_ok_and(|d| d.is_unit())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let t = c * s;
            let idx = target * self.cols + j;
            self.data[idx] = &self.data[idx] + &t;
        }
    }

    /// `col[target] += c * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let t = c * s;
            let idx = i * self.cols + target;
            self.data[idx] = &self.data[idx] + &t;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, u: &Scalar) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = self.data[idx].scale(u);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, u: &Scalar) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = self.data[idx].scale(u);
        }
    }
}

impl Index<(usize, usize)> for MatrixPoly {
    type Output = Polynomial;
    fn index(&self, (i, j): (usize, usize)) -> &Polynomial {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixPoly {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Polynomial {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts: Vec<String> = self.data.iter().map(Polynomial::pretty).collect();
        let width = texts.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", texts[i * self.cols + j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// The characteristic matrix `xI - A`.
pub fn char_matrix(a: &MatrixK) -> Result<MatrixPoly> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let spec = a.spec();
    let n = a.rows();
    let mut m = MatrixPoly::zeros(spec, n, n);
    for i in 0..n {
        for j in 0..n {
            let c = Polynomial::constant(-&a[(i, j)]);
            m[(i, j)] = if i == j { &c + &Polynomial::x(spec) } else { c };
        }
    }
    Ok(m)
}

/// `det(xI - A)`.
pub fn characteristic_polynomial(a: &MatrixK) -> Result<Polynomial> {
    char_matrix(a)?.det()
}
