//! Invariant factors and the rational canonical form transform.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{companion, direct_sum_all, MatrixK};
use crate::poly::Polynomial;
use crate::poly_matrix::char_matrix;
use crate::smith::snf;

/// Invariant factors `f_1 | f_2 | ... | f_m` (nonconstant, monic), a
/// transform `P` and the canonical form `R = C(f_1) ⊕ ... ⊕ C(f_m)` with
/// `P^-1 A P = R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcfResult {
    pub factors: Vec<Polynomial>,
    pub transform: MatrixK,
    pub canonical: MatrixK,
}

impl RcfResult {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|f| f.degree().finite().expect("factors are nonzero"))
            .collect()
    }
}

fn check_square_nonempty(a: &MatrixK) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok(())
}

/// Sends `sum x^i v_i` (with `v_i ∈ k^n` read off coefficient-wise) to
/// `sum A^i v_i`.
pub fn apply_phi(v: &[Polynomial], a: &MatrixK) -> Result<Vec<Scalar>> {
    check_square_nonempty(a)?;
    let n = a.rows();
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "column of length {} for a {n}x{n} matrix",
            v.len()
        )));
    }
    if v.iter().any(|p| p.spec() != a.spec()) {
        return Err(Error::SpecMismatch);
    }
    let top = v.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let mut acc = vec![a.spec().zero(); n];
    for power in (0..top).rev() {
        acc = a.mul_vec(&acc)?;
        for (slot, p) in acc.iter_mut().zip(v) {
            if let Some(c) = p.coeffs().get(power) {
                *slot += c;
            }
        }
    }
    Ok(acc)
}

/// Nonconstant diagonal entries of the Smith form of `xI - A`, in
/// divisibility order. Their product is the characteristic polynomial.
pub fn invariant_factors(a: &MatrixK) -> Result<Vec<Polynomial>> {
    check_square_nonempty(a)?;
    let diag = snf(&char_matrix(a)?).diag;
    nonconstant(diag)
}

fn nonconstant(diag: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    if diag.iter().any(Polynomial::is_zero) {
        return Err(Error::InternalInconsistency(
            "characteristic matrix has a zero invariant".into(),
        ));
    }
    Ok(diag.into_iter().filter(|d| !d.is_unit()).collect())
}

/// Rational canonical form of `A` with a transform `P`, read off the left
/// Smith transform of `xI - A`.
///
/// For every nonconstant invariant `f_i` with column `y_i` of `gamma1`, the
/// columns `phi(y_i), A phi(y_i), ..., A^(deg f_i - 1) phi(y_i)` are appended
/// to `P`. The result is verified (`P` invertible, `A P = P R`) before it is
/// returned.
pub fn rcf_transform(a: &MatrixK) -> Result<RcfResult> {
    check_square_nonempty(a)?;
    let spec = a.spec();
    let n = a.rows();
    let smith = snf(&char_matrix(a)?);
    let mut columns = Vec::with_capacity(n);
    let mut factors = Vec::new();
    for (k, d) in smith.diag.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::InternalInconsistency(
                "characteristic matrix has a zero invariant".into(),
            ));
        }
        if d.is_unit() {
            continue;
        }
        let degree = d.degree().finite().expect("nonzero");
        let mut w = apply_phi(&smith.gamma1.column(k), a)?;
        for step in 0..degree {
            if step > 0 {
                w = a.mul_vec(&w)?;
            }
            columns.push(w.clone());
        }
        factors.push(d.clone());
    }
    if columns.len() != n {
        return Err(Error::InternalInconsistency(format!(
            "invariant factor degrees sum to {} instead of {n}",
            columns.len()
        )));
    }
    let transform = MatrixK::from_columns(spec, n, &columns)?;
    let blocks = factors.iter().map(companion).collect::<Result<Vec<_>>>()?;
    let canonical = direct_sum_all(&blocks)?;
    if !transform.is_invertible() {
        return Err(Error::InternalInconsistency(
            "rational canonical transform is singular".into(),
        ));
    }
    if a.matmul(&transform)? != transform.matmul(&canonical)? {
        return Err(Error::InternalInconsistency(
            "transform does not conjugate A to its canonical form".into(),
        ));
    }
    Ok(RcfResult {
        factors,
        transform,
        canonical,
    })
}
