//! Explicit k-bases of centralizers `C(A) = {B : AB = BA}`.
//!
//! For `R = C(f_1) ⊕ ... ⊕ C(f_m)` with `f_1 | ... | f_m`, the block `(i, j)`
//! of a commuting matrix ranges over `{λ(C(f_i)) Q_ij}`, where the generating
//! matrix `Q_ij` encodes the module map `k[x]/f_j -> k[x]/f_i` sending `1` to
//! the generating polynomial `q_ij` (`1` if `i <= j`, `f_i / f_j` otherwise).
//! Taking `λ = x^t` for `t < min(deg f_i, deg f_j)` gives a basis of that
//! block. A general `A` is handled by conjugating with its rational canonical
//! transform.
//!
//! Factor indices in this module are 1-based, matching the labels `f_1..f_m`.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{companion, MatrixK};
use crate::poly::Polynomial;
use crate::rcf::{rcf_transform, RcfResult};

/// Where a basis element came from: block `(i, j)` (1-based) and the power
/// `t` of `C(f_i)` applied to `Q_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub block: (usize, usize),
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerBasis {
    pub spec: FieldSpec,
    pub n: usize,
    pub elements: Vec<MatrixK>,
    pub provenance: Vec<Provenance>,
    pub factors: Vec<Polynomial>,
}

impl CentralizerBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }
}

fn degree_of(f: &Polynomial) -> usize {
    f.degree().finite().expect("validated factors are nonzero")
}

/// Checks that `factors` is a nonempty chain of monic, nonconstant
/// polynomials over one field, each dividing the next.
pub fn validate_chain(factors: &[Polynomial]) -> Result<()> {
    let first = factors.first().ok_or(Error::NonDivisible)?;
    for f in factors {
        if f.spec() != first.spec() {
            return Err(Error::SpecMismatch);
        }
        if f.is_zero() || f.is_unit() {
            return Err(Error::DegreeZero);
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
    }
    for w in factors.windows(2) {
        if !w[0].divides(&w[1]) {
            return Err(Error::NonDivisible);
        }
    }
    Ok(())
}

fn check_index(i: usize, j: usize, m: usize) -> Result<()> {
    if i == 0 || j == 0 || i > m || j > m {
        return Err(Error::DimensionMismatch(format!(
            "block ({i}, {j}) outside 1..={m}"
        )));
    }
    Ok(())
}

/// `q_ij`: `1` when `i <= j`, the exact quotient `f_i / f_j` when `i > j`.
pub fn generating_polynomial(i: usize, j: usize, factors: &[Polynomial]) -> Result<Polynomial> {
    check_index(i, j, factors.len())?;
    let (fi, fj) = (&factors[i - 1], &factors[j - 1]);
    if i <= j {
        return Ok(Polynomial::one(fi.spec()));
    }
    fi.exact_div(fj)
}

/// Coefficients of `q_ij` padded to length `deg f_i` (`e_k` ↔ `x^(k-1)`).
pub fn generating_vector(i: usize, j: usize, factors: &[Polynomial]) -> Result<Vec<Scalar>> {
    let q = generating_polynomial(i, j, factors)?;
    let len = degree_of(&factors[i - 1]);
    if q.coeffs().len() > len {
        return Err(Error::NonDivisible);
    }
    Ok((0..len).map(|k| q.coeff(k)).collect())
}

/// `Q_ij = [q_ij | C(f_i) q_ij | ... ]` with `deg f_j` columns.
pub fn generating_matrix(i: usize, j: usize, factors: &[Polynomial]) -> Result<MatrixK> {
    let q = generating_vector(i, j, factors)?;
    let c = companion(&factors[i - 1])?;
    let cols = degree_of(&factors[j - 1]);
    let mut columns = Vec::with_capacity(cols);
    let mut v = q;
    for t in 0..cols {
        if t > 0 {
            v = c.mul_vec(&v)?;
        }
        columns.push(v.clone());
    }
    MatrixK::from_columns(factors[i - 1].spec(), c.rows(), &columns)
}

/// Basis of the centralizer of `C(f_1) ⊕ ... ⊕ C(f_m)`.
///
/// Blocks are visited in row-major `(i, j)` order; block `(i, j)` contributes
/// `C(f_i)^t Q_ij` for `t < min(deg f_i, deg f_j)`, embedded into an
/// otherwise zero `n x n` matrix.
pub fn rcf_centralizer_basis(factors: &[Polynomial]) -> Result<CentralizerBasis> {
    validate_chain(factors)?;
    let spec = factors[0].spec();
    let degrees: Vec<usize> = factors.iter().map(degree_of).collect();
    let offsets: Vec<usize> = degrees
        .iter()
        .scan(0, |acc, &d| {
            let start = *acc;
            *acc += d;
            Some(start)
        })
        .collect();
    let n: usize = degrees.iter().sum();
    let m = factors.len();
    let mut elements = Vec::new();
    let mut provenance = Vec::new();
    for i in 1..=m {
        let c = companion(&factors[i - 1])?;
        for j in 1..=m {
            let mut block = generating_matrix(i, j, factors)?;
            for t in 0..degrees[i - 1].min(degrees[j - 1]) {
                if t > 0 {
                    block = c.matmul(&block)?;
                }
                let mut e = MatrixK::zeros(spec, n, n);
                e.set_block(offsets[i - 1], offsets[j - 1], &block);
                elements.push(e);
                provenance.push(Provenance {
                    block: (i, j),
                    power: t,
                });
            }
        }
    }
    Ok(CentralizerBasis {
        spec,
        n,
        elements,
        provenance,
        factors: factors.to_vec(),
    })
}

/// Conjugates the canonical-form basis by the transform: `P E P^-1`.
pub fn centralizer_from_rcf(rcf: &RcfResult) -> Result<CentralizerBasis> {
    let mut basis = rcf_centralizer_basis(&rcf.factors)?;
    let p = &rcf.transform;
    let p_inv = p.inverse()?;
    basis.elements = basis
        .elements
        .iter()
        .map(|e| p.matmul(e)?.matmul(&p_inv))
        .collect::<Result<_>>()?;
    Ok(basis)
}

/// Basis of `C(A)`, ordered and tagged as in [`rcf_centralizer_basis`].
pub fn centralizer_basis(a: &MatrixK) -> Result<CentralizerBasis> {
    centralizer_from_rcf(&rcf_transform(a)?)
}

/// `dim C(A)` as `sum_{i,j} min(deg f_i, deg f_j)`.
pub fn frobenius_dimension(factors: &[Polynomial]) -> Result<usize> {
    validate_chain(factors)?;
    let degrees: Vec<usize> = factors.iter().map(degree_of).collect();
    Ok(degrees
        .iter()
        .flat_map(|a| degrees.iter().map(move |b| (*a).min(*b)))
        .sum())
}

/// `dim C(A)` as `deg f_m + 3 deg f_(m-1) + 5 deg f_(m-2) + ...`.
pub fn frobenius_dimension_closed_form(factors: &[Polynomial]) -> Result<usize> {
    validate_chain(factors)?;
    Ok(factors
        .iter()
        .rev()
        .enumerate()
        .map(|(k, f)| (2 * k + 1) * degree_of(f))
        .sum())
}
