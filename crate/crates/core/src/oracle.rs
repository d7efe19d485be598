//! Brute-force cross-checks for the main pipeline.
//!
//! Nothing here touches the Smith, canonical-form or centralizer code; only
//! the scalar, polynomial and dense-matrix primitives are shared.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::MatrixK;
use crate::poly::Polynomial;
use crate::poly_matrix::MatrixPoly;

/// Kernel of `X -> X A - A X` over row-major vectorized `X`, devectorized.
pub fn commutant_kernel_basis(a: &MatrixK) -> Result<Vec<MatrixK>> {
    intertwiner_kernel_basis(a, a)
}

/// Kernel of `U -> U A - A' U`.
pub fn intertwiner_kernel_basis(a: &MatrixK, a_prime: &MatrixK) -> Result<Vec<MatrixK>> {
    let system = intertwiner_system(a, a_prime)?;
    devectorize_all(a, system.kernel())
}

/// Kernel of the stacked system `U A = A' U`, `U B = B' U`.
pub fn simultaneous_kernel_basis(
    a: &MatrixK,
    b: &MatrixK,
    a_prime: &MatrixK,
    b_prime: &MatrixK,
) -> Result<Vec<MatrixK>> {
    let top = intertwiner_system(a, a_prime)?;
    let bottom = intertwiner_system(b, b_prime)?;
    let mut rows = top.to_rows();
    rows.extend(bottom.to_rows());
    devectorize_all(a, MatrixK::from_rows(a.spec(), rows)?.kernel())
}

fn devectorize_all(a: &MatrixK, kernel: Vec<Vec<crate::field::Scalar>>) -> Result<Vec<MatrixK>> {
    let n = a.rows();
    kernel
        .iter()
        .map(|v| MatrixK::devectorize(a.spec(), n, n, v))
        .collect()
}

fn intertwiner_system(a: &MatrixK, a_prime: &MatrixK) -> Result<MatrixK> {
    if !a.is_square() || !a_prime.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != a_prime.rows() {
        return Err(Error::SizeMismatch);
    }
    if a.spec() != a_prime.spec() {
        return Err(Error::SpecMismatch);
    }
    let n = a.rows();
    let spec = a.spec();
    // Row (i, j) of the system is entry (i, j) of U A - A' U; column (p, q)
    // holds the coefficient of U_pq, which is [p = i] A_qj - [q = j] A'_ip.
    let mut sys = MatrixK::zeros(spec, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for q in 0..n {
                sys[(row, i * n + q)] += &a[(q, j)];
            }
            for p in 0..n {
                sys[(row, p * n + j)] -= &a_prime[(i, p)];
            }
        }
    }
    Ok(sys)
}

/// Determinant by cofactor expansion along the first row.
fn laplace_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    match n {
        1 => return m[0][0].clone(),
        2 => return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {}
    }
    let spec = m[0][0].spec();
    let mut acc = Polynomial::zero(spec);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &laplace_det(&minor);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Smith invariants from determinantal divisors: `Δ_i` is the monic gcd of
/// all `i x i` minors and `d_i = Δ_i / Δ_(i-1)`. Exponential in `n`; meant
/// for `n <= 5`.
pub fn minor_gcd_invariants(m: &MatrixPoly) -> Result<Vec<Polynomial>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let spec = m.spec();
    let rows = m.to_rows();
    if n == 0 || laplace_det(&rows).is_zero() {
        return Err(Error::SingularInput);
    }
    let mut prev = Polynomial::one(spec);
    let mut out = Vec::with_capacity(n);
    for size in 1..=n {
        let mut delta = Polynomial::zero(spec);
        for rs in (0..n).combinations(size) {
            for cs in (0..n).combinations(size) {
                let sub: Vec<Vec<Polynomial>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                let minor = laplace_det(&sub);
                if minor.is_zero() {
                    continue;
                }
                delta = if delta.is_zero() {
                    minor.monic()
                } else {
                    delta.gcd_monic(&minor)?
                };
            }
        }
        out.push(delta.exact_div(&prev)?);
        prev = delta;
    }
    Ok(out)
}

fn stack(basis: &[MatrixK]) -> Result<Option<MatrixK>> {
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let rows: Vec<_> = basis.iter().map(MatrixK::vectorize).collect();
    if basis
        .iter()
        .any(|b| b.rows() != first.rows() || b.cols() != first.cols() || b.spec() != first.spec())
    {
        return Err(Error::ShapeMismatch(
            "basis elements differ in shape or field".into(),
        ));
    }
    Ok(Some(MatrixK::from_rows(first.spec(), rows)?))
}

fn row_space(basis: &[MatrixK]) -> Result<Option<Vec<Vec<crate::field::Scalar>>>> {
    Ok(stack(basis)?.map(|m| {
        let (rref, pivots) = m.rref();
        (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect()
    }))
}

/// Whether two lists of matrices span the same subspace.
pub fn span_equal(first: &[MatrixK], second: &[MatrixK]) -> Result<bool> {
    if let (Some(a), Some(b)) = (first.first(), second.first()) {
        if a.rows() != b.rows() || a.cols() != b.cols() || a.spec() != b.spec() {
            return Err(Error::ShapeMismatch(
                "the two bases differ in shape or field".into(),
            ));
        }
    }
    let a = row_space(first)?.unwrap_or_default();
    let b = row_space(second)?.unwrap_or_default();
    Ok(a == b)
}

/// Whether `m` lies in the span of `basis`.
pub fn in_span(basis: &[MatrixK], m: &MatrixK) -> Result<bool> {
    let mut extended = basis.to_vec();
    extended.push(m.clone());
    let before = stack(basis)?.map_or(0, |s| s.rank());
    let after = stack(&extended)?.map_or(0, |s| s.rank());
    Ok(before == after)
}

/// Rank of the vectorized stack.
pub fn span_dimension(basis: &[MatrixK]) -> Result<usize> {
    Ok(stack(basis)?.map_or(0, |s| s.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::matrix::companion;
    use crate::poly_matrix::char_matrix;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn commutant_dimensions() {
        assert_eq!(
            commutant_kernel_basis(&MatrixK::identity(f(2), 2))
                .unwrap()
                .len(),
            4
        );
        let a = MatrixK::from_i64s(f(5), 3, 3, &[0, 1, 3, 3, 2, 4, 0, 0, 4]).unwrap();
        let basis = commutant_kernel_basis(&a).unwrap();
        assert_eq!(basis.len(), 5);
        for b in &basis {
            assert!(b.commutes_with(&a));
        }
        let c = companion(&Polynomial::from_i64s(f(2), &[1, 1, 1, 1])).unwrap();
        assert_eq!(commutant_kernel_basis(&c).unwrap().len(), 3);
    }

    #[test]
    fn determinantal_divisors() {
        let f2 = f(2);
        let g = Polynomial::from_i64s(f2, &[1, 0, 1]);
        let m = char_matrix(&companion(&g).unwrap()).unwrap();
        assert_eq!(
            minor_gcd_invariants(&m).unwrap(),
            vec![Polynomial::one(f2), g]
        );

        let s = f(7);
        let x = Polynomial::x(s);
        let x2 = Polynomial::monomial(s.one(), 2);
        let d = MatrixPoly::diagonal(s, 2, 2, &[x.clone(), x2.clone()]);
        assert_eq!(minor_gcd_invariants(&d).unwrap(), vec![x, x2]);

        let s5 = f(5);
        let one = MatrixPoly::new(s5, 1, 1, vec![Polynomial::from_i64s(s5, &[2, 1])]).unwrap();
        assert_eq!(
            minor_gcd_invariants(&one).unwrap(),
            vec![Polynomial::from_i64s(s5, &[2, 1])]
        );
        assert_eq!(
            minor_gcd_invariants(&MatrixPoly::zeros(s5, 2, 2)),
            Err(Error::SingularInput)
        );
    }

    #[test]
    fn span_comparisons() {
        let s = f(5);
        let basis = vec![
            MatrixK::unit(s, 2, 2, 0, 0),
            MatrixK::unit(s, 2, 2, 0, 1),
            MatrixK::identity(s, 2),
        ];
        let permuted = vec![basis[2].clone(), basis[0].clone(), basis[1].clone()];
        assert!(span_equal(&basis, &permuted).unwrap());
        let id = MatrixK::identity(s, 2);
        assert!(span_equal(std::slice::from_ref(&id), &[id.scale(&s.from_i64(2))]).unwrap());
        assert!(!span_equal(std::slice::from_ref(&id), &[MatrixK::unit(s, 2, 2, 0, 1)]).unwrap());
        assert!(matches!(
            span_equal(std::slice::from_ref(&id), &[MatrixK::identity(s, 3)]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(span_equal(&[], &[MatrixK::zeros(s, 2, 2)]).unwrap());
        assert!(in_span(&basis, &MatrixK::unit(s, 2, 2, 1, 1)).unwrap());
        assert!(!in_span(&basis, &MatrixK::unit(s, 2, 2, 1, 0)).unwrap());
    }

    #[test]
    fn intertwiner_kernel_examples() {
        let s = f(2);
        let zero = MatrixK::zeros(s, 2, 2);
        let id = MatrixK::identity(s, 2);
        assert!(intertwiner_kernel_basis(&zero, &id).unwrap().is_empty());
        for u in intertwiner_kernel_basis(&id, &id).unwrap() {
            assert_eq!(u.matmul(&id).unwrap(), id.matmul(&u).unwrap());
        }
    }
}
