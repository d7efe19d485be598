//! Intertwiners: matrices `U` with `U A = A' U` (and `U B = B' U`).
//!
//! When `A` and `A'` are similar, every solution of `U A = A' U` is `P E` with
//! `P A P^-1 = A'` and `E ∈ C(A)`, so the solution space comes straight from
//! the centralizer basis. Otherwise the space is computed as the kernel of
//! the linear map `U -> U A - A' U`. The simultaneous space is the
//! intersection of the two one-sided spaces.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::centralizer::centralizer_from_rcf;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::MatrixK;
use crate::rcf::rcf_transform;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntertwinerMethod {
    /// `P · C(A)` from the canonical-form transforms.
    CosetViaRcf,
    /// Direct kernel of the linear system.
    BruteKernel,
}

impl IntertwinerMethod {
    pub fn name(&self) -> &'static str {
        match self {
            IntertwinerMethod::CosetViaRcf => "coset_via_rcf",
            IntertwinerMethod::BruteKernel => "brute_kernel",
        }
    }
}

/// A linearly independent basis of a space of intertwiners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerSpace {
    pub spec: FieldSpec,
    pub n: usize,
    pub basis: Vec<MatrixK>,
    pub method: IntertwinerMethod,
}

impl IntertwinerSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn check_pair(a: &MatrixK, a_prime: &MatrixK) -> Result<()> {
    for m in [a, a_prime] {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    if a.rows() != a_prime.rows() {
        return Err(Error::SizeMismatch);
    }
    if a.spec() != a_prime.spec() {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

/// Kernel of `U -> U A - A' U`, built column by column from the images of
/// the matrix units.
fn kernel_of_intertwining_map(a: &MatrixK, a_prime: &MatrixK) -> Result<Vec<MatrixK>> {
    let spec = a.spec();
    let n = a.rows();
    let mut columns = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let unit = MatrixK::unit(spec, n, n, p, q);
            let image = unit.matmul(a)?.sub(&a_prime.matmul(&unit)?)?;
            columns.push(image.vectorize());
        }
    }
    let map = MatrixK::from_columns(spec, n * n, &columns)?;
    map.kernel()
        .iter()
        .map(|v| MatrixK::devectorize(spec, n, n, v))
        .collect()
}

/// All `U` with `U A = A' U`.
pub fn one_sided_intertwiners(a: &MatrixK, a_prime: &MatrixK) -> Result<IntertwinerSpace> {
    check_pair(a, a_prime)?;
    let spec = a.spec();
    let n = a.rows();
    let rcf_a = rcf_transform(a)?;
    let rcf_a_prime = rcf_transform(a_prime)?;
    if rcf_a.factors != rcf_a_prime.factors {
        return Ok(IntertwinerSpace {
            spec,
            n,
            basis: kernel_of_intertwining_map(a, a_prime)?,
            method: IntertwinerMethod::BruteKernel,
        });
    }
    // P A P^-1 = A' with P = P_A' P_A^-1.
    let p = rcf_a_prime.transform.matmul(&rcf_a.transform.inverse()?)?;
    let centralizer = centralizer_from_rcf(&rcf_a)?;
    let basis = centralizer
        .elements
        .iter()
        .map(|e| p.matmul(e))
        .collect::<Result<_>>()?;
    Ok(IntertwinerSpace {
        spec,
        n,
        basis,
        method: IntertwinerMethod::CosetViaRcf,
    })
}

/// Basis of the intersection of two subspaces of `n x n` matrices, each
/// given by a linearly independent basis.
fn intersect(
    spec: FieldSpec,
    n: usize,
    first: &[MatrixK],
    second: &[MatrixK],
) -> Result<Vec<MatrixK>> {
    if first.is_empty() || second.is_empty() {
        return Ok(Vec::new());
    }
    // Kernel vectors (α, β) of [V1 | -V2] give V1 α = V2 β in the intersection.
    let mut columns: Vec<Vec<Scalar>> = first.iter().map(MatrixK::vectorize).collect();
    columns.extend(
        second
            .iter()
            .map(|m| m.vectorize().iter().map(|c| -c).collect::<Vec<_>>()),
    );
    let system = MatrixK::from_columns(spec, n * n, &columns)?;
    system
        .kernel()
        .iter()
        .map(|coeffs| {
            let mut acc = MatrixK::zeros(spec, n, n);
            for (c, m) in coeffs.iter().zip(first) {
                if !c.is_zero() {
                    acc = acc.add(&m.scale(c))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

/// All `U` with `U A = A' U` and `U B = B' U`.
pub fn simultaneous_intertwiners(
    a: &MatrixK,
    b: &MatrixK,
    a_prime: &MatrixK,
    b_prime: &MatrixK,
) -> Result<IntertwinerSpace> {
    check_pair(a, a_prime)?;
    check_pair(b, b_prime)?;
    check_pair(a, b)?;
    let left = one_sided_intertwiners(a, a_prime)?;
    let right = one_sided_intertwiners(b, b_prime)?;
    let method = if left.method == IntertwinerMethod::CosetViaRcf
        && right.method == IntertwinerMethod::CosetViaRcf
    {
        IntertwinerMethod::CosetViaRcf
    } else {
        IntertwinerMethod::BruteKernel
    };
    Ok(IntertwinerSpace {
        spec: a.spec(),
        n: a.rows(),
        basis: intersect(a.spec(), a.rows(), &left.basis, &right.basis)?,
        method,
    })
}

/// Samples random combinations of the basis looking for an invertible
/// element. `None` means none was found within `trials`, not that none exists.
pub fn invertible_witness_search(
    space: &IntertwinerSpace,
    trials: usize,
    seed: u64,
) -> Result<Option<MatrixK>> {
    if !space.spec.is_finite() {
        return Err(Error::UnsupportedField);
    }
    if space.basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut candidate = MatrixK::zeros(space.spec, space.n, space.n);
        for m in &space.basis {
            let c = space.spec.random(&mut rng);
            if !c.is_zero() {
                candidate = candidate.add(&m.scale(&c))?;
            }
        }
        if candidate.inverse().is_ok() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn random_invertible(spec: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> MatrixK {
        loop {
            let s = MatrixK::random(spec, n, n, rng);
            if s.is_invertible() {
                return s;
            }
        }
    }

    fn rank_with(basis: &[MatrixK], extra: Option<&MatrixK>) -> usize {
        let mut rows: Vec<_> = basis.iter().map(MatrixK::vectorize).collect();
        if let Some(m) = extra {
            rows.push(m.vectorize());
        }
        if rows.is_empty() {
            return 0;
        }
        MatrixK::from_rows(basis.first().or(extra).unwrap().spec(), rows)
            .unwrap()
            .rank()
    }

    #[test]
    fn identity_pair() {
        let s = f(3);
        let id = MatrixK::identity(s, 2);
        let space = one_sided_intertwiners(&id, &id).unwrap();
        assert_eq!(space.dimension(), 4);
        assert_eq!(space.method, IntertwinerMethod::CosetViaRcf);
    }

    #[test]
    fn zero_against_identity() {
        let s = f(2);
        let space =
            one_sided_intertwiners(&MatrixK::zeros(s, 2, 2), &MatrixK::identity(s, 2)).unwrap();
        assert_eq!(space.dimension(), 0);
        assert_eq!(space.method, IntertwinerMethod::BruteKernel);
    }

    #[test]
    fn conjugate_contains_the_conjugator() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..30 {
            let s = f(5);
            let n = rng.gen_range(1..=4);
            let a = MatrixK::random(s, n, n, &mut rng);
            let conj = random_invertible(s, n, &mut rng);
            let a_prime = conj
                .matmul(&a)
                .unwrap()
                .matmul(&conj.inverse().unwrap())
                .unwrap();
            let space = one_sided_intertwiners(&a, &a_prime).unwrap();
            assert_eq!(space.method, IntertwinerMethod::CosetViaRcf);
            for u in &space.basis {
                assert_eq!(u.matmul(&a).unwrap(), a_prime.matmul(u).unwrap());
            }
            let dim = space.dimension();
            assert_eq!(rank_with(&space.basis, None), dim);
            assert_eq!(rank_with(&space.basis, Some(&conj)), dim);
            let brute = kernel_of_intertwining_map(&a, &a_prime).unwrap();
            assert_eq!(brute.len(), dim);
        }
    }

    #[test]
    fn simultaneous_identity() {
        let s = f(7);
        let id = MatrixK::identity(s, 3);
        let space = simultaneous_intertwiners(&id, &id, &id, &id).unwrap();
        assert_eq!(space.dimension(), 9);
    }

    #[test]
    fn simultaneous_diagonal_and_nilpotent() {
        let s = f(2);
        let a = MatrixK::from_i64s(s, 2, 2, &[0, 0, 0, 1]).unwrap();
        let b = MatrixK::unit(s, 2, 2, 0, 1);
        let space = simultaneous_intertwiners(&a, &b, &a, &b).unwrap();
        // U must be diagonal (commute with diag(0,1)) and commute with E_12: U = λI.
        assert_eq!(space.dimension(), 1);
        assert_eq!(rank_with(&space.basis, Some(&MatrixK::identity(s, 2))), 1);
    }

    #[test]
    fn size_checks() {
        let s = f(5);
        let a = MatrixK::identity(s, 2);
        let b = MatrixK::identity(s, 3);
        assert_eq!(one_sided_intertwiners(&a, &b), Err(Error::SizeMismatch));
        assert_eq!(
            simultaneous_intertwiners(&a, &b, &a, &b),
            Err(Error::SizeMismatch)
        );
    }

    #[test]
    fn witness_examples() {
        let s = f(5);
        let full = IntertwinerSpace {
            spec: s,
            n: 2,
            basis: (0..2)
                .flat_map(|i| (0..2).map(move |j| MatrixK::unit(s, 2, 2, i, j)))
                .collect(),
            method: IntertwinerMethod::BruteKernel,
        };
        let w = invertible_witness_search(&full, 50, DEFAULT_SEED)
            .unwrap()
            .unwrap();
        assert!(w.is_invertible());

        let nilpotent = IntertwinerSpace {
            basis: vec![MatrixK::unit(s, 2, 2, 0, 1)],
            ..full.clone()
        };
        assert_eq!(invertible_witness_search(&nilpotent, 200, 1).unwrap(), None);

        let scalar = IntertwinerSpace {
            basis: vec![MatrixK::identity(s, 2)],
            ..full.clone()
        };
        let w = invertible_witness_search(&scalar, 50, 2).unwrap().unwrap();
        assert!(w.is_invertible());
        assert!(w[(0, 1)].is_zero() && w[(0, 0)] == w[(1, 1)]);

        let rational = IntertwinerSpace {
            spec: FieldSpec::rationals(),
            basis: vec![MatrixK::identity(FieldSpec::rationals(), 2)],
            ..full
        };
        assert_eq!(
            invertible_witness_search(&rational, 5, 0),
            Err(Error::UnsupportedField)
        );
    }

    #[test]
    fn witness_search_is_deterministic() {
        let s = f(3);
        let space = IntertwinerSpace {
            spec: s,
            n: 2,
            basis: vec![MatrixK::identity(s, 2), MatrixK::unit(s, 2, 2, 0, 1)],
            method: IntertwinerMethod::BruteKernel,
        };
        let a = invertible_witness_search(&space, 10, 99).unwrap();
        let b = invertible_witness_search(&space, 10, 99).unwrap();
        assert_eq!(a, b);
    }
}
