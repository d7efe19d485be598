//! Smith normal form over `k[x]` with explicit unimodular transforms.
//!
//! The decomposition is `M = gamma1 * D * gamma2`. Elimination works on a
//! copy `W` of `M` while keeping `gamma1 * W * gamma2 = M` true after every
//! elementary step:
//!
//! * a row operation `W <- E W` is mirrored by `gamma1 <- gamma1 E^-1`, which
//!   is a column operation on `gamma1`;
//! * a column operation `W <- W F` is mirrored by `gamma2 <- F^-1 gamma2`, a
//!   row operation on `gamma2`.
//!
//! No polynomial matrix is ever inverted.

use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::poly::Polynomial;
use crate::poly_matrix::MatrixPoly;

/// `input = gamma1 * diag * gamma2`, with `diag` monic (or zero), forming a
/// divisibility chain, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub gamma1: MatrixPoly,
    pub diag: Vec<Polynomial>,
    pub gamma2: MatrixPoly,
}

impl SnfResult {
    /// The diagonal as a `rows x cols` matrix.
    pub fn diag_matrix(&self) -> MatrixPoly {
        MatrixPoly::diagonal(
            self.gamma1.spec(),
            self.gamma1.rows(),
            self.gamma2.cols(),
            &self.diag,
        )
    }

    /// `gamma1 * D * gamma2`.
    pub fn reconstruct(&self) -> Result<MatrixPoly> {
        self.gamma1
            .matmul(&self.diag_matrix())?
            .matmul(&self.gamma2)
    }

    /// Nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Reducer {
    work: MatrixPoly,
    gamma1: MatrixPoly,
    gamma2: MatrixPoly,
}

impl Reducer {
    fn new(m: &MatrixPoly) -> Self {
        Reducer {
            work: m.clone(),
            gamma1: MatrixPoly::identity(m.spec(), m.rows()),
            gamma2: MatrixPoly::identity(m.spec(), m.cols()),
        }
    }

    fn spec(&self) -> FieldSpec {
        self.work.spec()
    }

    /// `row[target] += c * row[source]`.
    fn add_row(&mut self, target: usize, source: usize, c: &Polynomial) {
        self.work.add_row_multiple(target, source, c);
        self.gamma1.add_col_multiple(source, target, &-c);
    }

    /// `col[target] += c * col[source]`.
    fn add_col(&mut self, target: usize, source: usize, c: &Polynomial) {
        self.work.add_col_multiple(target, source, c);
        self.gamma2.add_row_multiple(source, target, &-c);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.work.swap_rows(a, b);
        self.gamma1.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.work.swap_cols(a, b);
        self.gamma2.swap_rows(a, b);
    }

    /// Scales row `i` by the unit `u`; `gamma2` is left untouched.
    fn scale_row(&mut self, i: usize, u: &Scalar) {
        self.work.scale_row(i, u);
        self.gamma1
            .scale_col(i, &u.inv().expect("row scale factor is a unit"));
    }

    fn make_monic(&mut self, i: usize) {
        if let Some(lc) = self.work[(i, i)].leading() {
            if !lc.is_one() {
                let u = lc.inv().expect("leading coefficient is nonzero");
                self.scale_row(i, &u);
            }
        }
    }

    /// Lowest-degree nonzero entry of the trailing block starting at `t`,
    /// ties broken by the smallest `(row, col)`.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.work.rows() {
            for j in t..self.work.cols() {
                let p = &self.work[(i, j)];
                if p.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.work[(bi, bj)].degree() <= p.degree() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `t` below and right of the pivot. Returns false
    /// when some division left a remainder and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        let pivot = self.work[(t, t)].clone();
        for i in t + 1..self.work.rows() {
            if self.work[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = self.work[(i, t)].divrem(&pivot).expect("pivot is nonzero");
            self.add_row(i, t, &-&q);
            clean &= r.is_zero();
        }
        for j in t + 1..self.work.cols() {
            if self.work[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = self.work[(t, j)].divrem(&pivot).expect("pivot is nonzero");
            self.add_col(j, t, &-&q);
            clean &= r.is_zero();
        }
        clean
    }

    /// First row below `t` holding an entry the pivot does not divide.
    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = &self.work[(t, t)];
        if pivot.is_unit() {
            return None;
        }
        (t + 1..self.work.rows())
            .find(|&i| (t + 1..self.work.cols()).any(|j| !pivot.divides(&self.work[(i, j)])))
    }

    /// Replaces the diagonal pair `(d_i, d_j)` by `(gcd, lcm)` up to units.
    fn fix_pair(&mut self, i: usize, j: usize) {
        self.add_row(i, j, &Polynomial::one(self.spec()));
        // Euclid on the columns of row i.
        while !self.work[(i, j)].is_zero() {
            if self.work[(i, j)].degree() < self.work[(i, i)].degree() {
                self.swap_cols(i, j);
                continue;
            }
            let (q, _) = self.work[(i, j)]
                .divrem(&self.work[(i, i)])
                .expect("pivot is nonzero");
            self.add_col(j, i, &-&q);
        }
        if !self.work[(j, i)].is_zero() {
            let q = self.work[(j, i)]
                .exact_div(&self.work[(i, i)])
                .expect("gcd divides the whole 2x2 block");
            self.add_row(j, i, &-&q);
        }
        self.make_monic(i);
        self.make_monic(j);
    }

    fn diagonal_chain_pass(&mut self, rank: usize) {
        loop {
            let mut changed = false;
            for i in 0..rank.saturating_sub(1) {
                let (a, b) = (&self.work[(i, i)], &self.work[(i + 1, i + 1)]);
                if !a.divides(b) {
                    self.fix_pair(i, i + 1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn run(mut self) -> SnfResult {
        let bound = self.work.rows().min(self.work.cols());
        let mut rank = 0;
        'outer: for t in 0..bound {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    break 'outer;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                if !self.clear_cross(t) {
                    continue;
                }
                if let Some(i) = self.non_divisible_row(t) {
                    self.add_row(t, i, &Polynomial::one(self.spec()));
                    continue;
                }
                break;
            }
            self.make_monic(t);
            rank = t + 1;
        }
        self.diagonal_chain_pass(rank);
        let diag = (0..bound).map(|i| self.work[(i, i)].clone()).collect();
        SnfResult {
            gamma1: self.gamma1,
            diag,
            gamma2: self.gamma2,
        }
    }
}

/// Smith normal form of an arbitrary rectangular polynomial matrix.
pub fn snf(m: &MatrixPoly) -> SnfResult {
    Reducer::new(m).run()
}
