//! Dense univariate polynomials over a [`FieldSpec`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::MatrixK;

/// Degree of a polynomial. The zero polynomial has degree [`Degree::NegInf`],
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial {
            spec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::constant(spec.one())
    }

    /// The indeterminate `x`.
    pub fn x(spec: FieldSpec) -> Self {
        Self::monomial(spec.one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_trusted(c.spec(), vec![c])
    }

    pub fn monomial(c: Scalar, power: usize) -> Self {
        let spec = c.spec();
        let mut coeffs = vec![spec.zero(); power];
        coeffs.push(c);
        Self::from_trusted(spec, coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(spec: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.iter().any(|c| c.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(Self::from_trusted(spec, coeffs))
    }

    /// Ascending integer coefficients mapped into the field.
    pub fn from_i64s(spec: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_trusted(spec, coeffs.iter().map(|&c| spec.from_i64(c)).collect())
    }

    pub(crate) fn from_trusted(spec: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { spec, coeffs }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.spec.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants, i.e. the units of `k[x]`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.spec);
        }
        Polynomial {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self * x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.spec.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial {
            spec: self.spec,
            coeffs,
        }
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = self.spec.zero();
        for c in self.coeffs.iter().rev() {
            acc *= at;
            acc += c;
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if self.spec != divisor.spec {
            return Err(Error::SpecMismatch);
        }
        let Some(lead) = divisor.leading() else {
            return Err(Error::DivisionByZeroPoly);
        };
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Polynomial::zero(self.spec), self.clone()));
        }
        let lead_inv = lead.inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.spec.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[k + i] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Polynomial::from_trusted(self.spec, quot),
            Polynomial::from_trusted(self.spec, rem),
        ))
    }

    /// Exact quotient, failing with [`Error::NonDivisible`] when a remainder is left.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::NonDivisible);
        }
        Ok(q)
    }

    /// Whether `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        matches!(other.divrem(self), Ok((_, r)) if r.is_zero())
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_monic(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic lcm, `monic(a*b / gcd(a, b))`.
    pub fn lcm(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let g = self.gcd_monic(other)?;
        Ok((self * &other.exact_div(&g)?).monic())
    }

    /// Horner evaluation `sum c_i M^i`.
    pub fn eval_matrix(&self, m: &MatrixK) -> Result<MatrixK> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.spec() != self.spec {
            return Err(Error::SpecMismatch);
        }
        let n = m.rows();
        let mut acc = MatrixK::zeros(self.spec, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(m)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    /// Human-readable form such as `x^3+x^2+2x+1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let text = magnitude.to_text();
            let body = if text.contains('/') && k > 0 {
                format!("({text})")
            } else {
                text
            };
            match k {
                0 => out.push_str(&body),
                _ => {
                    if !magnitude.is_one() {
                        out.push_str(&body);
                    }
                    out.push('x');
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }

    fn add_impl(&self, rhs: &Polynomial, subtract: bool) -> Polynomial {
        assert_eq!(self.spec, rhs.spec, "polynomials over different fields");
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            let mut c = match self.coeffs.get(k) {
                Some(a) => a.clone(),
                None => self.spec.zero(),
            };
            if let Some(b) = rhs.coeffs.get(k) {
                if subtract {
                    c -= b;
                } else {
                    c += b;
                }
            }
            coeffs.push(c);
        }
        Polynomial::from_trusted(self.spec, coeffs)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, false)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, true)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.spec, rhs.spec, "polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.spec);
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Polynomial::from_trusted(self.spec, coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}
