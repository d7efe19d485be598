//! Exact scalars over a prime field `Z/p` or the rationals.
//!
//! A [`Scalar`] always carries enough information to identify its field, so
//! mixing elements of different fields is caught at the point of use.
//! Prime moduli are restricted to `p < 2^32` so that products of two residues
//! fit in a `u64`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Which field a [`FieldSpec`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PrimeField,
    Rationals,
}

/// Descriptor of the ground field. Prime moduli are checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    modulus: Option<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// `Z/p`. Fails unless `p` is a prime below `2^32`.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(FieldSpec { modulus: Some(p) })
    }

    pub const fn rationals() -> Self {
        FieldSpec { modulus: None }
    }

    pub fn kind(&self) -> FieldKind {
        match self.modulus {
            Some(_) => FieldKind::PrimeField,
            None => FieldKind::Rationals,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_finite(&self) -> bool {
        self.modulus.is_some()
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// Canonical image of an integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.modulus {
            Some(p) => Scalar::Mod(ModP {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            }),
            None => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.modulus {
            Some(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod(ModP {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                })
            }
            None => Scalar::Rational(BigRational::from_integer(n.clone())),
        }
    }

    /// Parses the scalar text syntax: a decimal integer for prime fields,
    /// `a/b` or `a` for the rationals.
    pub fn parse_scalar(&self, text: &str) -> std::result::Result<Scalar, String> {
        let text = text.trim();
        match self.modulus {
            Some(_) => {
                let n =
                    BigInt::from_str(text).map_err(|_| format!("`{text}` is not an integer"))?;
                Ok(self.from_bigint(&n))
            }
            None => {
                let (num, den) = match text.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (text, "1"),
                };
                let num = BigInt::from_str(num.trim())
                    .map_err(|_| format!("`{text}` is not a rational number"))?;
                let den = BigInt::from_str(den.trim())
                    .map_err(|_| format!("`{text}` is not a rational number"))?;
                if den.is_zero() {
                    return Err(format!("`{text}` has a zero denominator"));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
        }
    }

    /// Uniform element of a prime field; small integers in `[-9, 9]` over the rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.modulus {
            Some(p) => Scalar::Mod(ModP {
                value: rng.gen_range(0..p),
                modulus: p,
            }),
            None => self.from_i64(rng.gen_range(-9..=9)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            Some(p) => write!(f, "{p}"),
            None => f.write_str("Q"),
        }
    }
}

/// A residue in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP {
    value: u64,
    modulus: u64,
}

impl ModP {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// An exact field element in canonical form.
///
/// Residues lie in `[0, p)`; rationals are fully reduced with a positive
/// denominator, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(ModP),
    Rational(BigRational),
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Mod(m) => FieldSpec {
                modulus: Some(m.modulus),
            },
            Scalar::Rational(_) => FieldSpec::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(m) => m.value == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(m) => m.value == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(match self {
            Scalar::Mod(m) => {
                // p is prime, so a^(p-2) is the inverse.
                Scalar::Mod(m.pow(m.modulus - 2))
            }
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Text form used by the file and JSON formats: `3`, `-2/5`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// True for rationals below zero. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod(_) => false,
            Scalar::Rational(q) => q.is_negative(),
        }
    }

    /// Recover the canonical form of a value that may have been built by hand.
    pub fn normalized(&self) -> Scalar {
        match self {
            Scalar::Mod(m) => Scalar::Mod(ModP {
                value: m.value % m.modulus,
                modulus: m.modulus,
            }),
            Scalar::Rational(q) => {
                Scalar::Rational(BigRational::new(q.numer().clone(), q.denom().clone()))
            }
        }
    }
}

impl ModP {
    fn pow(self, mut exp: u64) -> ModP {
        let p = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        ModP {
            value: acc,
            modulus: p,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(m) => write!(f, "{}", m.value),
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => {
                a.value = (a.value + b.value) % a.modulus;
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => mismatch(),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => {
                a.value = (a.value + a.modulus - b.value) % a.modulus;
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => mismatch(),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => {
                a.value = a.value * b.value % a.modulus;
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a *= b,
            _ => mismatch(),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod(m) => Scalar::Mod(ModP {
                value: (m.modulus - m.value) % m.modulus,
                modulus: m.modulus,
            }),
            Scalar::Rational(q) => Scalar::Rational(-q),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
