//! Exact coefficient fields: the rationals and prime fields 𝔽_p.
//!
//! Every scalar in the crate is either an arbitrary-precision reduced
//! fraction or a canonical residue in `[0, p)`. There is no floating
//! point anywhere; equality of scalars is structural equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Largest admissible prime modulus. Residue products use `u128`
/// intermediates and primality is checked by trial division, so the
/// modulus is capped where both stay cheap.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Longest scalar string `parse_scalar` accepts.
pub const MAX_SCALAR_LEN: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty scalar string")]
    Empty,
    #[error("scalar string longer than {MAX_SCALAR_LEN} bytes")]
    TooLong,
    #[error("invalid scalar literal {0:?}")]
    BadLiteral(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("fraction syntax {0:?} is not valid in a prime field")]
    FractionInPrimeField(String),
}

/// The coefficient field of an instance: ℚ or 𝔽_p with p prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// Primality is checked by trial division at construction.
    pub fn prime_field(p: u64) -> Result<FieldSpec, FieldError> {
        if p > MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// 0 for ℚ, p for 𝔽_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// True when `n` is invertible in the field (used for Maschke-type
    /// semisimplicity checks on the group order).
    pub fn is_invertible_integer(&self, n: u64) -> bool {
        match self {
            FieldSpec::Rationals => n != 0,
            FieldSpec::PrimeField(p) => !n.is_multiple_of(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Residue(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let p = *p as i128;
                Scalar::Residue((((n as i128) % p + p) % p) as u64)
            }
        }
    }

    /// True when the scalar's representation belongs to this field.
    pub fn is_member(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::PrimeField(p), Scalar::Residue(r)) => r < p,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldSpec::PrimeField(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % (*p as u128)) as u64)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldSpec::PrimeField(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 * *y as u128) % (*p as u128)) as u64)
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::PrimeField(p), Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers test `is_zero` first.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rational(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rational(x.recip())
            }
            (FieldSpec::PrimeField(p), Scalar::Residue(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Residue(pow_mod(*x, p - 2, *p))
            }
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parse a scalar: `a` or `a/b` over ℚ, a decimal residue over 𝔽_p.
    /// Residues are canonicalized into `[0, p)`; a leading `-` is allowed.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarParseError> {
        if text.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        if text.len() > MAX_SCALAR_LEN {
            return Err(ScalarParseError::TooLong);
        }
        match self {
            FieldSpec::Rationals => {
                let (num_text, den_text) = match text.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (text, None),
                };
                let num = parse_bigint(num_text)
                    .ok_or_else(|| ScalarParseError::BadLiteral(text.to_string()))?;
                let den = match den_text {
                    Some(d) => {
                        if d.starts_with('-') || d.starts_with('+') {
                            return Err(ScalarParseError::BadLiteral(text.to_string()));
                        }
                        parse_bigint(d).ok_or_else(|| ScalarParseError::BadLiteral(text.to_string()))?
                    }
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(ScalarParseError::ZeroDenominator(text.to_string()));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                if text.contains('/') {
                    return Err(ScalarParseError::FractionInPrimeField(text.to_string()));
                }
                let n = parse_bigint(text)
                    .ok_or_else(|| ScalarParseError::BadLiteral(text.to_string()))?;
                let p_big = BigInt::from(*p);
                let mut r = n % &p_big;
                if r.is_negative() {
                    r += &p_big;
                }
                let (_, digits) = r.to_u64_digits();
                Ok(Scalar::Residue(digits.first().copied().unwrap_or(0)))
            }
        }
    }

    /// Canonical string form: `a/b` with `/b` omitted when b = 1;
    /// residues render as plain decimals.
    pub fn render(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Residue(r) => r.to_string(),
        }
    }
}

fn parse_bigint(text: &str) -> Option<BigInt> {
    let body = text.strip_prefix('-').unwrap_or(text);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(text).ok()
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// An element of the coefficient field. Rationals are always reduced with a
/// positive denominator; residues are always canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Residue(r) => *r == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}
