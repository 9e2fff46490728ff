//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! A [`Scalar`] carries its own field tag so values can be passed around
//! without a context object. Mixing scalars from different fields is a bug
//! and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Which exact field the computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "characteristic", rename_all = "snake_case")]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

/// Field kind without the characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldDescriptor {
    /// The prime field of order `p`. Rejects non-primes and moduli that do not
    /// fit the 32-bit residue representation.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDescriptor::PrimeField(p))
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldDescriptor::Rationals => FieldKind::Rationals,
            FieldDescriptor::PrimeField(_) => FieldKind::PrimeField,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::PrimeField(p) => Scalar::Residue { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue { value: r.to_u64().expect("residue fits"), modulus: p }
            }
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(FieldError::DenominatorVanishes {
                den: den.to_string(),
                characteristic: self.characteristic(),
            });
        }
        Ok(&n / &d)
    }

    /// Parses an integer or fraction literal such as `-3` or `2/3`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let text = text.trim();
        let bad = || FieldError::BadLiteral(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => {
                (BigInt::from_str(n.trim()).map_err(|_| bad())?, BigInt::from_str(d.trim()).map_err(|_| bad())?)
            }
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&num, &den)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rationals") {
            return Ok(FieldDescriptor::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .or_else(|| s.strip_prefix("F"))
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| FieldError::BadDescriptor(s.to_string()))?;
        FieldDescriptor::prime(p)
    }
}

/// An exact field element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rationals,
            Scalar::Residue { modulus, .. } => FieldDescriptor::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    /// True when the value is a negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalars from different prime fields");
    a
}

fn mismatch() -> ! {
    panic!("scalars from different fields")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: (a + b) % p, modulus: p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: (a + p - b) % p, modulus: p }
            }
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: mul_mod(*a, *b, p), modulus: p }
            }
            _ => mismatch(),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
