//! Exact field arithmetic over `Q` or a prime field `F_p`.
//!
//! A [`Field`] is the session-wide choice of ground field; every [`Scalar`]
//! carries enough information to know which field it lives in. Arithmetic
//! between scalars of different characteristic is a logic error and panics;
//! values coming from outside a session should be checked with
//! [`Field::check`] first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic mismatch: expected {expected}, found {found}")]
    CharacteristicMismatch { expected: u64, found: u64 },
    #[error("denominator of {0} vanishes modulo {1}")]
    DenominatorVanishes(String, u64),
    #[error("invalid scalar literal `{0}`")]
    InvalidLiteral(String),
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 62 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: (v as i128).rem_euclid(*p as i128) as u64,
                modulus: *p,
            },
        }
    }

    /// Maps a rational number into this field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, FieldError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(*p);
                let num = q.numer().mod_floor(&modulus);
                let den = q.denom().mod_floor(&modulus);
                if den.is_zero() {
                    return Err(FieldError::DenominatorVanishes(q.to_string(), *p));
                }
                let num = bigint_to_u64(&num);
                let den = bigint_to_u64(&den);
                let inv = mod_pow(den, *p - 2, *p);
                Ok(Scalar::Mod {
                    value: mul_mod(num, inv, *p),
                    modulus: *p,
                })
            }
        }
    }

    /// Parses `a`, `-a` or `a/b` with `b` nonzero.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let q = parse_rational(text)?;
        self.from_rational(&q)
    }

    /// Verifies that `s` belongs to this field.
    pub fn check(&self, s: &Scalar) -> Result<(), FieldError> {
        let found = s.characteristic();
        if found != self.characteristic() {
            return Err(FieldError::CharacteristicMismatch {
                expected: self.characteristic(),
                found,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// Parses a rational literal such as `3`, `-7/2` or `+4`.
pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::InvalidLiteral(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid_int = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) || !valid_int(den, false) {
        return Err(bad());
    }
    let num: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// An exact element of `Q` or `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn pow(&self, exp: i64) -> Scalar {
        let base = if exp < 0 {
            self.inv().expect("zero raised to a negative power")
        } else {
            self.clone()
        };
        let mut acc = self.field().one();
        let mut b = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Sign used when ordering rationals in canonical output.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    fn assert_same(&self, other: &Scalar) {
        if self.characteristic() != other.characteristic() {
            panic!(
                "mixed characteristics {} and {}",
                self.characteristic(),
                other.characteristic()
            );
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.partial_cmp(b),
            (Scalar::Mod { value: a, modulus: m }, Scalar::Mod { value: b, modulus: n }) if m == n => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

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

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

fn bigint_to_u64(v: &BigInt) -> u64 {
    let (_, digits) = v.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse_scalar("4/6").unwrap();
        assert_eq!(a.to_string(), "2/3");
        let b = q.parse_scalar("-3/-1");
        assert!(b.is_err());
        let c = q.parse_scalar("3/-1");
        assert!(c.is_err());
        assert_eq!(q.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let half = f.parse_scalar("1/2").unwrap();
        assert_eq!(half, Scalar::Mod { value: 4, modulus: 7 });
        assert!((&half * &f.from_i64(2)).is_one());
        assert_eq!(f.from_i64(-1).to_string(), "6");
        assert_eq!((-f.zero()).to_string(), "0");
        assert_eq!(f.from_i64(3).inv().unwrap(), f.from_i64(5));
    }

    #[test]
    fn rejects_composite_modulus_and_bad_denominator() {
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
        let f = Field::prime(5).unwrap();
        assert!(matches!(
            f.parse_scalar("1/10"),
            Err(FieldError::DenominatorVanishes(_, 5))
        ));
    }

    #[test]
    fn check_detects_mixed_characteristic() {
        let f = Field::prime(3).unwrap();
        assert!(f.check(&Field::Rational.one()).is_err());
        assert!(f.check(&f.one()).is_ok());
    }

    #[test]
    #[should_panic(expected = "mixed characteristics")]
    fn mixing_panics() {
        let _ = &Field::Rational.one() + &Field::prime(3).unwrap().one();
    }

    #[test]
    fn powers() {
        let q = Field::Rational;
        let two = q.from_i64(2);
        assert_eq!(two.pow(10), q.from_i64(1024));
        assert_eq!(two.pow(-2), q.parse_scalar("1/4").unwrap());
        assert!(two.pow(0).is_one());
    }
}
