//! Exact scalars: arbitrary-precision rationals and elements of the real
//! quadratic fields Q(√2) and Q(√5).
//!
//! Rationals are `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is value equality.
//! Their text form is `"p/q"`, or `"p"` when the denominator is one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Nearest f64, saturating to ±inf for huge values.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

// Input side accepts either the string form or a plain JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    fn parse(self) -> Result<Rational> {
        match self {
            RationalText::Text(t) => parse_rational(&t),
            RationalText::Int(n) => Ok(rat(n)),
        }
    }
}

/// Serde adapter for a single rational as `"p/q"`.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RationalText::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals as `["p/q", ...]`.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<RationalText>::deserialize(d)?
            .into_iter()
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for a fixed-length array of rationals.
pub mod serde_rational_array {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(
        v: &[Rational; N],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        super::serde_rational_vec::serialize(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(
        d: D,
    ) -> std::result::Result<[Rational; N], D::Error> {
        let v = super::serde_rational_vec::deserialize(d)?;
        let len = v.len();
        v.try_into()
            .map_err(|_| serde::de::Error::invalid_length(len, &"a fixed number of rationals"))
    }
}

/// Serde adapter for an optional rational.
pub mod serde_rational_opt {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<RationalText>::deserialize(d)?
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// The two supported real quadratic fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum QuadField {
    Sqrt2,
    Sqrt5,
}

impl QuadField {
    pub fn radicand(self) -> u32 {
        match self {
            QuadField::Sqrt2 => 2,
            QuadField::Sqrt5 => 5,
        }
    }

    pub fn from_radicand(d: u32) -> Result<Self> {
        match d {
            2 => Ok(QuadField::Sqrt2),
            5 => Ok(QuadField::Sqrt5),
            other => Err(Error::UnsupportedField(format!("Q(sqrt {other})"))),
        }
    }
}

impl TryFrom<u32> for QuadField {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        QuadField::from_radicand(d)
    }
}

impl From<QuadField> for u32 {
    fn from(f: QuadField) -> u32 {
        f.radicand()
    }
}

/// `a + b·√d` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticElement {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
    pub d: QuadField,
}

impl QuadraticElement {
    pub fn new(a: Rational, b: Rational, d: QuadField) -> Self {
        QuadraticElement { a, b, d }
    }

    pub fn from_rational(a: Rational, d: QuadField) -> Self {
        QuadraticElement::new(a, Rational::zero(), d)
    }

    pub fn zero(d: QuadField) -> Self {
        Self::from_rational(Rational::zero(), d)
    }

    pub fn one(d: QuadField) -> Self {
        Self::from_rational(Rational::one(), d)
    }

    /// The generator √d.
    pub fn sqrt(d: QuadField) -> Self {
        QuadraticElement::new(Rational::zero(), Rational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if `b == 0`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn radicand(&self) -> Rational {
        rat(self.d.radicand() as i64)
    }

    pub fn conj(&self) -> Self {
        QuadraticElement::new(self.a.clone(), -&self.b, self.d)
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * self.radicand()
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadraticElement::new(&self.a * r, &self.b * r, self.d)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "cannot combine elements of Q(sqrt {}) and Q(sqrt {})",
                self.d.radicand(),
                other.d.radicand()
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(QuadraticElement::new(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(QuadraticElement::new(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * self.radicand();
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadraticElement::new(a, b, self.d))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Integer power by square-and-multiply; negative exponents go through `inv`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QuadraticElement::one(self.d);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * (self.d.radicand() as f64).sqrt()
    }
}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.radicand();
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b_abs = self.b.abs();
        let root = if b_abs.is_one() {
            format!("sqrt({d})")
        } else {
            format!("{b_abs}*sqrt({d})")
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{root}")
            } else {
                write!(f, "{root}")
            }
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {root}", self.a)
        }
    }
}

// Operator forms panic on mismatched fields; the `checked_*` methods and the
// `quad_*` functions below report it as an error instead.
impl Add for &QuadraticElement {
    type Output = QuadraticElement;
    fn add(self, rhs: &QuadraticElement) -> QuadraticElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for &QuadraticElement {
    type Output = QuadraticElement;
    fn sub(self, rhs: &QuadraticElement) -> QuadraticElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &QuadraticElement {
    type Output = QuadraticElement;
    fn mul(self, rhs: &QuadraticElement) -> QuadraticElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &QuadraticElement {
    type Output = QuadraticElement;
    fn neg(self) -> QuadraticElement {
        QuadraticElement::new(-&self.a, -&self.b, self.d)
    }
}

pub fn quad_mul(x: &QuadraticElement, y: &QuadraticElement) -> Result<QuadraticElement> {
    x.checked_mul(y)
}

pub fn quad_inv(x: &QuadraticElement) -> Result<QuadraticElement> {
    x.inv()
}

/// `(norm, trace)` of `x`.
pub fn quad_norm_trace(x: &QuadraticElement) -> (Rational, Rational) {
    (x.norm(), x.trace())
}
