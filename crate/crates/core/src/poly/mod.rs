//! Dense univariate polynomials over the rationals.

mod cyclotomic;
mod factor;
mod resultant;
mod roots;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};

pub use cyclotomic::{cyclotomic, cyclotomic_factors, cyclotomic_part, euler_phi};
pub use factor::{integer_factor_search, integer_factors_upto, FactorSearch};
pub use resultant::{product_polynomial, ratio_polynomial};
pub use roots::{complex_roots, DEFAULT_ROOT_TOL};
pub use text::parse_polynomial;

/// Coefficients in ascending order; the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Repr", into = "Repr")]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    #[serde(with = "exactnum::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl From<Repr> for Polynomial {
    fn from(r: Repr) -> Self {
        Polynomial::new(r.coeffs)
    }
}

impl From<Polynomial> for Repr {
    fn from(p: Polynomial) -> Self {
        Repr { coeffs: p.coeffs }
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Polynomial::new(c.iter().map(|&v| exactnum::rat(v)).collect())
    }

    pub fn from_bigints(c: Vec<BigInt>) -> Self {
        Polynomial::new(c.into_iter().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Polynomial::new(v)
    }

    /// `X^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[0] = -Rational::one();
        v[k] += Rational::one();
        Polynomial::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + exactnum::to_f64(c);
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * exactnum::rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(X^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        if k == 0 {
            return Polynomial::constant(self.coeffs.iter().sum());
        }
        let mut v = vec![Rational::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Polynomial::new(v)
    }

    /// `p(c·X)`.
    pub fn scale_argument(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pw);
            pw *= c;
        }
        Polynomial::new(v)
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial::new(v)
    }

    /// Splits off the largest power of `X`: returns `(k, p / X^k)`.
    pub fn strip_x_powers(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Polynomial::new(self.coeffs[k..].to_vec()))
    }

    pub fn divrem(&self, den: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = den.degree();
        if self.coeffs.len() < den.coeffs.len() {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let inv_lead = den.lead().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv_lead;
            if !c.is_zero() {
                for (j, dc) in den.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact quotient if `den` divides `self`.
    pub fn exact_div(&self, den: &Polynomial) -> Option<Polynomial> {
        match self.divrem(den) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn is_divisible_by(&self, den: &Polynomial) -> bool {
        self.exact_div(den).is_some()
    }

    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::Domain("gcd of two zero polynomials".into()));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn reverse(&self) -> Result<Polynomial> {
        if self.coeff(0).is_zero() {
            return Err(Error::Precondition(
                "reverse needs a nonzero constant term".into(),
            ));
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Ok(Polynomial::new(v))
    }

    /// `p / gcd(p, p')`, carrying the leading coefficient of `p`.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree() < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative()).expect("nonzero");
        self.exact_div(&g).expect("gcd divides")
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Integer multiple with coprime coefficients and positive leading term.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Polynomial::from_bigints(ints.into_iter().map(|c| c / &g).collect())
    }

    /// Ordering used for deterministic factor lists: degree, then
    /// coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

pub fn poly_divrem(num: &Polynomial, den: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    num.divrem(den)
}

pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.gcd(q)
}

pub fn poly_reverse(p: &Polynomial) -> Result<Polynomial> {
    p.reverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = poly_divrem(&p(&[1, 0, -2, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[-1, -1, 1]), Polynomial::zero()));
        let (q, r) = poly_divrem(&p(&[1, -2, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[-1, 1, 1]), Polynomial::zero()));
        let (q, r) = poly_divrem(&p(&[1, 0, 1]), &Polynomial::x()).unwrap();
        assert_eq!((q, r), (Polynomial::x(), Polynomial::one()));
        assert_eq!(poly_divrem(&p(&[1]), &Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 0, 0, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[-1, -1, 1]), &p(&[-1, 2])).unwrap(), Polynomial::one());
        assert_eq!(poly_gcd(&p(&[1, -2, 1]), &p(&[-1, 0, 1])).unwrap(), p(&[-1, 1]));
        assert!(matches!(
            poly_gcd(&Polynomial::zero(), &Polynomial::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(poly_reverse(&p(&[-1, 0, -1, 2])).unwrap(), p(&[2, -1, 0, -1]));
        assert_eq!(poly_reverse(&p(&[-1, -1, 1])).unwrap(), p(&[1, -1, -1]));
        assert_eq!(poly_reverse(&p(&[1, 1])).unwrap(), p(&[1, 1]));
        assert!(matches!(poly_reverse(&p(&[0, 1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let q = Polynomial::new(vec![ratio(-1, 2), rat(0), ratio(-3, 4)]);
        assert_eq!(q.primitive_part(), p(&[2, 0, 3]));
        assert_eq!(p(&[4, 6]).primitive_part(), p(&[2, 3]));
    }

    #[test]
    fn squarefree() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[1, 0, 1]);
        assert_eq!(f.squarefree_part().monic(), p(&[-1, 1, -1, 1]));
    }

    #[test]
    fn json_shape() {
        let f = p(&[-1, 0, -1, 2]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"coeffs":["-1","0","-1","2"]}"#);
        assert_eq!(serde_json::from_str::<Polynomial>(&s).unwrap(), f);
        let padded: Polynomial = serde_json::from_str(r#"{"coeffs":["1","0"]}"#).unwrap();
        assert_eq!(padded, Polynomial::one());
    }
}
