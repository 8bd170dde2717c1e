use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::LinearRecurrence;
use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadField, QuadraticElement, Rational};

/// `f_n = c1·α1^n + c2·α2^n` over Q(√2) or Q(√5).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadClosedForm {
    pub alpha1: QuadraticElement,
    pub alpha2: QuadraticElement,
    pub c1: QuadraticElement,
    pub c2: QuadraticElement,
}

impl QuadClosedForm {
    pub fn eval_quad(&self, n: i64) -> QuadraticElement {
        let t1 = &self.c1 * &self.alpha1.pow(n).expect("alpha1 is a unit of the field");
        let t2 = &self.c2 * &self.alpha2.pow(n).expect("alpha2 is a unit of the field");
        &t1 + &t2
    }

    /// Exact `f_n`. The irrational parts cancel for rational sequences.
    pub fn eval(&self, n: i64) -> Rational {
        let v = self.eval_quad(n);
        debug_assert!(v.is_rational());
        v.a
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Binet-style closed form of a binary recurrence whose companion splits
/// over Q(√5) or Q(√2).
pub fn quad_closed_form(rec: &LinearRecurrence) -> Result<QuadClosedForm> {
    if rec.order() != 2 {
        return Err(Error::Precondition("closed form needs order 2".into()));
    }
    let a1 = rec.a(1).clone();
    let a0 = rec.a(0).clone();
    let disc = &a1 * &a1 + rat(4) * &a0;
    if disc.is_zero() {
        return Err(Error::Precondition("double root".into()));
    }
    let field_root = [QuadField::Sqrt5, QuadField::Sqrt2]
        .into_iter()
        .find_map(|f| {
            let q = &disc / Rational::from_integer(BigInt::from(f.radicand()));
            rational_sqrt(&q).map(|r| (f, r))
        });
    let Some((field, r)) = field_root else {
        return Err(Error::UnsupportedField(format!(
            "discriminant {disc} is not in Q(sqrt 5) or Q(sqrt 2)"
        )));
    };
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let alpha1 = QuadraticElement::new(&a1 * &half, &r * &half, field);
    let alpha2 = alpha1.conj();
    let f0 = QuadraticElement::from_rational(rec.initial()[0].clone(), field);
    let f1 = QuadraticElement::from_rational(rec.initial()[1].clone(), field);
    let c1 = (&f1 - &(&f0 * &alpha2)).checked_div(&(&alpha1 - &alpha2))?;
    let c2 = &f0 - &c1;
    Ok(QuadClosedForm {
        alpha1,
        alpha2,
        c1,
        c2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::recurrence::eval_at;

    #[test]
    fn binet() {
        let cf = quad_closed_form(&LinearRecurrence::fibonacci()).unwrap();
        assert_eq!(cf.eval(10), rat(55));
        assert_eq!(cf.eval(0), rat(0));
        assert_eq!(cf.eval(-7), rat(13));
        assert_eq!(cf.c1, QuadraticElement::new(rat(0), ratio(1, 5), QuadField::Sqrt5));
    }

    #[test]
    fn worked_example() {
        let r = LinearRecurrence::from_ints(&[4, 1], &[-3, 1]).unwrap();
        let cf = quad_closed_form(&r).unwrap();
        assert_eq!(cf.alpha1, QuadraticElement::new(rat(2), rat(1), QuadField::Sqrt5));
        assert_eq!(cf.eval(3), rat(5));
        for n in -10..=30 {
            assert_eq!(cf.eval(n), eval_at(&r, n));
        }
    }

    #[test]
    fn sqrt_two_field() {
        // Pell numbers: companion X^2 - 2X - 1, discriminant 8
        let r = LinearRecurrence::from_ints(&[2, 1], &[0, 1]).unwrap();
        let cf = quad_closed_form(&r).unwrap();
        assert_eq!(cf.alpha1.d, QuadField::Sqrt2);
        for n in -10..=30 {
            assert_eq!(cf.eval(n), eval_at(&r, n));
        }
    }

    #[test]
    fn unsupported() {
        let r = LinearRecurrence::from_ints(&[1, 2], &[0, 1]).unwrap();
        assert!(matches!(quad_closed_form(&r), Err(Error::UnsupportedField(_))));
        let r = LinearRecurrence::from_ints(&[1, 1], &[0, 1]).unwrap();
        assert!(quad_closed_form(&r).is_ok());
        let r = LinearRecurrence::from_ints(&[4, -4], &[0, 1]).unwrap();
        assert!(matches!(quad_closed_form(&r), Err(Error::Precondition(_))));
    }
}
