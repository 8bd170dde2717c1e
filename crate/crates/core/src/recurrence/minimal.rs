use num_traits::{One, Zero};

use super::{LinearRecurrence, Sequence};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Berlekamp–Massey over Q. Returns the connection polynomial
/// `[1, c_1, ..., c_L]` with `s_n + c_1 s_{n-1} + ... + c_L s_{n-L} = 0`.
fn berlekamp_massey(s: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = Rational::one();
    for n in 0..s.len() {
        let mut disc = s[n].clone();
        for i in 1..=l {
            disc += &c[i] * &s[n - i];
        }
        if disc.is_zero() {
            m += 1;
            continue;
        }
        let coef = &disc / &bd;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            bd = disc;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, Rational::zero());
    c
}

/// The minimal-order recurrence generating the same two-sided sequence.
pub fn minimalize(rec: &LinearRecurrence) -> Result<LinearRecurrence> {
    let d = rec.order() as i64;
    let mut seq: Sequence = rec.sequence();
    let check = seq.range(-2 * d, 4 * d);
    if check.iter().all(|v| v.is_zero()) {
        return Err(Error::Domain("the zero sequence has no recurrence".into()));
    }
    for start in [0, -d, -2 * d] {
        let window = seq.range(start, start + 2 * d - 1);
        let conn = berlekamp_massey(&window);
        let l = conn.len() - 1;
        if l == 0 || conn[l].is_zero() {
            continue;
        }
        let coeffs: Vec<Rational> = conn[1..].iter().map(|c| -c).collect();
        let initial = seq.range(0, l as i64 - 1);
        let candidate = LinearRecurrence::new(coeffs, initial)?;
        let regenerated = candidate.sequence().range(-2 * d, 4 * d);
        if regenerated == check {
            return Ok(candidate);
        }
    }
    Err(Error::Domain(
        "could not certify a minimal recurrence with nonzero a_0".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::poly::Polynomial;

    #[test]
    fn drops_spurious_factor() {
        // companion (X^2 - X - 1)(X - 2) = X^3 - 3X^2 + X + 2
        let r = LinearRecurrence::from_ints(&[3, -1, -2], &[0, 1, 1]).unwrap();
        let m = minimalize(&r).unwrap();
        assert_eq!(m, LinearRecurrence::fibonacci());
        assert!(r.companion().is_divisible_by(&m.companion()));
    }

    #[test]
    fn fibonacci_is_minimal() {
        let f = LinearRecurrence::fibonacci();
        assert_eq!(minimalize(&f).unwrap(), f);
    }

    #[test]
    fn zero_sequence_errors() {
        let r = LinearRecurrence::from_ints(&[1, 1], &[0, 0]).unwrap();
        assert!(matches!(minimalize(&r), Err(Error::Domain(_))));
    }

    #[test]
    fn geometric_sequence() {
        // f_n = 2^n inside an order-3 recurrence with companion (X-2)(X^2+1)
        let r = LinearRecurrence::from_ints(&[2, -1, 2], &[1, 2, 4]).unwrap();
        let m = minimalize(&r).unwrap();
        assert_eq!(m.companion(), Polynomial::from_ints(&[-2, 1]));
        assert_eq!(m.initial(), &[rat(1)]);
    }

    #[test]
    fn idempotent() {
        let r = LinearRecurrence::from_ints(&[0, 1, 0, 1], &[1, 2, 3, 5]).unwrap();
        let m = minimalize(&r).unwrap();
        assert_eq!(minimalize(&m).unwrap(), m);
    }
}
