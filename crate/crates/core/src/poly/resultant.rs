use num_traits::{One, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};

/// Determinant of a square rational matrix by Gaussian elimination.
fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            let (top, rest) = m.split_at_mut(r);
            for (x, y) in rest[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Resultant of two univariate polynomials via the Sylvester matrix.
pub(crate) fn resultant(a: &Polynomial, b: &Polynomial) -> Rational {
    let (m, n) = (a.degree(), b.degree());
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Newton interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> Polynomial {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = Polynomial::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Polynomial::new(vec![-xs[i].clone(), Rational::one()]);
        acc = &(&acc * &lin) + &Polynomial::constant(dd[i].clone());
    }
    acc
}

fn check(p: &Polynomial) -> Result<usize> {
    if p.degree() == 0 {
        return Err(Error::Precondition("polynomial must have degree >= 1".into()));
    }
    if p.coeff(0).is_zero() {
        return Err(Error::Precondition("polynomial must satisfy p(0) != 0".into()));
    }
    Ok(p.degree())
}

// Evaluates `x ↦ Res_Y(p(Y), q_x(Y))` at x = 1..=d²+1 and interpolates.
fn resultant_in_x(p: &Polynomial, d: usize, q_at: impl Fn(&Rational) -> Polynomial) -> Polynomial {
    let xs: Vec<Rational> = (1..=(d * d + 1) as i64).map(rat).collect();
    let ys: Vec<Rational> = xs.iter().map(|x| resultant(p, &q_at(x))).collect();
    interpolate(&xs, &ys).monic()
}

/// Monic polynomial of degree `d²` whose roots are all ratios `α_i/α_j` of
/// roots of the squarefree `p`.
pub fn ratio_polynomial(p: &Polynomial) -> Result<Polynomial> {
    let d = check(p)?;
    Ok(resultant_in_x(p, d, |x| p.scale_argument(x)))
}

/// Monic polynomial of degree `d²` whose roots are all products `α_i·α_j`.
pub fn product_polynomial(p: &Polynomial) -> Result<Polynomial> {
    let d = check(p)?;
    Ok(resultant_in_x(p, d, |x| {
        // Y^d p(x/Y) = Σ c_i x^i Y^{d-i}
        let mut v = vec![Rational::zero(); d + 1];
        let mut pw = Rational::one();
        for (i, c) in p.coeffs().iter().enumerate() {
            v[d - i] = c * &pw;
            pw *= x;
        }
        Polynomial::new(v)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn from_roots(roots: &[Rational]) -> Polynomial {
        roots
            .iter()
            .map(|r| Polynomial::new(vec![-r.clone(), Rational::one()]))
            .product()
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(X - 2, X - 5) = 2 - 5
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-5, 1])), rat(-3));
        // Res(X^2 - 1, X - 3) = (1 - 3)(-1 - 3)
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-3, 1])), rat(8));
    }

    #[test]
    fn linear_inputs() {
        assert_eq!(ratio_polynomial(&p(&[-2, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(product_polynomial(&p(&[-2, 1])).unwrap(), p(&[-4, 1]));
    }

    #[test]
    fn rational_roots_match_expansion() {
        let roots = [rat(2), rat(-3), ratio(1, 2)];
        let f = from_roots(&roots);
        let ratios: Vec<Rational> = roots
            .iter()
            .flat_map(|a| roots.iter().map(move |b| a / b))
            .collect();
        let products: Vec<Rational> = roots
            .iter()
            .flat_map(|a| roots.iter().map(move |b| a * b))
            .collect();
        assert_eq!(ratio_polynomial(&f).unwrap(), from_roots(&ratios));
        assert_eq!(product_polynomial(&f).unwrap(), from_roots(&products));
    }

    #[test]
    fn plus_minus_two() {
        let r = ratio_polynomial(&p(&[-4, 0, 1])).unwrap();
        assert_eq!(r, &p(&[-1, 1]).pow(2) * &p(&[1, 1]).pow(2));
    }

    #[test]
    fn golden_ratio_products() {
        let q = product_polynomial(&p(&[-1, -1, 1])).unwrap();
        assert_eq!(q.degree(), 4);
        assert!(q.is_divisible_by(&p(&[1, 1]).pow(2)));
        let q = product_polynomial(&p(&[-1, -4, 1])).unwrap();
        assert!(q.is_divisible_by(&p(&[1, 1]).pow(2)));
    }

    #[test]
    fn rejects_zero_constant() {
        assert!(matches!(ratio_polynomial(&p(&[0, 1])), Err(Error::Precondition(_))));
    }
}
