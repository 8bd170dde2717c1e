use num_complex::Complex64;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::exactnum::to_f64;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 500;

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn scale_bound(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut acc = 0.0;
    for &a in c.iter().rev() {
        acc = acc * r + a.abs();
    }
    acc
}

/// All `deg p` complex roots by Aberth–Ehrlich iteration, sorted by real
/// then imaginary part. A root `z` is accepted once
/// `|p(z)| <= tol · Σ|c_i||z|^i`.
pub fn complex_roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::Precondition("root finding needs degree >= 1".into()));
    }
    let lead = to_f64(&p.lead());
    let c: Vec<f64> = p.coeffs().iter().map(|x| to_f64(x) / lead).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric {
            message: "coefficients out of floating-point range".into(),
            best: Vec::new(),
        });
    }

    // Initial points on a circle sized by the geometric mean of the roots,
    // clamped by the Cauchy bound.
    let cauchy = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let geo = if c[0] != 0.0 {
        c[0].abs().powf(1.0 / n as f64)
    } else {
        1.0
    };
    let radius = geo.clamp(1e-3, cauchy);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let converged = |z: &[Complex64]| {
        z.iter().all(|&zi| {
            let (v, _) = eval_with_derivative(&c, zi);
            v.norm() <= tol * scale_bound(&c, zi)
        })
    };

    for _ in 0..MAX_ITERATIONS {
        if converged(&z) {
            let mut out: Vec<Complex64> = z
                .into_iter()
                .map(|w| {
                    let eps = 1e-14 * w.norm().max(1.0);
                    let snap = |x: f64| if x.abs() < eps { 0.0 } else { x };
                    Complex64::new(snap(w.re), snap(w.im))
                })
                .collect();
            out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            return Ok(out);
        }
        for i in 0..n {
            let (v, dv) = eval_with_derivative(&c, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
            } else {
                z[i] += Complex64::new(1e-8, 1e-8);
            }
        }
    }
    Err(Error::Numeric {
        message: format!("root finder did not converge in {MAX_ITERATIONS} iterations"),
        best: z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn golden_ratio() {
        let r = complex_roots(&p(&[-1, -1, 1]), DEFAULT_ROOT_TOL).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r[0].re - (1.0 - phi)).abs() < 1e-10 && r[0].im.abs() < 1e-10);
        assert!((r[1].re - phi).abs() < 1e-10 && r[1].im.abs() < 1e-10);
    }

    #[test]
    fn imaginary_unit() {
        let r = complex_roots(&p(&[1, 0, 1]), DEFAULT_ROOT_TOL).unwrap();
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((r[1] - Complex64::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn triple_root_clusters() {
        let r = complex_roots(&p(&[-1, 3, -3, 1]), DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(r.len(), 3);
        for z in r {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-3);
        }
    }

    #[test]
    fn constant_is_rejected() {
        assert!(matches!(complex_roots(&p(&[3]), 1e-12), Err(Error::Precondition(_))));
    }

    #[test]
    fn trinomial_roots_have_small_residuals() {
        let f = p(&[1, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let r = complex_roots(&f, DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(r.len(), 16);
        for z in r {
            assert!(f.eval_complex(z).norm() < 1e-9);
        }
    }
}
