use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{minimalize, LinearRecurrence};
use crate::error::Result;
use crate::exactnum::{self, rat, ratio, Rational};
use crate::poly::{
    complex_roots, cyclotomic, cyclotomic_factors, product_polynomial, ratio_polynomial,
    Polynomial, DEFAULT_ROOT_TOL,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricInfo {
    #[serde(rename = "M")]
    pub m: u64,
}

/// `f_n = R·(n - gamma)·N^{K n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalInfo {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(with = "exactnum::serde_rational")]
    pub gamma: Rational,
    #[serde(rename = "R", with = "exactnum::serde_rational")]
    pub r: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub minimal_order: usize,
    pub is_simple: bool,
    pub is_degenerate: bool,
    pub is_unitary: bool,
    pub symmetric: Option<SymmetricInfo>,
    pub exceptional: Option<ExceptionalInfo>,
    /// Integral coefficients and initial values with `|a_0| = 1`, which
    /// keeps every term integral in both directions.
    pub integer_defined: bool,
    /// `f_{-d}, ..., f_{3d}` are all integers.
    pub integer_window_verified: bool,
}

fn is_simple(p: &Polynomial) -> bool {
    p.gcd(&p.derivative()).map(|g| g.is_constant()).unwrap_or(false)
}

fn is_unitary(p: &Polynomial) -> bool {
    !cyclotomic_factors(p).0.is_empty()
}

/// Some ratio of distinct roots is a root of unity.
fn is_degenerate(p: &Polynomial) -> Result<bool> {
    let s = p.squarefree_part().monic();
    let d = s.degree();
    if d < 2 {
        return Ok(false);
    }
    let r = ratio_polynomial(&s)?;
    let diag = Polynomial::from_ints(&[-1, 1]).pow(d as u32);
    let off = r.exact_div(&diag).expect("(X-1)^d divides the ratio polynomial");
    Ok(!cyclotomic_factors(&off).0.is_empty())
}

/// Simple, degenerate, unitary and integrality flags of `rec` as given.
pub fn classify_roots(rec: &LinearRecurrence) -> Result<StructureReport> {
    let p = rec.companion();
    let d = rec.order() as i64;
    let integer_defined = rec.is_integral() && rec.a(0).abs().is_one();
    let integer_window_verified = rec
        .sequence()
        .range(-d, 3 * d)
        .iter()
        .all(|v| v.is_integer());
    Ok(StructureReport {
        minimal_order: rec.order(),
        is_simple: is_simple(&p),
        is_degenerate: is_degenerate(&p)?,
        is_unitary: is_unitary(&p),
        symmetric: None,
        exceptional: None,
        integer_defined,
        integer_window_verified,
    })
}

fn root_order(z: Complex64, orders: &[u64]) -> Option<u64> {
    orders
        .iter()
        .copied()
        .map(|m| (m, (z.powu(m as u32) - Complex64::new(1.0, 0.0)).norm()))
        .filter(|&(_, err)| err < 1e-6)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(m, _)| m)
}

/// Pairing of the roots into pairs whose products are `M`-th roots of unity.
/// Decided for order 2 exactly and for order 4 by matching numeric pair
/// products against the exact cyclotomic factors of the product polynomial.
/// Odd orders cannot pair up; orders above 4 are not determined.
pub fn detect_symmetric(rec: &LinearRecurrence) -> Option<SymmetricInfo> {
    let p = rec.companion();
    if !is_simple(&p) || is_degenerate(&p).unwrap_or(true) {
        return None;
    }
    match rec.order() {
        2 => {
            let a0 = rec.a(0);
            if *a0 == rat(-1) {
                Some(SymmetricInfo { m: 1 })
            } else if *a0 == rat(1) {
                Some(SymmetricInfo { m: 2 })
            } else {
                None
            }
        }
        4 => {
            let q = product_polynomial(&p).ok()?;
            let orders: Vec<u64> = cyclotomic_factors(&q).0.iter().map(|&(m, _)| m).collect();
            if orders.is_empty() {
                return None;
            }
            let roots = complex_roots(&p, DEFAULT_ROOT_TOL).ok()?;
            let pairings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
            pairings
                .iter()
                .filter_map(|pairs| {
                    let mut m = 1u64;
                    for &(i, j) in pairs {
                        let o = root_order(roots[i] * roots[j], &orders)?;
                        debug_assert!(cyclotomic(o).eval_complex(roots[i] * roots[j]).norm() < 1e-6);
                        m = num_integer::lcm(m, o);
                    }
                    Some(m)
                })
                .min()
                .map(|m| SymmetricInfo { m })
        }
        _ => None,
    }
}

/// Binary rational double-root case: companion `(X-2)^2` or `(X-1/2)^2`.
pub fn detect_exceptional(rec: &LinearRecurrence) -> Option<ExceptionalInfo> {
    if rec.order() != 2 {
        return None;
    }
    let (k, lambda) = if rec.coeffs() == [rat(4), rat(-4)] {
        (1, rat(2))
    } else if rec.coeffs() == [rat(1), ratio(-1, 4)] {
        (-1, ratio(1, 2))
    } else {
        return None;
    };
    let c1 = rec.initial()[0].clone();
    let c2 = &rec.initial()[1] / &lambda - &c1;
    if c2.is_zero() {
        return None;
    }
    Some(ExceptionalInfo {
        n: 2,
        k,
        gamma: -(&c1 / &c2),
        r: c2,
    })
}

/// Full report: minimal order, root flags, symmetric and exceptional forms.
pub fn structure_report(rec: &LinearRecurrence) -> Result<StructureReport> {
    let m = minimalize(rec)?;
    let mut report = classify_roots(&m)?;
    report.symmetric = detect_symmetric(&m);
    report.exceptional = detect_exceptional(&m);
    if report.exceptional.is_some() {
        report.symmetric = None;
    }
    Ok(report)
}
