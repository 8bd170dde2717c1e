use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ap_engine::power_equation_search;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::trinomial::{
    factor_trinomial, is_schinzel_exception, plus2_noncyclotomic, schinzel_exception_pair,
    stated_exception_pair, TrinomialFactorization, TrinomialVariant,
};

/// Smallest bound that still covers the cubic table rows.
pub const MIN_LEMMA_BOUND: i64 = 3;

fn check_bound(bound: i64) -> Result<()> {
    if bound < MIN_LEMMA_BOUND {
        return Err(Error::Domain(format!(
            "lemma degree bound must be at least {MIN_LEMMA_BOUND}, got {bound}"
        )));
    }
    Ok(())
}

fn sweep(variant: TrinomialVariant, bound: i64) -> Result<Vec<TrinomialFactorization>> {
    let pairs: Vec<(i64, i64)> = (2..=bound).flat_map(|n| (1..n).map(move |m| (n, m))).collect();
    pairs
        .par_iter()
        .map(|&(n, m)| factor_trinomial(variant, n, m, bound))
        .collect()
}

/// Exceptional pair of the Schinzel scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionCheck {
    pub n: i64,
    pub m: i64,
    pub factors: Vec<Polynomial>,
    /// The closed-form pair multiplies back to the non-cyclotomic part.
    pub computed_pair_ok: bool,
    /// The pair as printed multiplies back to the non-cyclotomic part.
    pub stated_pair_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchinzelScan {
    pub bound: i64,
    pub checked: usize,
    /// `n = 2m`, where the trinomial is `(X^m - 1)^2`.
    pub trivial: Vec<[i64; 2]>,
    /// Pairs whose non-cyclotomic part is not a certified single irreducible
    /// factor, excluding the trivial and exceptional ones.
    pub unexpected: Vec<[i64; 2]>,
    pub exceptions: Vec<ExceptionCheck>,
    pub all_certified: bool,
    pub exceptions_ok: bool,
    pub stated_pairs_ok: bool,
    pub passed: bool,
}

/// `X^n - 2X^m + 1` for `0 < m < n <= bound`.
pub fn schinzel_scan(bound: i64) -> Result<SchinzelScan> {
    check_bound(bound)?;
    let results = sweep(TrinomialVariant::MeanMid, bound)?;
    let mut trivial = Vec::new();
    let mut unexpected = Vec::new();
    let mut exceptions = Vec::new();
    for f in &results {
        let (n, m) = (f.input.a, f.input.b);
        let count = f.noncyclotomic_factors.len();
        if n == 2 * m {
            if count != 0 {
                unexpected.push([n, m]);
            } else {
                trivial.push([n, m]);
            }
        } else if is_schinzel_exception(n, m) {
            let rest: Polynomial = f.noncyclotomic_factors.iter().cloned().product();
            let k = (n / 7) as usize;
            let mul = |p: Option<[Polynomial; 2]>| p.is_some_and(|[x, y]| &x * &y == rest);
            exceptions.push(ExceptionCheck {
                n,
                m,
                factors: f.noncyclotomic_factors.clone(),
                computed_pair_ok: count == 2 && mul(schinzel_exception_pair(k, m as usize)),
                stated_pair_ok: mul(stated_exception_pair(k, m as usize)),
            });
        } else if count != 1 {
            unexpected.push([n, m]);
        }
    }
    let all_certified = results.iter().all(|f| f.certified);
    let exceptions_ok = exceptions.iter().all(|e| e.computed_pair_ok);
    let stated_pairs_ok = exceptions.iter().all(|e| e.stated_pair_ok);
    let passed = all_certified && unexpected.is_empty() && exceptions_ok && stated_pairs_ok;
    Ok(SchinzelScan {
        bound,
        checked: results.len(),
        trivial,
        unexpected,
        exceptions,
        all_certified,
        exceptions_ok,
        stated_pairs_ok,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plus2Scan {
    pub bound: i64,
    pub checked: usize,
    /// Pairs whose non-cyclotomic part is not a certified single irreducible.
    pub failures: Vec<[i64; 2]>,
    pub passed: bool,
}

/// `X^n + X^m - 2` for `0 < m < n <= bound`.
pub fn plus2_scan(bound: i64) -> Result<Plus2Scan> {
    check_bound(bound)?;
    let results = sweep(TrinomialVariant::MeanLow, bound)?;
    let mut failures = Vec::new();
    for f in &results {
        let (n, m) = (f.input.a, f.input.b);
        let single = f.certified && f.noncyclotomic_factors.len() == 1;
        let consistent = single && {
            let p = plus2_noncyclotomic(n, m)?;
            p.monic() == f.noncyclotomic_factors[0].monic()
        };
        if !consistent {
            failures.push([n, m]);
        }
    }
    Ok(Plus2Scan {
        bound,
        checked: results.len(),
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerEquationReport {
    pub bound: u64,
    pub solutions: Vec<(u64, u64)>,
    pub passed: bool,
}

/// `a^a = (2b)^b` has no solutions with `a, b <= bound`.
pub fn power_equation_check(bound: u64) -> PowerEquationReport {
    let solutions = power_equation_search(bound);
    PowerEquationReport {
        bound,
        passed: solutions.is_empty(),
        solutions,
    }
}
