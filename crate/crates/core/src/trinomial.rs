//! The three trinomial shapes behind shift families, and their
//! factorizations.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};
use crate::poly::{cyclotomic_part, integer_factor_search, Polynomial};

/// Default degree bound for certified lemma factorizations.
pub const DEFAULT_LEMMA_BOUND: i64 = 16;

/// Which index offset carries the middle term of the progression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TrinomialVariant {
    /// `2X^a - X^b - 1`
    MeanHigh,
    /// `X^a - 2X^b + 1`
    MeanMid,
    /// `X^a + X^b - 2`
    MeanLow,
}

impl TrinomialVariant {
    pub const ALL: [TrinomialVariant; 3] = [
        TrinomialVariant::MeanHigh,
        TrinomialVariant::MeanMid,
        TrinomialVariant::MeanLow,
    ];

    /// Coefficients of `X^a`, `X^b` and `1`.
    fn weights(self) -> (i64, i64, i64) {
        match self {
            TrinomialVariant::MeanHigh => (2, -1, -1),
            TrinomialVariant::MeanMid => (1, -2, 1),
            TrinomialVariant::MeanLow => (1, 1, -2),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            TrinomialVariant::MeanHigh => "high",
            TrinomialVariant::MeanMid => "mid",
            TrinomialVariant::MeanLow => "low",
        }
    }
}

impl fmt::Display for TrinomialVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for TrinomialVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "high" | "meanhigh" => Ok(TrinomialVariant::MeanHigh),
            "mid" | "meanmid" => Ok(TrinomialVariant::MeanMid),
            "low" | "meanlow" => Ok(TrinomialVariant::MeanLow),
            other => Err(Error::Parse(format!("unknown trinomial variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrinomialSpec {
    pub variant: TrinomialVariant,
    pub a: i64,
    pub b: i64,
}

/// Factorization of a trinomial into its cyclotomic cofactor and its
/// non-cyclotomic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrinomialFactorization {
    pub input: TrinomialSpec,
    #[serde(rename = "cofactor")]
    pub cyclotomic_cofactor: Polynomial,
    #[serde(rename = "factors")]
    pub noncyclotomic_factors: Vec<Polynomial>,
    #[serde(rename = "exception")]
    pub is_schinzel_exception: bool,
    /// Irreducibility of every listed factor is certified by a complete
    /// factor search. False means the factors are asserted by the lemma.
    pub certified: bool,
}

impl TrinomialFactorization {
    pub fn product(&self) -> Polynomial {
        &self.cyclotomic_cofactor * &self.noncyclotomic_factors.iter().cloned().product()
    }
}

fn check_indices(a: i64, b: i64) -> Result<()> {
    if b <= 0 || a <= b {
        return Err(Error::Domain(format!("need a > b > 0, got a={a}, b={b}")));
    }
    Ok(())
}

pub fn build_trinomial(variant: TrinomialVariant, a: i64, b: i64) -> Result<Polynomial> {
    check_indices(a, b)?;
    let (wa, wb, w0) = variant.weights();
    let mut c = vec![Rational::zero(); a as usize + 1];
    c[a as usize] = rat(wa);
    c[b as usize] = rat(wb);
    c[0] = rat(w0);
    Ok(Polynomial::new(c))
}

pub fn is_schinzel_exception(n: i64, m: i64) -> bool {
    n % 7 == 0 && (m * 7 == 2 * n || m * 7 == 5 * n)
}

fn sparse(terms: &[(i64, usize)]) -> Polynomial {
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut c = vec![Rational::zero(); deg + 1];
    for &(v, k) in terms {
        c[k] += rat(v);
    }
    Polynomial::new(c)
}

/// Closed-form factor pair of `(X^{7k} - 2X^m + 1)/(X^k - 1)` for `m = 2k`
/// or `m = 5k`, as exact multiplication confirms it.
pub fn schinzel_exception_pair(k: usize, m: usize) -> Option<[Polynomial; 2]> {
    if m == 2 * k {
        Some([
            sparse(&[(1, 3 * k), (1, 2 * k), (-1, 0)]),
            sparse(&[(1, 3 * k), (1, k), (1, 0)]),
        ])
    } else if m == 5 * k {
        Some([
            sparse(&[(1, 3 * k), (1, 2 * k), (1, 0)]),
            sparse(&[(1, 3 * k), (-1, k), (-1, 0)]),
        ])
    } else {
        None
    }
}

/// The factor pair as printed in the lemma statement, keyed the same way.
pub fn stated_exception_pair(k: usize, m: usize) -> Option<[Polynomial; 2]> {
    if m == 2 * k {
        Some([
            sparse(&[(1, 3 * k), (1, 2 * k), (1, 0)]),
            sparse(&[(1, 3 * k), (-1, k), (-1, 0)]),
        ])
    } else if m == 5 * k {
        Some([
            sparse(&[(1, 3 * k), (1, 2 * k), (-1, 0)]),
            sparse(&[(1, 3 * k), (1, k), (-1, 0)]),
        ])
    } else {
        None
    }
}

/// Factors any of the three trinomials. For `a <= bound` the non-cyclotomic
/// part is split completely and certified; above it the part is returned
/// as asserted by the lemmas.
pub fn factor_trinomial(
    variant: TrinomialVariant,
    a: i64,
    b: i64,
    bound: i64,
) -> Result<TrinomialFactorization> {
    let t = build_trinomial(variant, a, b)?;
    let (cofactor, rest) = cyclotomic_part(&t);
    let exception = variant == TrinomialVariant::MeanMid && is_schinzel_exception(a, b);
    let input = TrinomialSpec { variant, a, b };

    if rest.is_constant() {
        return Ok(TrinomialFactorization {
            input,
            cyclotomic_cofactor: &cofactor * &rest,
            noncyclotomic_factors: Vec::new(),
            is_schinzel_exception: exception,
            certified: true,
        });
    }

    let (factors, certified) = if a <= bound {
        let search = integer_factor_search(&rest, rest.degree())?;
        let mut fs = Vec::new();
        for (f, e) in &search.factors {
            fs.extend(std::iter::repeat_n(f.clone(), *e));
        }
        // The search works on the primitive part; put any unit back.
        let scale = rest.lead() / search.input.lead();
        if let Some(first) = fs.first_mut() {
            *first = first.scale(&scale);
        }
        (fs, search.complete())
    } else if exception {
        let k = (a / 7) as usize;
        let pair = schinzel_exception_pair(k, b as usize).expect("exception pattern");
        let ok = &pair[0] * &pair[1] == rest;
        if ok {
            (pair.to_vec(), false)
        } else {
            (vec![rest.clone()], false)
        }
    } else {
        (vec![rest.clone()], false)
    };

    Ok(TrinomialFactorization {
        input,
        cyclotomic_cofactor: cofactor,
        noncyclotomic_factors: factors,
        is_schinzel_exception: exception,
        certified,
    })
}

/// Factorization of `X^n - 2X^m + 1`.
pub fn schinzel_factorization(n: i64, m: i64) -> Result<TrinomialFactorization> {
    factor_trinomial(TrinomialVariant::MeanMid, n, m, DEFAULT_LEMMA_BOUND)
}

/// `(X^n + X^m - 2)/(X^gcd(n,m) - 1)` with any further cyclotomic content
/// removed.
pub fn plus2_noncyclotomic(n: i64, m: i64) -> Result<Polynomial> {
    let t = build_trinomial(TrinomialVariant::MeanLow, n, m)?;
    let g = num_integer::gcd(n, m) as usize;
    let q = t
        .exact_div(&Polynomial::x_pow_minus_one(g))
        .ok_or_else(|| Error::Construction("X^g - 1 does not divide the trinomial".into()))?;
    Ok(cyclotomic_part(&q).1)
}

/// All `(variant, a, b)` with `max_a >= a > b > 0` whose trinomial is
/// divisible by `p`.
pub fn trinomial_multiples(p: &Polynomial, max_a: i64) -> Result<Vec<TrinomialSpec>> {
    if p.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    if p.coeff(0).is_zero() {
        return Err(Error::Precondition("p(0) must be nonzero".into()));
    }
    let prim = p.primitive_part();
    if prim.is_constant() {
        return Err(Error::Precondition("constant polynomial".into()));
    }
    // X^k mod p for k = 0..=max_a
    let max_a = max_a.max(0) as usize;
    let mut residues = Vec::with_capacity(max_a + 1);
    let mut cur = Polynomial::one().divrem(&prim)?.1;
    for _ in 0..=max_a {
        residues.push(cur.clone());
        cur = cur.shift_up(1).divrem(&prim)?.1;
    }
    let mut out: Vec<TrinomialSpec> = (2..=max_a)
        .into_par_iter()
        .flat_map_iter(|a| {
            let residues = &residues;
            (1..a).flat_map(move |b| {
                TrinomialVariant::ALL.into_iter().filter_map(move |variant| {
                    let (wa, wb, w0) = variant.weights();
                    let r = &(&residues[a].scale(&rat(wa)) + &residues[b].scale(&rat(wb)))
                        + &residues[0].scale(&rat(w0));
                    r.is_zero().then_some(TrinomialSpec {
                        variant,
                        a: a as i64,
                        b: b as i64,
                    })
                })
            })
        })
        .collect();
    out.sort_by_key(|s| (s.a, s.b, s.variant));
    Ok(out)
}
