use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::search::APSolution;
use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};
use crate::recurrence::{detect_symmetric, minimalize, ExceptionalInfo, LinearRecurrence};
use crate::trinomial::{trinomial_multiples, TrinomialSpec, TrinomialVariant};

/// An index map `t -> slope*t + offset`.
type Affine = (i64, i64);

/// Instances `(j, j+b, j+a)` of `f_{j+a} - 2 f_{j+b} + f_j = 0` and its
/// two siblings, one for every trinomial multiple of the companion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShiftFamily {
    pub variant: TrinomialVariant,
    pub a: i64,
    pub b: i64,
}

impl From<TrinomialSpec> for ShiftFamily {
    fn from(s: TrinomialSpec) -> Self {
        ShiftFamily {
            variant: s.variant,
            a: s.a,
            b: s.b,
        }
    }
}

impl ShiftFamily {
    /// `(mean, outer, outer)` as affine maps of `j`.
    fn pattern(&self) -> [Affine; 3] {
        let (a, b) = (self.a, self.b);
        match self.variant {
            TrinomialVariant::MeanMid => [(1, b), (1, 0), (1, a)],
            TrinomialVariant::MeanLow => [(1, 0), (1, a), (1, b)],
            TrinomialVariant::MeanHigh => [(1, a), (1, 0), (1, b)],
        }
    }
}

/// Which of the three symmetric index maps carries the mean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymmetricOrdering {
    MeanAtM,
    MeanAtN,
    MeanAtK,
}

impl SymmetricOrdering {
    pub const ALL: [SymmetricOrdering; 3] = [
        SymmetricOrdering::MeanAtM,
        SymmetricOrdering::MeanAtN,
        SymmetricOrdering::MeanAtK,
    ];
}

/// Indices `m = M t + a`, `n = M t + b`, `k = -M t + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetricFamily {
    #[serde(rename = "M")]
    pub m: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub ordering: SymmetricOrdering,
}

impl SymmetricFamily {
    fn pattern(&self) -> [Affine; 3] {
        let (im, in_, ik) = ((self.m, self.a), (self.m, self.b), (-self.m, self.c));
        match self.ordering {
            SymmetricOrdering::MeanAtM => [im, in_, ik],
            SymmetricOrdering::MeanAtN => [in_, im, ik],
            SymmetricOrdering::MeanAtK => [ik, im, in_],
        }
    }

    /// Representative with `a` in `[0, M)`, and `a < b` when the mean is at `k`.
    fn canonical(mut self) -> Self {
        if self.ordering == SymmetricOrdering::MeanAtK && self.a > self.b {
            std::mem::swap(&mut self.a, &mut self.b);
        }
        let shift = self.a.div_euclid(self.m);
        self.a -= shift * self.m;
        self.b -= shift * self.m;
        self.c += shift * self.m;
        self
    }
}

/// `f_n = R (n - gamma) 2^{K n}` with the index triple
/// `m = -K 2^{s - K gamma} + K s`, `n = m - K`, `k = -K 2^{s - K gamma} + gamma`,
/// valid for `s > K gamma + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExceptionalFamily {
    #[serde(rename = "K")]
    pub k: i64,
    pub gamma: i64,
    #[serde(rename = "R", with = "exactnum::serde_rational")]
    pub r: Rational,
}

impl ExceptionalFamily {
    pub fn new(k: i64, gamma: i64, r: Rational) -> Result<Self> {
        if k != 1 && k != -1 {
            return Err(Error::Domain(format!("K must be 1 or -1, got {k}")));
        }
        if r.is_zero() {
            return Err(Error::Domain("R must be nonzero".into()));
        }
        Ok(ExceptionalFamily { k, gamma, r })
    }

    /// Family of a detected exceptional recurrence, when `gamma` is an integer.
    pub fn from_info(info: &ExceptionalInfo) -> Option<Self> {
        if !info.gamma.is_integer() || info.n != 2 {
            return None;
        }
        let g = i64::try_from(info.gamma.to_integer()).ok()?;
        ExceptionalFamily::new(info.k, g, info.r.clone()).ok()
    }

    /// Parameters must exceed this.
    pub fn s_min(&self) -> i64 {
        self.k * self.gamma + 1
    }

    /// `(m, n, k)` for parameter `s`.
    pub fn indices(&self, s: i64) -> Result<(i64, i64, i64)> {
        if s <= self.s_min() {
            return Err(Error::Domain(format!(
                "s = {s} is outside the family range s > {}",
                self.s_min()
            )));
        }
        let overflow = || Error::Domain(format!("s = {s} overflows the index range"));
        let e = s - self.k * self.gamma;
        if e >= 62 {
            return Err(overflow());
        }
        let p = 1i64 << e;
        let m = (-self.k * p).checked_add(self.k * s).ok_or_else(overflow)?;
        let n = m - self.k;
        let kk = (-self.k * p).checked_add(self.gamma).ok_or_else(overflow)?;
        Ok((m, n, kk))
    }

    /// Closed-form `f_n`.
    pub fn value(&self, n: i64) -> Rational {
        let base = &self.r * Rational::from_integer(BigInt::from(n) - self.gamma);
        let e = self.k * n;
        let pow = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            base * Rational::from_integer(pow)
        } else {
            base / Rational::from_integer(pow)
        }
    }

    pub fn instance(&self, s: i64) -> Result<APSolution> {
        let (m, n, k) = self.indices(s)?;
        Ok(APSolution::new(n, m, k, self.value(n), self.value(m), self.value(k)))
    }
}

/// A declared family given by three affine index maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearFamily {
    pub label: String,
    pub mean: Affine,
    pub outer: [Affine; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum APFamily {
    Shift(ShiftFamily),
    Symmetric(SymmetricFamily),
    Exceptional(ExceptionalFamily),
    Linear(LinearFamily),
}

fn affine(p: Affine, t: i64) -> i64 {
    p.0 * t + p.1
}

fn fmt_affine(p: Affine, var: &str) -> String {
    let lin = match p.0 {
        0 => String::new(),
        1 => var.to_string(),
        -1 => format!("-{var}"),
        s => format!("{s}{var}"),
    };
    match (lin.is_empty(), p.1) {
        (true, o) => o.to_string(),
        (false, 0) => lin,
        (false, o) if o > 0 => format!("{lin}+{o}"),
        (false, o) => format!("{lin}{o}"),
    }
}

impl APFamily {
    fn pattern(&self) -> Option<[Affine; 3]> {
        match self {
            APFamily::Shift(f) => Some(f.pattern()),
            APFamily::Symmetric(f) => Some(f.pattern()),
            APFamily::Linear(f) => Some([f.mean, f.outer[0], f.outer[1]]),
            APFamily::Exceptional(_) => None,
        }
    }

    /// `(mean, outer, outer)` at parameter `t`.
    pub fn indices(&self, t: i64) -> Result<(i64, i64, i64)> {
        match self {
            APFamily::Exceptional(f) => f.indices(t).map(|(m, n, k)| (n, m, k)),
            _ => {
                let [p, q, r] = self.pattern().expect("affine family");
                Ok((affine(p, t), affine(q, t), affine(r, t)))
            }
        }
    }

    /// Whether `sol` is an instance of this family.
    pub fn contains(&self, sol: &APSolution) -> bool {
        let same = |(n, m, k): (i64, i64, i64)| {
            n == sol.mean && [m.min(k), m.max(k)] == sol.outer
        };
        match self {
            APFamily::Exceptional(f) => {
                let bound = sol.mean.abs().max(sol.outer[0].abs()).max(sol.outer[1].abs());
                (f.s_min() + 1..)
                    .map_while(|s| f.indices(s).ok())
                    .take_while(|&(m, _, k)| m.abs().min(k.abs()) <= bound.saturating_mul(2) + 2)
                    .any(|(m, n, k)| same((n, m, k)))
            }
            _ => {
                let pat = self.pattern().expect("affine family");
                let idx = [sol.mean, sol.outer[0], sol.outer[1]];
                pat.iter()
                    .filter(|p| p.0 != 0)
                    .flat_map(|p| idx.iter().filter_map(move |&i| ((i - p.1) % p.0 == 0).then_some((i - p.1) / p.0)))
                    .any(|t| same((affine(pat[0], t), affine(pat[1], t), affine(pat[2], t))))
            }
        }
    }
}

impl fmt::Display for APFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            APFamily::Exceptional(e) => write!(
                f,
                "exceptional K={} gamma={} R={} (s > {})",
                e.k,
                e.gamma,
                e.r,
                e.s_min()
            ),
            _ => {
                let var = if matches!(self, APFamily::Shift(_)) { "n" } else { "t" };
                let [p, q, r] = self.pattern().expect("affine family");
                let name = match self {
                    APFamily::Shift(s) => format!("shift {} a={} b={}", s.variant, s.a, s.b),
                    APFamily::Symmetric(s) => format!("symmetric M={} {:?}", s.m, s.ordering),
                    APFamily::Linear(l) => l.label.clone(),
                    APFamily::Exceptional(_) => unreachable!(),
                };
                write!(
                    f,
                    "{name}: (f_{{{}}}, f_{{{}}}, f_{{{}}})",
                    fmt_affine(q, var),
                    fmt_affine(p, var),
                    fmt_affine(r, var)
                )
            }
        }
    }
}

/// One parameter value at which the family identity was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFailure {
    pub parameter: i64,
    pub instance: APSolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: APFamily,
    pub range: [i64; 2],
    pub checked: usize,
    pub failures: Vec<FamilyFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn verify_with(
    family: APFamily,
    lo: i64,
    hi: i64,
    mut value: impl FnMut(i64) -> Rational,
) -> Result<VerificationReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in lo..=hi {
        let (n, m, k) = family.indices(t)?;
        let inst = APSolution::new(n, m, k, value(n), value(m), value(k));
        checked += 1;
        if !inst.holds() {
            failures.push(FamilyFailure {
                parameter: t,
                instance: inst,
            });
        }
    }
    Ok(VerificationReport {
        family,
        range: [lo, hi],
        checked,
        failures,
    })
}

/// Checks `f_{j+a} - 2f_{j+b} + f_j = 0` (or its sibling) for `j` in `[lo, hi]`.
pub fn verify_shift_family(
    rec: &LinearRecurrence,
    family: ShiftFamily,
    lo: i64,
    hi: i64,
) -> Result<VerificationReport> {
    let mut seq = rec.sequence();
    verify_with(APFamily::Shift(family), lo, hi, |n| seq.get(n))
}

pub fn verify_symmetric_family(
    rec: &LinearRecurrence,
    family: SymmetricFamily,
    lo: i64,
    hi: i64,
) -> Result<VerificationReport> {
    let mut seq = rec.sequence();
    verify_with(APFamily::Symmetric(family), lo, hi, |n| seq.get(n))
}

/// Checks the closed-form identity for every `s` in `[lo, hi]`; fails with a
/// domain error if the range reaches `s <= K gamma + 1`.
pub fn verify_exceptional_family(
    family: &ExceptionalFamily,
    lo: i64,
    hi: i64,
) -> Result<VerificationReport> {
    if lo <= hi {
        family.indices(lo)?;
    }
    let f = family.clone();
    verify_with(APFamily::Exceptional(family.clone()), lo, hi, |n| f.value(n))
}

pub fn verify_linear_family(
    rec: &LinearRecurrence,
    family: LinearFamily,
    lo: i64,
    hi: i64,
) -> Result<VerificationReport> {
    let mut seq = rec.sequence();
    verify_with(APFamily::Linear(family), lo, hi, |n| seq.get(n))
}

/// Shift families of the minimal recurrence with `a <= max_a`.
pub fn detect_shift_families(rec: &LinearRecurrence, max_a: i64) -> Result<Vec<ShiftFamily>> {
    let m = minimalize(rec)?;
    Ok(trinomial_multiples(&m.companion(), max_a)?
        .into_iter()
        .map(ShiftFamily::from)
        .collect())
}

/// Symmetric families of a binary recurrence with offsets in `[-bound, bound]`.
///
/// With `(alpha beta)^M = 1` the identity is a combination of `alpha^{Mt}`
/// and `alpha^{-Mt}`, so it holds for every `t` once it holds at `t = 0, 1`.
pub fn detect_symmetric_families(rec: &LinearRecurrence, bound: i64) -> Result<Vec<SymmetricFamily>> {
    let rec = minimalize(rec)?;
    if rec.order() != 2 {
        return Ok(Vec::new());
    }
    let Some(info) = detect_symmetric(&rec) else {
        return Ok(Vec::new());
    };
    let m = info.m as i64;
    let reach = bound + m;
    let mut seq = rec.sequence();
    let vals = seq.range(-reach, reach);
    let f = |i: i64| &vals[(i + reach) as usize];
    let mut found = BTreeSet::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a == b {
                continue;
            }
            for c in -bound..=bound {
                for ordering in SymmetricOrdering::ALL {
                    let fam = SymmetricFamily { m, a, b, c, ordering };
                    let pat = fam.pattern();
                    let ok = [0, 1].iter().all(|&t| {
                        let [p, q, r] = pat.map(|x| affine(x, t));
                        f(q) + f(r) == f(p) + f(p)
                    });
                    let distinct = [0, 1].iter().any(|&t| {
                        let [p, q, r] = pat.map(|x| affine(x, t));
                        f(p) != f(q) && f(p) != f(r) && f(q) != f(r)
                    });
                    if ok && distinct {
                        found.insert(fam.canonical());
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Splits solutions into family members and isolated ones.
pub fn split_isolated(
    solutions: &[APSolution],
    families: &[APFamily],
) -> (Vec<APSolution>, Vec<APSolution>) {
    solutions
        .iter()
        .cloned()
        .partition(|s| families.iter().any(|f| f.contains(s)))
}
