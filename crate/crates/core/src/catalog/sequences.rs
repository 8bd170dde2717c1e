use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ap_engine::{
    brute_force_aps, brute_force_aps4, detect_shift_families, split_isolated,
    verify_exceptional_family, verify_linear_family, APFamily, APSolution, APSolution4,
    ExceptionalFamily, LinearFamily, ShiftFamily, VerificationReport,
};
use crate::error::{Error, Result};
use crate::exactnum::{self, rat, ratio, Rational};
use crate::poly::{cyclotomic_factors, Polynomial};
use crate::recurrence::{
    detect_exceptional, minimalize, quad_closed_form, structure_report, ExceptionalInfo,
    LinearRecurrence, StructureReport, SymmetricInfo,
};
use crate::trinomial::TrinomialVariant;

/// Isolated Fibonacci progressions as listed, by sorted index triple.
pub const FIBONACCI_STATED_ISOLATED: [[i64; 3]; 2] = [[0, 1, 3], [2, 3, 4]];
pub const FIBONACCI_STATED_FOUR_TERM: [[i64; 4]; 2] = [[0, 1, 3, 4], [0, 2, 3, 4]];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibonacciReport {
    pub window: [i64; 2],
    pub structure: StructureReport,
    pub classification_ok: bool,
    pub shift_families: Vec<ShiftFamily>,
    pub families_ok: bool,
    /// Every family instance inside the window is found by brute force.
    pub family_instances_ok: bool,
    pub isolated: Vec<APSolution>,
    pub isolated_ok: bool,
    pub four_term: Vec<APSolution4>,
    pub four_term_ok: bool,
    pub binet_ok: bool,
    pub passed: bool,
}

/// Exact Binet evaluation against the recurrence on `[lo, hi]`.
pub fn binet_check(lo: i64, hi: i64) -> Result<bool> {
    let f = LinearRecurrence::fibonacci();
    let cf = quad_closed_form(&f)?;
    let vals = f.sequence().range(lo, hi);
    Ok((lo..=hi).zip(&vals).all(|(n, v)| cf.eval(n) == *v))
}

pub fn fibonacci_report(n: i64) -> Result<FibonacciReport> {
    if n < 10 {
        return Err(Error::Domain(format!("window end must be at least 10, got {n}")));
    }
    let f = LinearRecurrence::fibonacci();
    let structure = structure_report(&f)?;
    let classification_ok = structure.is_simple
        && !structure.is_degenerate
        && !structure.is_unitary
        && structure.symmetric == Some(SymmetricInfo { m: 2 });
    let shift_families = detect_shift_families(&f, 10)?;
    let expected = ShiftFamily {
        variant: TrinomialVariant::MeanMid,
        a: 3,
        b: 2,
    };
    let families_ok = shift_families == [expected];

    let sols = brute_force_aps(&f, 0, n, false)?;
    let keys: BTreeSet<_> = sols.iter().map(|s| s.key()).collect();
    let family_instances_ok = (0..=n - 3).all(|j| keys.contains(&(j + 2, j, j + 3)));
    let fams: Vec<APFamily> = shift_families.iter().copied().map(APFamily::Shift).collect();
    let (_, isolated) = split_isolated(&sols, &fams);
    let got: BTreeSet<[i64; 3]> = isolated.iter().map(|s| s.sorted_indices()).collect();
    let isolated_ok = got == FIBONACCI_STATED_ISOLATED.into_iter().collect();

    let four_term = brute_force_aps4(&f, 0, n, false)?;
    let four_term_ok = four_term.iter().map(|s| s.indices).collect::<Vec<_>>() == FIBONACCI_STATED_FOUR_TERM;
    let binet_ok = binet_check(0, 200)?;

    let passed = classification_ok && families_ok && family_instances_ok && isolated_ok && four_term_ok && binet_ok;
    Ok(FibonacciReport {
        window: [0, n],
        structure,
        classification_ok,
        shift_families,
        families_ok,
        family_instances_ok,
        isolated,
        isolated_ok,
        four_term,
        four_term_ok,
        binet_ok,
        passed,
    })
}

/// `f_n = (2^n - (-1)^n)/3`.
pub fn unitary_example() -> LinearRecurrence {
    LinearRecurrence::from_ints(&[1, 2], &[0, 1]).expect("valid")
}

fn unitary_value(n: i64) -> Rational {
    let p = BigInt::one() << n as usize;
    let s = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Rational::new(p - s, BigInt::from(3))
}

/// The declared pattern `(f_{2t}, f_{2t-1}, f_j)`, `j = 1, 2`.
pub fn unitary_family(j: i64) -> LinearFamily {
    LinearFamily {
        label: format!("(f_{{2t}}, f_{{2t-1}}, f_{j})"),
        mean: (2, -1),
        outer: [(2, 0), (0, j)],
    }
}

/// Families that exist for a sequence but are not found by detection.
/// Currently the unitary example and its scalar multiples.
pub fn declared_families(rec: &LinearRecurrence) -> Vec<APFamily> {
    let Ok(m) = minimalize(rec) else {
        return Vec::new();
    };
    let base = unitary_example();
    if m.coeffs() == base.coeffs() && m.initial()[0].is_zero() {
        vec![APFamily::Linear(unitary_family(1)), APFamily::Linear(unitary_family(2))]
    } else {
        Vec::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitaryReport {
    pub t_max: i64,
    pub closed_form_ok: bool,
    pub is_unitary: bool,
    /// `f_{2t} + f_1 = 2 f_{2t-1}` for `t` in `[2, t_max]`.
    pub family: VerificationReport,
    /// At `t = 1` the triple is `(f_2, f_1, f_1)`, excluded since `f_1 = f_2`.
    pub t1_degenerate: bool,
    pub passed: bool,
}

pub fn unitary_example_check(t_max: i64) -> Result<UnitaryReport> {
    if t_max < 1 {
        return Err(Error::Domain(format!("T must be at least 1, got {t_max}")));
    }
    let rec = unitary_example();
    let vals = rec.sequence().range(0, 3 * t_max);
    let closed_form_ok = vals.iter().enumerate().all(|(n, v)| *v == unitary_value(n as i64));
    let is_unitary = structure_report(&rec)?.is_unitary
        && cyclotomic_factors(&rec.companion()).0.iter().any(|&(m, _)| m == 2);
    let family = verify_linear_family(&rec, unitary_family(1), 2, t_max.max(1))?;
    let mut seq = rec.sequence();
    let t1_degenerate = seq.get(2) == seq.get(1);
    let passed = closed_form_ok && is_unitary && family.passed() && t1_degenerate;
    Ok(UnitaryReport {
        t_max,
        closed_form_ok,
        is_unitary,
        family,
        t1_degenerate,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    #[serde(rename = "R", with = "exactnum::serde_rational")]
    pub r: Rational,
    pub gamma: i64,
    #[serde(rename = "K")]
    pub k: i64,
    pub recurrence: LinearRecurrence,
    pub detected: Option<ExceptionalInfo>,
    pub recovered: bool,
    /// Closed form agrees with the recurrence on `[-10, 10]`.
    pub closed_form_ok: bool,
    pub verification: VerificationReport,
    pub passed: bool,
}

/// Order-2 recurrence of `f_n = R (n - gamma) 2^{K n}`.
pub fn exceptional_recurrence(family: &ExceptionalFamily) -> Result<LinearRecurrence> {
    let coeffs = if family.k == 1 {
        vec![rat(4), rat(-4)]
    } else {
        vec![rat(1), ratio(-1, 4)]
    };
    LinearRecurrence::new(coeffs, vec![family.value(0), family.value(1)])
}

pub fn exceptional_example_check(r: Rational, gamma: i64, k: i64, s_hi: i64) -> Result<ExceptionalReport> {
    let family = ExceptionalFamily::new(k, gamma, r.clone())?;
    if s_hi <= family.s_min() {
        return Err(Error::Domain(format!(
            "s_hi = {s_hi} must exceed the threshold {}",
            family.s_min()
        )));
    }
    let rec = exceptional_recurrence(&family)?;
    let detected = detect_exceptional(&rec);
    let recovered = detected
        .as_ref()
        .is_some_and(|d| d.k == k && d.r == r && d.gamma == rat(gamma) && d.n == 2);
    let vals = rec.sequence().range(-10, 10);
    let closed_form_ok = (-10..=10).zip(&vals).all(|(n, v)| family.value(n) == *v);
    let verification = verify_exceptional_family(&family, family.s_min() + 1, s_hi)?;
    let passed = recovered && closed_form_ok && verification.passed();
    Ok(ExceptionalReport {
        r,
        gamma,
        k,
        recurrence: rec,
        detected,
        recovered,
        closed_form_ok,
        verification,
        passed,
    })
}

/// Witness that the companion divides `(X^a - 2X^b + 1)/(X^gcd(a,b) - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryWitness {
    pub a: i64,
    pub b: i64,
    pub reduced_trinomial: Polynomial,
    pub cofactor: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub recurrence: LinearRecurrence,
    pub companion: Polynomial,
    /// A mean-in-the-middle shift family exists.
    pub applicable: bool,
    pub witnesses: Vec<CorollaryWitness>,
    pub passed: bool,
}

pub fn corollary_int_check(rec: &LinearRecurrence, max_a: i64) -> Result<CorollaryReport> {
    let report = structure_report(rec)?;
    if !report.integer_defined {
        return Err(Error::Domain(
            "recurrence must have integer coefficients, integer initial values and a_0 = ±1".into(),
        ));
    }
    let m = minimalize(rec)?;
    let companion = m.companion();
    let mids: Vec<ShiftFamily> = detect_shift_families(&m, max_a)?
        .into_iter()
        .filter(|f| f.variant == TrinomialVariant::MeanMid)
        .collect();
    let mut witnesses = Vec::new();
    for f in &mids {
        let t = crate::trinomial::build_trinomial(f.variant, f.a, f.b)?;
        let d = num_integer::gcd(f.a, f.b) as usize;
        let reduced = t
            .exact_div(&Polynomial::x_pow_minus_one(d))
            .ok_or_else(|| Error::Construction("X^d - 1 does not divide the trinomial".into()))?;
        if let Some(cofactor) = reduced.exact_div(&companion) {
            witnesses.push(CorollaryWitness {
                a: f.a,
                b: f.b,
                reduced_trinomial: reduced,
                cofactor,
            });
        }
    }
    let applicable = !mids.is_empty();
    let passed = witnesses.len() == mids.len();
    Ok(CorollaryReport {
        recurrence: m,
        companion,
        applicable,
        witnesses,
        passed,
    })
}

/// Integer recurrence with companion `X^3 - X - 1`.
pub fn cubic_example() -> LinearRecurrence {
    LinearRecurrence::from_ints(&[0, 1, 1], &[0, 0, 1]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_claims() {
        let r = fibonacci_report(60).unwrap();
        assert!(r.classification_ok && r.families_ok && r.family_instances_ok);
        assert!(r.four_term_ok && r.binet_ok);
        let got: Vec<[i64; 3]> = r.isolated.iter().map(|s| s.sorted_indices()).collect();
        assert_eq!(got, vec![[0, 1, 3], [2, 3, 4], [1, 4, 5]]);
        assert!(!r.isolated_ok);
        let small = fibonacci_report(10).unwrap();
        assert_eq!(small.isolated, r.isolated);
        assert_eq!(small.four_term, r.four_term);
        assert!(fibonacci_report(9).is_err());
    }

    #[test]
    fn unitary() {
        let r = unitary_example_check(40).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(unitary_value(4), rat(5));
        assert_eq!(declared_families(&unitary_example()).len(), 2);
        assert!(declared_families(&LinearRecurrence::fibonacci()).is_empty());
    }

    #[test]
    fn exceptional() {
        let r = exceptional_example_check(rat(1), 0, 1, 20).unwrap();
        assert!(r.passed);
        assert_eq!(r.recurrence, LinearRecurrence::from_ints(&[4, -4], &[0, 2]).unwrap());
        assert_eq!(r.verification.checked, 19);
        let r = exceptional_example_check(rat(1), 0, -1, 20).unwrap();
        assert!(r.passed);
        let r = exceptional_example_check(ratio(-3, 5), 2, 1, 12).unwrap();
        assert!(r.passed);
        assert!(exceptional_example_check(rat(0), 0, 1, 20).is_err());
        assert!(exceptional_example_check(rat(1), 0, 1, 1).is_err());
    }

    #[test]
    fn corollary() {
        let r = corollary_int_check(&LinearRecurrence::fibonacci(), 10).unwrap();
        assert!(r.applicable && r.passed);
        assert_eq!(r.witnesses[0].cofactor, Polynomial::one());
        let r = corollary_int_check(&cubic_example(), 10).unwrap();
        assert!(r.applicable && r.passed);
        assert_eq!((r.witnesses[0].a, r.witnesses[0].b), (7, 5));
        let frac = LinearRecurrence::new(vec![ratio(1, 2), rat(1)], vec![rat(0), rat(1)]).unwrap();
        assert!(matches!(corollary_int_check(&frac, 10), Err(Error::Domain(_))));
    }
}
