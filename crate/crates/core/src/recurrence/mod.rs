//! Linear recurrences with rational coefficients: two-sided evaluation,
//! minimal order and structural classification.

mod classify;
mod closed_form;
mod minimal;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};
use crate::poly::Polynomial;

pub use classify::{
    classify_roots, detect_exceptional, detect_symmetric, structure_report, ExceptionalInfo,
    StructureReport, SymmetricInfo,
};
pub use closed_form::{quad_closed_form, QuadClosedForm};
pub use minimal::minimalize;

/// `f_{n+d} = a_{d-1} f_{n+d-1} + ... + a_0 f_n` with `a_0 != 0`.
///
/// `coeffs` is stored as `[a_{d-1}, ..., a_0]`, `initial` as `[f_0, ..., f_{d-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub struct LinearRecurrence {
    coeffs: Vec<Rational>,
    initial: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    #[serde(with = "exactnum::serde_rational_vec")]
    coeffs: Vec<Rational>,
    #[serde(with = "exactnum::serde_rational_vec")]
    initial: Vec<Rational>,
}

impl TryFrom<Repr> for LinearRecurrence {
    type Error = Error;
    fn try_from(r: Repr) -> Result<Self> {
        LinearRecurrence::new(r.coeffs, r.initial)
    }
}

impl From<LinearRecurrence> for Repr {
    fn from(r: LinearRecurrence) -> Self {
        Repr {
            coeffs: r.coeffs,
            initial: r.initial,
        }
    }
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<Rational>, initial: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("recurrence order must be positive".into()));
        }
        if coeffs.len() != initial.len() {
            return Err(Error::Domain(format!(
                "{} coefficients but {} initial values",
                coeffs.len(),
                initial.len()
            )));
        }
        if coeffs.last().is_some_and(|a0| a0.is_zero()) {
            return Err(Error::Domain("a_0 must be nonzero".into()));
        }
        Ok(LinearRecurrence { coeffs, initial })
    }

    pub fn from_ints(coeffs: &[i64], initial: &[i64]) -> Result<Self> {
        LinearRecurrence::new(
            coeffs.iter().map(|&c| exactnum::rat(c)).collect(),
            initial.iter().map(|&c| exactnum::rat(c)).collect(),
        )
    }

    pub fn fibonacci() -> Self {
        LinearRecurrence::from_ints(&[1, 1], &[0, 1]).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `[a_{d-1}, ..., a_0]`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    /// The coefficient `a_i`.
    pub fn a(&self, i: usize) -> &Rational {
        &self.coeffs[self.order() - 1 - i]
    }

    /// `X^d - a_{d-1}X^{d-1} - ... - a_0`.
    pub fn companion(&self) -> Polynomial {
        let d = self.order();
        let mut c: Vec<Rational> = (0..d).map(|i| -self.a(i)).collect();
        c.push(Rational::one());
        Polynomial::new(c)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().chain(&self.initial).all(|c| c.is_integer())
    }

    pub fn with_initial(&self, initial: Vec<Rational>) -> Result<Self> {
        LinearRecurrence::new(self.coeffs.clone(), initial)
    }

    pub fn sequence(&self) -> Sequence {
        Sequence::new(self.clone())
    }
}

pub fn companion(rec: &LinearRecurrence) -> Polynomial {
    rec.companion()
}

/// Exact `f_n` for any integer `n`.
pub fn eval_at(rec: &LinearRecurrence, n: i64) -> Rational {
    rec.sequence().get(n)
}

/// Two-sided memoized evaluator. Values are appended at either end and
/// never change once computed.
#[derive(Clone, Debug)]
pub struct Sequence {
    rec: LinearRecurrence,
    /// `f_0, f_1, ...`
    fwd: Vec<Rational>,
    /// `f_{-1}, f_{-2}, ...`
    bwd: Vec<Rational>,
}

impl Sequence {
    pub fn new(rec: LinearRecurrence) -> Self {
        let fwd = rec.initial.clone();
        Sequence {
            rec,
            fwd,
            bwd: Vec::new(),
        }
    }

    pub fn recurrence(&self) -> &LinearRecurrence {
        &self.rec
    }

    fn stored(&self, n: i64) -> Option<&Rational> {
        if n >= 0 {
            self.fwd.get(n as usize)
        } else {
            self.bwd.get((-n - 1) as usize)
        }
    }

    pub fn get(&mut self, n: i64) -> Rational {
        self.extend_to(n);
        self.stored(n).expect("extended").clone()
    }

    /// Ensures `f_n` is memoized.
    pub fn extend_to(&mut self, n: i64) {
        let d = self.rec.order();
        while n >= 0 && self.fwd.len() <= n as usize {
            let len = self.fwd.len();
            let mut acc = Rational::zero();
            for i in 0..d {
                acc += self.rec.a(i) * &self.fwd[len - d + i];
            }
            self.fwd.push(acc);
        }
        while n < 0 && self.bwd.len() < (-n) as usize {
            // f_m = (f_{m+d} - a_{d-1} f_{m+d-1} - ... - a_1 f_{m+1}) / a_0
            let m = -(self.bwd.len() as i64) - 1;
            let at = |k: i64| self.stored(k).expect("neighbours are known").clone();
            let mut acc = at(m + d as i64);
            for i in 1..d {
                acc -= self.rec.a(i) * at(m + i as i64);
            }
            let v = acc / self.rec.a(0);
            self.bwd.push(v);
        }
    }

    /// `f_lo, ..., f_hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> Vec<Rational> {
        if lo > hi {
            return Vec::new();
        }
        self.extend_to(lo);
        self.extend_to(hi);
        (lo..=hi)
            .map(|n| self.stored(n).expect("extended").clone())
            .collect()
    }
}
