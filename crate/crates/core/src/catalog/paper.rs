use serde::{Deserialize, Serialize};

use super::lemmas::{
    plus2_scan, power_equation_check, schinzel_scan, Plus2Scan, PowerEquationReport, SchinzelScan,
};
use super::sequences::{
    corollary_int_check, cubic_example, exceptional_example_check, fibonacci_report,
    unitary_example_check, CorollaryReport, ExceptionalReport, FibonacciReport, UnitaryReport,
};
use super::symmetric::{verify_table_sym, SymTableReport};
use super::tables::{verify_table_bin, verify_table_ter, TableReport};
use crate::error::Result;
use crate::exactnum::rat;
use crate::recurrence::LinearRecurrence;
use crate::trinomial::DEFAULT_LEMMA_BOUND;

/// Bounds for the full reproduction run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperConfig {
    pub lemma_bound: i64,
    /// Upper end of the Fibonacci search window starting at 0.
    pub fibonacci_hi: i64,
    pub t_range: i64,
    pub s_hi: i64,
    pub unitary_t: i64,
    pub power_bound: u64,
    pub max_shift: i64,
}

impl Default for PaperConfig {
    fn default() -> Self {
        PaperConfig {
            lemma_bound: DEFAULT_LEMMA_BOUND,
            fibonacci_hi: 60,
            t_range: 10,
            s_hi: 20,
            unitary_t: 40,
            power_bound: 10_000,
            max_shift: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReports {
    pub schinzel_upto: SchinzelScan,
    pub plus2_upto: Plus2Scan,
    pub power_equation: PowerEquationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperReport {
    pub table_bin: TableReport,
    pub table_ter: TableReport,
    pub table_sym: SymTableReport,
    pub fibonacci: FibonacciReport,
    pub unitary: UnitaryReport,
    pub exceptional: Vec<ExceptionalReport>,
    pub corollary_int: Vec<CorollaryReport>,
    pub lemmas: LemmaReports,
    pub passed: bool,
}

impl PaperReport {
    /// `(item, passed)` for every top-level check.
    pub fn summary(&self) -> Vec<(String, bool)> {
        let mut out = vec![
            ("table_bin".to_string(), self.table_bin.passed),
            ("table_ter".to_string(), self.table_ter.passed),
            ("table_sym".to_string(), self.table_sym.passed),
            ("fibonacci".to_string(), self.fibonacci.passed),
            ("unitary".to_string(), self.unitary.passed),
        ];
        for e in &self.exceptional {
            out.push((format!("exceptional K={}", e.k), e.passed));
        }
        for (i, c) in self.corollary_int.iter().enumerate() {
            out.push((format!("corollary_int #{}", i + 1), c.passed));
        }
        out.push(("schinzel_upto".into(), self.lemmas.schinzel_upto.passed));
        out.push(("plus2_upto".into(), self.lemmas.plus2_upto.passed));
        out.push(("power_equation".into(), self.lemmas.power_equation.passed));
        out
    }
}

/// Runs every catalog check with the given bounds.
pub fn verify_paper(cfg: &PaperConfig) -> Result<PaperReport> {
    let (lemmas, rest) = rayon::join(
        || -> Result<LemmaReports> {
            let ((s, p), power) = rayon::join(
                || rayon::join(|| schinzel_scan(cfg.lemma_bound), || plus2_scan(cfg.lemma_bound)),
                || power_equation_check(cfg.power_bound),
            );
            Ok(LemmaReports {
                schinzel_upto: s?,
                plus2_upto: p?,
                power_equation: power,
            })
        },
        || -> Result<_> {
            let exceptional = vec![
                exceptional_example_check(rat(1), 0, 1, cfg.s_hi)?,
                exceptional_example_check(rat(1), 0, -1, cfg.s_hi)?,
            ];
            let corollary_int = vec![
                corollary_int_check(&LinearRecurrence::fibonacci(), cfg.max_shift)?,
                corollary_int_check(&cubic_example(), cfg.max_shift)?,
            ];
            Ok((
                verify_table_bin()?,
                verify_table_ter()?,
                verify_table_sym(cfg.t_range),
                fibonacci_report(cfg.fibonacci_hi)?,
                unitary_example_check(cfg.unitary_t)?,
                exceptional,
                corollary_int,
            ))
        },
    );
    let lemmas = lemmas?;
    let (table_bin, table_ter, table_sym, fibonacci, unitary, exceptional, corollary_int) = rest?;
    let mut report = PaperReport {
        table_bin,
        table_ter,
        table_sym,
        fibonacci,
        unitary,
        exceptional,
        corollary_int,
        lemmas,
        passed: false,
    };
    report.passed = report.summary().iter().all(|(_, ok)| *ok);
    Ok(report)
}
