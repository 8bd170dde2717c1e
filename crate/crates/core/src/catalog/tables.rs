use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::{cyclotomic_part, Polynomial};
use crate::trinomial::{
    build_trinomial, factor_trinomial, trinomial_multiples, TrinomialSpec, TrinomialVariant,
    DEFAULT_LEMMA_BOUND,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    Bin,
    Ter,
}

/// A printed companion polynomial with the shift pair it is listed under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: TableId,
    pub a: i64,
    pub b: i64,
    pub polynomial: Polynomial,
}

fn row(table: TableId, a: i64, b: i64, c: &[i64]) -> TableRow {
    TableRow {
        table,
        a,
        b,
        polynomial: Polynomial::from_ints(c),
    }
}

/// Binary companion polynomials, coefficients low to high.
pub fn table_bin_rows() -> Vec<TableRow> {
    use TableId::Bin;
    vec![
        row(Bin, 3, 1, &[-1, 1, 1]),
        row(Bin, 3, 1, &[2, 1, 1]),
        row(Bin, 3, 1, &[1, 2, 2]),
        row(Bin, 3, 2, &[-1, -1, 1]),
        row(Bin, 3, 2, &[2, 2, 1]),
        row(Bin, 3, 2, &[1, 1, 2]),
    ]
}

/// Ternary companion polynomials as printed.
pub fn table_ter_rows() -> Vec<TableRow> {
    use TableId::Ter;
    vec![
        row(Ter, 4, 1, &[-1, 1, 1, 1]),
        row(Ter, 4, 1, &[2, 1, 1, 1]),
        row(Ter, 4, 1, &[1, 2, 2, 2]),
        row(Ter, 4, 3, &[-1, -1, -1, 1]),
        row(Ter, 4, 3, &[2, 2, 2, 1]),
        row(Ter, 4, 3, &[1, 1, 1, 2]),
        row(Ter, 7, 2, &[1, 0, 1, 1]),
        row(Ter, 7, 2, &[-1, -1, 0, 1]),
        row(Ter, 7, 5, &[-1, 0, 1, 1]),
        row(Ter, 7, 5, &[-1, 1, 0, 1]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowReport {
    pub row: TableRow,
    /// Trinomial with the printed `(a, b)` that the polynomial divides.
    pub variant: Option<TrinomialVariant>,
    /// Trinomial divided by the row polynomial.
    pub quotient: Option<Polynomial>,
    /// Cyclotomic part of the quotient.
    pub cyclotomic_cofactor: Option<Polynomial>,
    /// Every trinomial with `a` up to the printed one that the polynomial divides.
    pub divides: Vec<TrinomialSpec>,
    /// Factorization of `X^a - 2X^b + 1` at the printed pair, for rows that fail.
    pub labelled_factors: Option<Vec<Polynomial>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: TableId,
    pub rows: Vec<TableRowReport>,
    pub passed: bool,
}

/// Certifies one row: the polynomial divides a trinomial at the printed
/// `(a, b)` and the quotient's cyclotomic part is `X - 1`.
pub fn verify_table_row(row: &TableRow) -> Result<TableRowReport> {
    let x_minus_one = Polynomial::from_ints(&[-1, 1]);
    let mut found = None;
    for v in TrinomialVariant::ALL {
        let t = build_trinomial(v, row.a, row.b)?;
        if let Some(q) = t.exact_div(&row.polynomial) {
            found = Some((v, q));
            break;
        }
    }
    let (variant, quotient, cofactor) = match &found {
        Some((v, q)) => (Some(*v), Some(q.clone()), Some(cyclotomic_part(q).0)),
        None => (None, None, None),
    };
    let passed = cofactor.as_ref().is_some_and(|c| *c == x_minus_one);
    let divides = trinomial_multiples(&row.polynomial, row.a)?;
    let labelled_factors = if passed {
        None
    } else {
        let f = factor_trinomial(TrinomialVariant::MeanMid, row.a, row.b, DEFAULT_LEMMA_BOUND)?;
        let mut all = vec![f.cyclotomic_cofactor];
        all.extend(f.noncyclotomic_factors);
        Some(all)
    };
    Ok(TableRowReport {
        row: row.clone(),
        variant,
        quotient,
        cyclotomic_cofactor: cofactor,
        divides,
        labelled_factors,
        passed,
    })
}

fn verify_rows(table: TableId, rows: Vec<TableRow>) -> Result<TableReport> {
    let rows = rows.iter().map(verify_table_row).collect::<Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r.passed);
    Ok(TableReport { table, rows, passed })
}

pub fn verify_table_bin() -> Result<TableReport> {
    verify_rows(TableId::Bin, table_bin_rows())
}

pub fn verify_table_ter() -> Result<TableReport> {
    verify_rows(TableId::Ter, table_ter_rows())
}
