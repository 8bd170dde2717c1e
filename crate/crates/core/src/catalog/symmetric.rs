use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ap_engine::{verify_symmetric_family, SymmetricFamily, SymmetricOrdering};
use crate::error::{Error, Result};
use crate::exactnum::{rat, ratio, QuadField, QuadraticElement, Rational};
use crate::recurrence::{quad_closed_form, LinearRecurrence};

/// The four closed-form shapes of the symmetric table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymShape {
    /// `C(α^n + (-1)^{n+c} α^{b+c-n} (1+α)/2)`
    Row1,
    /// `C(α^n + (-1)^{n+c} α^{b+c-n} (1+α^3)/2)`
    Row2,
    /// `C(α^n + (-1)^{n+c+1} α^{b+c-n} (2α-1))`
    Row3,
    /// `C(α^n + (-1)^{n+c} α^{b+c-n} (α-2))`
    Row4,
}

impl SymShape {
    /// Required value of `a - b`.
    pub fn gap(self) -> i64 {
        match self {
            SymShape::Row2 => 3,
            _ => 1,
        }
    }

    /// Which index carries the mean in the family identity.
    pub fn ordering(self) -> SymmetricOrdering {
        match self {
            SymShape::Row1 | SymShape::Row2 => SymmetricOrdering::MeanAtK,
            SymShape::Row3 => SymmetricOrdering::MeanAtM,
            SymShape::Row4 => SymmetricOrdering::MeanAtN,
        }
    }
}

/// One entry of the symmetric table: a shape, a root and the parity of `b + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymRow {
    pub shape: SymShape,
    pub alpha: QuadraticElement,
    pub parity: i64,
}

fn q(a: Rational, b: Rational, d: QuadField) -> QuadraticElement {
    QuadraticElement::new(a, b, d)
}

/// All entries, with both signs wherever the table lists `±`.
pub fn table_sym_rows() -> Vec<SymRow> {
    use QuadField::{Sqrt2, Sqrt5};
    use SymShape::*;
    let h = ratio(1, 2);
    let entry = |shape, alpha, parity| SymRow { shape, alpha, parity };
    vec![
        entry(Row1, q(rat(2), rat(1), Sqrt5), 0),
        entry(Row1, q(rat(2), rat(-1), Sqrt5), 0),
        entry(Row1, q(rat(-2), rat(1), Sqrt5), 1),
        entry(Row1, q(rat(-2), rat(-1), Sqrt5), 1),
        entry(Row2, q(h.clone(), h.clone(), Sqrt5), 0),
        entry(Row2, q(h.clone(), -&h, Sqrt5), 0),
        entry(Row2, q(-&h, h.clone(), Sqrt5), 1),
        entry(Row2, q(-&h, -&h, Sqrt5), 1),
        entry(Row3, q(rat(-1), rat(-1), Sqrt2), 0),
        entry(Row3, q(-&h, -&h, Sqrt5), 1),
        entry(Row4, q(rat(-1), rat(-1), Sqrt2), 1),
        entry(Row4, q(-&h, -&h, Sqrt5), 0),
    ]
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// The constructed sequence in its field, before normalization.
struct SymClosedForm {
    shape: SymShape,
    alpha: QuadraticElement,
    b: i64,
    c: i64,
    scale: QuadraticElement,
    big_c: QuadraticElement,
}

impl SymClosedForm {
    fn new(row: &SymRow, a: i64, b: i64, c: i64) -> Result<Self> {
        let al = &row.alpha;
        let d = al.d;
        let one = QuadraticElement::one(d);
        let two = rat(2);
        let half = ratio(1, 2);
        let scale = match row.shape {
            SymShape::Row1 => (&one + al).scale(&half),
            SymShape::Row2 => (&one + &al.pow(3)?).scale(&half),
            SymShape::Row3 => &al.scale(&two) - &one,
            SymShape::Row4 => al - &QuadraticElement::from_rational(two.clone(), d),
        };
        let ta = al.pow(-(a + c))?.scale(&sign(a));
        let tb = al.pow(-(b + c))?.scale(&sign(b));
        let big_c = match row.shape {
            SymShape::Row1 | SymShape::Row2 => &one + &(&ta + &tb).scale(&half),
            SymShape::Row3 => &(&one + &tb) - &ta.scale(&two),
            SymShape::Row4 => &(&one + &ta) - &tb.scale(&two),
        };
        Ok(SymClosedForm {
            shape: row.shape,
            alpha: al.clone(),
            b,
            c,
            scale,
            big_c,
        })
    }

    fn value(&self, n: i64) -> Result<QuadraticElement> {
        let flip = if self.shape == SymShape::Row3 { 1 } else { 0 };
        let second = self
            .alpha
            .pow(self.b + self.c - n)?
            .checked_mul(&self.scale)?
            .scale(&sign(n + self.c + flip));
        let inner = &self.alpha.pow(n)? + &second;
        inner.checked_mul(&self.big_c)
    }
}

/// Positive rational `g` making `(x/g, y/g)` coprime integers.
fn content(x: &Rational, y: &Rational) -> Rational {
    let num = x.numer().gcd(y.numer());
    let den = x.denom().lcm(y.denom());
    Rational::new(num, den)
}

/// Builds the rational recurrence and its symmetric family for one table
/// entry. Initial values are scaled to coprime integers.
pub fn build_table_sym_row(
    row: &SymRow,
    a: i64,
    b: i64,
    c: i64,
) -> Result<(LinearRecurrence, SymmetricFamily)> {
    if a - b != row.shape.gap() {
        return Err(Error::Domain(format!(
            "{:?} needs a - b = {}, got a={a}, b={b}",
            row.shape,
            row.shape.gap()
        )));
    }
    if (b + c).rem_euclid(2) != row.parity {
        return Err(Error::Domain(format!(
            "{:?} with alpha = {} needs b + c = {} mod 2, got b={b}, c={c}",
            row.shape, row.alpha, row.parity
        )));
    }
    let form = SymClosedForm::new(row, a, b, c)?;
    let f0 = form.value(0)?;
    let f1 = form.value(1)?;
    let (Some(f0), Some(f1)) = (f0.as_rational(), f1.as_rational()) else {
        return Err(Error::Construction(format!(
            "f_0 = {f0}, f_1 = {f1} are not both rational for {:?}, alpha = {}, (a,b,c) = ({a},{b},{c})",
            row.shape, row.alpha
        )));
    };
    if f0.is_zero() && f1.is_zero() {
        return Err(Error::Construction("constructed sequence vanishes".into()));
    }
    // second root is -1/alpha
    let inv = row.alpha.inv()?;
    let trace = &row.alpha - &inv;
    let Some(a1) = trace.as_rational() else {
        return Err(Error::Construction(format!("alpha - 1/alpha = {trace} is irrational")));
    };
    let g = content(f0, f1);
    let rec = LinearRecurrence::new(vec![a1.clone(), Rational::one()], vec![f0 / &g, f1 / &g])?;
    let family = SymmetricFamily {
        m: 2,
        a,
        b,
        c,
        ordering: row.shape.ordering(),
    };
    Ok((rec, family))
}

/// Outcome of one constructed entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymRowReport {
    pub row: SymRow,
    pub abc: [i64; 3],
    pub recurrence: Option<LinearRecurrence>,
    pub family: Option<SymmetricFamily>,
    /// Family identity holds for every `t` in the checked range.
    pub family_verified: bool,
    /// The field closed form of the recurrence reproduces the construction.
    pub round_trip: bool,
    pub error: Option<String>,
    pub passed: bool,
}

/// Constructs one entry and checks it on `t` in `[-t_range, t_range]`.
pub fn check_sym_row(row: &SymRow, a: i64, b: i64, c: i64, t_range: i64) -> SymRowReport {
    let mut report = SymRowReport {
        row: row.clone(),
        abc: [a, b, c],
        recurrence: None,
        family: None,
        family_verified: false,
        round_trip: false,
        error: None,
        passed: false,
    };
    let (rec, fam) = match build_table_sym_row(row, a, b, c) {
        Ok(x) => x,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.family_verified = verify_symmetric_family(&rec, fam, -t_range, t_range)
        .map(|r| r.passed())
        .unwrap_or(false);
    report.round_trip = round_trip(row, &rec, a, b, c, t_range).unwrap_or(false);
    report.passed = report.family_verified && report.round_trip;
    report.recurrence = Some(rec);
    report.family = Some(fam);
    report
}

fn round_trip(row: &SymRow, rec: &LinearRecurrence, a: i64, b: i64, c: i64, range: i64) -> Result<bool> {
    let form = SymClosedForm::new(row, a, b, c)?;
    let cf = quad_closed_form(rec)?;
    let f0 = form.value(0)?;
    let f1 = form.value(1)?;
    let g = content(&f0.a, &f1.a);
    let mut seq = rec.sequence();
    for n in -range..=range {
        let v = form.value(n)?;
        let Some(v) = v.as_rational() else {
            return Ok(false);
        };
        let expected = v / &g;
        if cf.eval(n) != expected || seq.get(n) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Default parameter triples for an entry: `b` in `{0, 1}` and the two
/// smallest non-negative `c` of the right parity.
pub fn sample_parameters(row: &SymRow) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for b in 0..=1 {
        let c0 = (row.parity - b).rem_euclid(2);
        for c in [c0, c0 + 2] {
            out.push([b + row.shape.gap(), b, c]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTableReport {
    pub rows: Vec<SymRowReport>,
    pub passed: bool,
}

pub fn verify_table_sym(t_range: i64) -> SymTableReport {
    let rows: Vec<SymRowReport> = table_sym_rows()
        .iter()
        .flat_map(|r| {
            sample_parameters(r)
                .into_iter()
                .map(move |[a, b, c]| check_sym_row(r, a, b, c, t_range))
        })
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    SymTableReport { rows, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn worked_example() {
        let row = &table_sym_rows()[0];
        let (rec, fam) = build_table_sym_row(row, 2, 1, 1).unwrap();
        assert_eq!(rec, LinearRecurrence::from_ints(&[4, 1], &[-3, 1]).unwrap());
        assert_eq!(fam.ordering, SymmetricOrdering::MeanAtK);
        assert!(verify_symmetric_family(&rec, fam, -20, 20).unwrap().passed());
    }

    #[test]
    fn parity_gate() {
        let row = &table_sym_rows()[0];
        assert!(matches!(build_table_sym_row(row, 2, 1, 2), Err(Error::Domain(_))));
        assert!(matches!(build_table_sym_row(row, 3, 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn golden_ratio_row() {
        let row = &table_sym_rows()[4];
        let (rec, fam) = build_table_sym_row(row, 4, 1, 1).unwrap();
        assert_eq!(rec.coeffs(), &[rat(1), rat(1)]);
        assert!(verify_symmetric_family(&rec, fam, -5, 5).unwrap().passed());
    }

    #[test]
    fn first_two_shapes_certify() {
        for row in table_sym_rows().iter().filter(|r| matches!(r.shape, SymShape::Row1 | SymShape::Row2)) {
            for [a, b, c] in sample_parameters(row) {
                let rep = check_sym_row(row, a, b, c, 10);
                assert!(rep.passed, "{:?} {} {:?} {:?}", row.shape, row.alpha, [a, b, c], rep.error);
            }
        }
    }

    #[test]
    fn content_is_positive() {
        assert_eq!(content(&ratio(-3, 2), &ratio(1, 2)), ratio(1, 2));
        assert!(content(&rat(-6), &rat(4)).is_positive());
    }
}
