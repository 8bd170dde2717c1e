//! Low-degree integer factor search.
//!
//! Roots of the squarefree, cyclotomic-free part are refined in fixed-point
//! big-integer arithmetic and enclosed in disjoint disks. Real roots and
//! conjugate pairs form "units"; unions of units of total degree `k` give
//! candidate factors whose coefficients are pinned to a single integer by a
//! rigorous error radius. Every accepted candidate is certified by exact
//! division, and a rejected candidate is rejected only when no integer lies
//! within its error radius.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{complex_roots, cyclotomic, cyclotomic_factors, euler_phi, Polynomial};
use crate::error::{Error, Result};

const ESCALATIONS: u32 = 4;
const BASE_BITS: u64 = 64;
const MAX_LEAD_FOR_DIVISORS: u64 = 1_000_000_000_000;

/// Outcome of [`integer_factor_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSearch {
    /// Primitive input (integer coefficients, positive leading term).
    pub input: Polynomial,
    /// Distinct irreducible factors of degree at most `max_deg`, with their
    /// multiplicity in `input`.
    pub factors: Vec<(Polynomial, usize)>,
    /// `input` divided by all found factors; every irreducible factor of it
    /// has degree above `max_deg`.
    pub remainder: Polynomial,
    /// True when the product of the factors, with multiplicity, times the
    /// remainder reproduces `input` exactly.
    pub certified: bool,
}

impl FactorSearch {
    /// True when `input` is completely split into the found factors.
    pub fn complete(&self) -> bool {
        self.certified && self.remainder.is_constant()
    }
}

/// Irreducible integer factors of `p` of degree at most `max_deg`: primitive,
/// positive leading coefficient, ordered by degree then coefficients.
pub fn integer_factors_upto(p: &Polynomial, max_deg: usize) -> Result<Vec<Polynomial>> {
    Ok(integer_factor_search(p, max_deg)?
        .factors
        .into_iter()
        .map(|(f, _)| f)
        .collect())
}

pub fn integer_factor_search(p: &Polynomial, max_deg: usize) -> Result<FactorSearch> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::Precondition("factor search needs degree >= 1".into()));
    }
    if max_deg == 0 {
        return Err(Error::Precondition("max_deg must be positive".into()));
    }
    let input = p.primitive_part();
    let mut found: Vec<Polynomial> = Vec::new();

    let (xk, rest) = input.strip_x_powers();
    if xk > 0 {
        found.push(Polynomial::x());
    }
    let (cyc, rest) = cyclotomic_factors(&rest);
    for &(m, _) in &cyc {
        if euler_phi(m) as usize <= max_deg {
            found.push(cyclotomic(m));
        }
    }
    let sqfree = rest.squarefree_part().primitive_part();
    if sqfree.degree() >= 1 {
        found.extend(search_noncyclotomic(&sqfree, max_deg)?);
    }

    found.sort_by(|a, b| a.canonical_cmp(b));
    found.dedup();
    let mut remainder = input.clone();
    let mut factors = Vec::with_capacity(found.len());
    for f in found {
        let mut e = 0;
        while let Some(q) = remainder.exact_div(&f) {
            remainder = q;
            e += 1;
        }
        factors.push((f, e));
    }
    let product: Polynomial = factors
        .iter()
        .map(|(f, e)| f.pow(*e as u32))
        .product::<Polynomial>();
    let certified = &product * &remainder == input
        && factors.iter().all(|(_, e)| *e > 0)
        && remainder.is_integral();
    Ok(FactorSearch {
        input,
        factors,
        remainder,
        certified,
    })
}

fn search_noncyclotomic(s: &Polynomial, max_deg: usize) -> Result<Vec<Polynomial>> {
    let approx = complex_roots(s, super::DEFAULT_ROOT_TOL)?;
    let mut last_reason = String::new();
    for level in 0..=ESCALATIONS {
        let bits = BASE_BITS << level;
        match Search::run(s, &approx, bits, max_deg) {
            Ok(found) => return Ok(found),
            Err(Attempt::Ambiguous(reason)) => last_reason = reason,
            Err(Attempt::Fatal(e)) => return Err(e),
        }
    }
    Err(Error::Numeric {
        message: format!(
            "factor search stayed ambiguous after {ESCALATIONS} precision escalations: {last_reason}"
        ),
        best: approx,
    })
}

enum Attempt {
    Ambiguous(String),
    Fatal(Error),
}

fn ambiguous<T>(msg: impl Into<String>) -> std::result::Result<T, Attempt> {
    Err(Attempt::Ambiguous(msg.into()))
}

// ---- fixed-point helpers: a value v is stored as round(v·2^bits) ----

fn fx_from_f64(x: f64, bits: u64) -> BigInt {
    let m = BigInt::from_f64((x * 2f64.powi(60)).round()).unwrap_or_default();
    m << (bits - 60)
}

fn fx_to_f64(v: &BigInt, bits: u64) -> f64 {
    let nb = v.bits();
    let shift = nb.saturating_sub(60);
    let m = (v >> shift).to_f64().unwrap_or(0.0);
    let e = shift as i64 - bits as i64;
    if e < -1070 {
        0.0
    } else {
        m * 2f64.powi(e as i32)
    }
}

#[derive(Clone, Debug)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

impl Cx {
    fn zero() -> Self {
        Cx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn mul(&self, o: &Cx, bits: u64) -> Cx {
        Cx {
            re: (&self.re * &o.re - &self.im * &o.im) >> bits,
            im: (&self.re * &o.im + &self.im * &o.re) >> bits,
        }
    }

    fn div(&self, o: &Cx, bits: u64) -> Option<Cx> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        Some(Cx {
            re: ((&self.re * &o.re + &self.im * &o.im) << bits) / &den,
            im: ((&self.im * &o.re - &self.re * &o.im) << bits) / &den,
        })
    }

    fn abs_f64(&self, bits: u64) -> f64 {
        fx_to_f64(&self.re, bits).hypot(fx_to_f64(&self.im, bits))
    }

    fn to_c64(&self, bits: u64) -> Complex64 {
        Complex64::new(fx_to_f64(&self.re, bits), fx_to_f64(&self.im, bits))
    }
}

struct Poly<'a> {
    coeffs: &'a [BigInt],
    coeffs_f64: Vec<f64>,
}

impl Poly<'_> {
    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn eval(&self, z: &Cx, bits: u64) -> (Cx, Cx) {
        let mut p = Cx::zero();
        let mut dp = Cx::zero();
        for a in self.coeffs.iter().rev() {
            let t = dp.mul(z, bits);
            dp = Cx {
                re: t.re + &p.re,
                im: t.im + &p.im,
            };
            let t = p.mul(z, bits);
            p = Cx {
                re: t.re + (a << bits),
                im: t.im,
            };
        }
        (p, dp)
    }

    // Σ|c_i| r^i
    fn majorant(&self, r: f64) -> f64 {
        self.coeffs_f64.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
    }
}

/// Newton refinement followed by an inclusion radius: some root of the
/// polynomial lies within `deg·|p(z)/p'(z)|` of `z`, inflated to cover the
/// fixed-point evaluation error.
fn refine(
    f: &Poly<'_>,
    start: Complex64,
    bits: u64,
    real: bool,
) -> std::result::Result<(Cx, f64), Attempt> {
    let mut z = Cx {
        re: fx_from_f64(start.re, bits),
        im: if real {
            BigInt::zero()
        } else {
            fx_from_f64(start.im, bits)
        },
    };
    let tiny = BigInt::one() << 8;
    let iterations = 16 + 4 * (bits / 64).ilog2() as usize;
    for _ in 0..iterations {
        let (p, dp) = f.eval(&z, bits);
        let Some(mut step) = p.div(&dp, bits) else {
            return ambiguous("vanishing derivative during refinement");
        };
        if real {
            step.im = BigInt::zero();
        }
        z.re -= &step.re;
        z.im -= &step.im;
        if step.re.abs() < tiny && step.im.abs() < tiny {
            break;
        }
    }
    let (p, dp) = f.eval(&z, bits);
    let n = f.deg() as f64;
    let zabs = z.abs_f64(bits);
    let eps = 2f64.powi(-(bits as i32) + 4);
    let err_p = (n + 2.0) * f.majorant(zabs + 1.0) * eps;
    let err_dp = (n + 2.0) * n * f.majorant(zabs + 1.0) * eps;
    let dp_lo = dp.abs_f64(bits) - err_dp;
    if dp_lo <= 0.0 || !dp_lo.is_finite() {
        return ambiguous("derivative too small to bound the root");
    }
    let radius = n * (p.abs_f64(bits) + err_p) / dp_lo * (1.0 + 1e-9)
        + 2f64.powi(-(bits as i32) + 10);
    if !radius.is_finite() {
        return ambiguous("unbounded inclusion radius");
    }
    Ok((z, radius))
}

/// A real root or a conjugate pair, with its monic real factor in fixed point.
#[derive(Clone, Debug)]
struct Unit {
    poly: Vec<BigInt>,
    abs: f64,
    radius: f64,
}

impl Unit {
    fn degree(&self) -> usize {
        self.poly.len() - 1
    }
}

fn build_units(f: &Poly<'_>, approx: &[Complex64], bits: u64) -> std::result::Result<Vec<Unit>, Attempt> {
    let mut centers = Vec::with_capacity(approx.len());
    for &z0 in approx {
        let (z, r) = refine(f, z0, bits, false)?;
        let zi = fx_to_f64(&z.im, bits);
        if zi.abs() <= r {
            centers.push(refine(f, Complex64::new(z0.re, 0.0), bits, true)?);
        } else {
            centers.push((z, r));
        }
    }
    let c64: Vec<Complex64> = centers.iter().map(|(z, _)| z.to_c64(bits)).collect();
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            let gap = (c64[i] - c64[j]).norm();
            if gap <= (centers[i].1 + centers[j].1) * (1.0 + 1e-9) {
                return ambiguous("overlapping root enclosures");
            }
        }
    }

    let one = BigInt::one() << bits;
    let mut units = Vec::new();
    let mut paired = vec![false; centers.len()];
    for i in 0..centers.len() {
        let (z, r) = &centers[i];
        if z.im.is_zero() {
            units.push(Unit {
                poly: vec![-z.re.clone(), one.clone()],
                abs: c64[i].norm(),
                radius: *r,
            });
            continue;
        }
        if z.im.is_negative() {
            continue;
        }
        let mirror = c64[i].conj();
        let partners: Vec<usize> = (0..centers.len())
            .filter(|&j| j != i && !centers[j].0.im.is_positive())
            .filter(|&j| (c64[j] - mirror).norm() <= (r + centers[j].1) * (1.0 + 1e-9))
            .collect();
        if partners.len() != 1 || paired[partners[0]] {
            return ambiguous("conjugate pairing is not unique");
        }
        paired[partners[0]] = true;
        let norm2 = (&z.re * &z.re + &z.im * &z.im) >> bits;
        units.push(Unit {
            poly: vec![norm2, -(&z.re << 1u32), one.clone()],
            abs: c64[i].norm(),
            radius: *r,
        });
    }
    let pair_count = centers.iter().filter(|(z, _)| z.im.is_negative()).count();
    if paired.iter().filter(|&&p| p).count() != pair_count {
        return ambiguous("unpaired non-real root");
    }
    Ok(units)
}

fn mul_fixed(a: &[BigInt], b: &[BigInt], bits: u64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.into_iter().map(|c| c >> bits).collect()
}

/// Coefficientwise bound on `|e_j(roots) - e_j(centers)|` by telescoping the
/// majorant `Π(X + |z_i| + δ_i) - Π(X + |z_i|)`, plus fixed-point rounding.
fn coefficient_radius(roots: &[(f64, f64)], bits: u64) -> Vec<f64> {
    let k = roots.len();
    let mut total = vec![0.0f64; k + 1];
    for i in 0..k {
        let mut term = vec![roots[i].1];
        for (j, &(a, d)) in roots.iter().enumerate() {
            if j == i {
                continue;
            }
            let c = if j < i { a + d } else { a };
            let mut next = vec![0.0; term.len() + 1];
            for (t, v) in term.iter().enumerate() {
                next[t] += v * c;
                next[t + 1] += v;
            }
            term = next;
        }
        for (t, v) in term.iter().enumerate() {
            total[t] += v;
        }
    }
    let scale: f64 = roots.iter().map(|(a, d)| 1.0 + a + d).product();
    let rounding = (k as f64 + 2.0) * scale * 2f64.powi(-(bits as i32) + 10);
    total
        .into_iter()
        .map(|v| v * (1.0 + 1e-9) + rounding)
        .collect()
}

fn positive_divisors(n: &BigInt) -> std::result::Result<Vec<BigInt>, Attempt> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= MAX_LEAD_FOR_DIVISORS)
        .ok_or_else(|| {
            Attempt::Fatal(Error::Resource(
                "leading coefficient too large for divisor enumeration".into(),
            ))
        })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small.into_iter().map(BigInt::from).collect())
}

struct Search {
    bits: u64,
}

impl Search {
    fn run(
        s: &Polynomial,
        approx: &[Complex64],
        bits: u64,
        max_deg: usize,
    ) -> std::result::Result<Vec<Polynomial>, Attempt> {
        let coeffs = s.to_integer_coeffs().expect("primitive part is integral");
        let poly = Poly {
            coeffs_f64: coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect(),
            coeffs: &coeffs,
        };
        let mut units = build_units(&poly, approx, bits)?;
        let search = Search { bits };
        let mut remaining = s.clone();
        let mut found = Vec::new();
        let mut k = 1;
        while k <= max_deg && 2 * k <= remaining.degree() {
            match search.find_degree(&remaining, &units, k)? {
                Some((used, g)) => {
                    remaining = remaining.exact_div(&g).expect("certified by trial division");
                    units = units
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !used.contains(i))
                        .map(|(_, u)| u)
                        .collect();
                    found.push(g);
                }
                None => k += 1,
            }
        }
        if (1..=max_deg).contains(&remaining.degree()) {
            found.push(remaining.primitive_part());
        }
        Ok(found)
    }

    fn find_degree(
        &self,
        r: &Polynomial,
        units: &[Unit],
        k: usize,
    ) -> std::result::Result<Option<(Vec<usize>, Polynomial)>, Attempt> {
        let lead = r.lead().to_integer();
        for ell in positive_divisors(&lead)? {
            let one = vec![BigInt::one() << self.bits];
            let mut chosen = Vec::new();
            if let Some(hit) = self.dfs(r, units, k, &ell, 0, &one, 0, &mut chosen)? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        r: &Polynomial,
        units: &[Unit],
        k: usize,
        ell: &BigInt,
        start: usize,
        partial: &[BigInt],
        deg: usize,
        chosen: &mut Vec<usize>,
    ) -> std::result::Result<Option<(Vec<usize>, Polynomial)>, Attempt> {
        if deg == k {
            return Ok(self
                .candidate(r, units, chosen, ell, partial)?
                .map(|g| (chosen.clone(), g)));
        }
        for i in start..units.len() {
            let ud = units[i].degree();
            if deg + ud > k {
                continue;
            }
            let next = mul_fixed(partial, &units[i].poly, self.bits);
            chosen.push(i);
            let hit = self.dfs(r, units, k, ell, i + 1, &next, deg + ud, chosen)?;
            chosen.pop();
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }

    fn candidate(
        &self,
        r: &Polynomial,
        units: &[Unit],
        chosen: &[usize],
        ell: &BigInt,
        monic: &[BigInt],
    ) -> std::result::Result<Option<Polynomial>, Attempt> {
        let k = monic.len() - 1;
        let mut roots = Vec::with_capacity(k);
        for &i in chosen {
            for _ in 0..units[i].degree() {
                roots.push((units[i].abs, units[i].radius));
            }
        }
        let radius = coefficient_radius(&roots, self.bits);
        let ell_f = ell.to_f64().unwrap_or(f64::MAX);
        let mut order: Vec<usize> = vec![0];
        if k >= 2 {
            order.push(k - 1);
        }
        order.extend(1..k.saturating_sub(1));
        let mut ints = vec![BigInt::zero(); k + 1];
        ints[k] = ell.clone();
        let unit = BigInt::one() << self.bits;
        for j in order {
            let center = ell * &monic[j];
            let rho = radius[j] * ell_f;
            let rho_fx = (BigInt::from_f64((rho * 2f64.powi(60)).ceil())
                .ok_or_else(|| Attempt::Ambiguous("coefficient radius overflow".into()))?
                << (self.bits - 60))
                + 1;
            let lo: BigInt = Integer::div_ceil(&(&center - &rho_fx), &unit);
            let hi: BigInt = Integer::div_floor(&(&center + &rho_fx), &unit);
            if lo > hi {
                return Ok(None);
            }
            if lo != hi {
                return ambiguous("several integers within a coefficient window");
            }
            ints[j] = lo;
        }
        if ints[0].is_zero() {
            return Ok(None);
        }
        let g = Polynomial::from_bigints(ints);
        Ok(r.is_divisible_by(&g).then(|| g.primitive_part()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn sorted(mut v: Vec<Polynomial>) -> Vec<Polynomial> {
        v.sort_by(|a, b| a.canonical_cmp(b));
        v
    }

    #[test]
    fn degree_seven_trinomial() {
        let f = p(&[1, 0, -2, 0, 0, 0, 0, 1]);
        let got = integer_factors_upto(&f, 3).unwrap();
        assert_eq!(
            got,
            sorted(vec![p(&[-1, 1]), p(&[1, 1, 0, 1]), p(&[-1, 0, 1, 1])])
        );
    }

    #[test]
    fn plus_two_quartic() {
        let got = integer_factors_upto(&p(&[-2, 0, 1, 0, 1]), 2).unwrap();
        assert_eq!(got, sorted(vec![p(&[-1, 1]), p(&[1, 1]), p(&[2, 0, 1])]));
    }

    #[test]
    fn cyclotomic_input() {
        assert_eq!(integer_factors_upto(&p(&[1, 1, 1]), 2).unwrap(), vec![p(&[1, 1, 1])]);
    }

    #[test]
    fn non_monic_and_repeated() {
        // (2X^2 + 2X + 1)^2 (X - 1) X (3X - 2)
        let f = &(&p(&[1, 2, 2]).pow(2) * &p(&[-1, 1])) * &(&Polynomial::x() * &p(&[-2, 3]));
        let s = integer_factor_search(&f, 4).unwrap();
        assert!(s.complete());
        let fs: Vec<_> = s.factors.iter().map(|(f, e)| (f.clone(), *e)).collect();
        assert!(fs.contains(&(p(&[1, 2, 2]), 2)));
        assert!(fs.contains(&(p(&[-2, 3]), 1)));
        assert!(fs.contains(&(Polynomial::x(), 1)));
        assert!(fs.contains(&(p(&[-1, 1]), 1)));
    }

    #[test]
    fn irreducible_reported_only_within_bound() {
        let f = p(&[-1, -1, 0, 1]);
        assert_eq!(integer_factors_upto(&f, 3).unwrap(), vec![f.clone()]);
        assert!(integer_factors_upto(&f, 2).unwrap().is_empty());
        assert!(!integer_factor_search(&f, 2).unwrap().complete());
    }

    #[test]
    fn neighbouring_real_roots() {
        let f = &p(&[-2, 0, 1]) * &p(&[-10001, 0, 10000]);
        let got = integer_factors_upto(&f, 4).unwrap();
        assert_eq!(got, sorted(vec![p(&[-2, 0, 1]), p(&[-10001, 0, 10000])]));
    }

    #[test]
    fn rejects_constants() {
        assert!(matches!(integer_factors_upto(&p(&[5]), 3), Err(Error::Precondition(_))));
    }
}
