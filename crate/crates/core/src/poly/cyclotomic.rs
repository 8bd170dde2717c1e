use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::Polynomial;

fn cache() -> &'static Mutex<HashMap<u64, Vec<i128>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i128>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// Exact division by a monic integer polynomial.
fn div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        if c != 0 {
            for (j, dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem[..dd].iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_ints(n: u64) -> Vec<i128> {
    if let Some(c) = cache().lock().expect("cache lock").get(&n) {
        return c.clone();
    }
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = div_monic(&num, &cyclotomic_ints(d));
    }
    cache().lock().expect("cache lock").insert(n, num.clone());
    num
}

/// The `n`-th cyclotomic polynomial. Panics if `n == 0`.
pub fn cyclotomic(n: u64) -> Polynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    Polynomial::from_ints(
        &cyclotomic_ints(n)
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
            .collect::<Vec<_>>(),
    )
}

/// Cyclotomic factors `(m, multiplicity)` of `p` in ascending `m`, and the
/// cofactor. Orders are searched up to `2·deg(p)²`, skipping `m` with
/// `φ(m) > deg(p)`.
pub fn cyclotomic_factors(p: &Polynomial) -> (Vec<(u64, usize)>, Polynomial) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    let deg = p.degree() as u64;
    if p.is_zero() {
        return (found, rest);
    }
    for m in 1..=2 * deg * deg {
        let phi = euler_phi(m);
        if phi > rest.degree() as u64 {
            continue;
        }
        let c = cyclotomic(m);
        let mut e = 0;
        while let Some(q) = rest.exact_div(&c) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            found.push((m, e));
        }
    }
    (found, rest)
}

/// `(C, Q)` with `p = C·Q`, `C` the monic product of all cyclotomic factors.
pub fn cyclotomic_part(p: &Polynomial) -> (Polynomial, Polynomial) {
    let (found, rest) = cyclotomic_factors(p);
    let c = found
        .iter()
        .map(|&(m, e)| cyclotomic(m).pow(e as u32))
        .product();
    (c, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(105).degree(), 48);
        assert_eq!(cyclotomic(105).coeff(7), crate::exactnum::rat(-2));
    }

    #[test]
    fn product_over_divisors_is_x_pow_minus_one() {
        for n in 1..=40u64 {
            let prod: Polynomial = (1..=n).filter(|d| n % d == 0).map(cyclotomic).product();
            assert_eq!(prod, Polynomial::x_pow_minus_one(n as usize));
            assert_eq!(cyclotomic(n).degree() as u64, euler_phi(n));
        }
    }

    #[test]
    fn cyclotomic_part_examples() {
        let (c, q) = cyclotomic_part(&p(&[1, 0, -2, 0, 1]));
        assert_eq!(c, &p(&[-1, 1]).pow(2) * &p(&[1, 1]).pow(2));
        assert_eq!(q, Polynomial::one());
        let (c, q) = cyclotomic_part(&p(&[1, 0, -2, 1]));
        assert_eq!((c, q), (p(&[-1, 1]), p(&[-1, -1, 1])));
        let (c, q) = cyclotomic_part(&p(&[-1, -1, 1]));
        assert_eq!((c, q), (Polynomial::one(), p(&[-1, -1, 1])));
    }

    #[test]
    fn keeps_leading_coefficient_in_cofactor() {
        let f = p(&[-1, -1, 0, 2]);
        let (c, q) = cyclotomic_part(&f);
        assert_eq!(c, p(&[-1, 1]));
        assert_eq!(&c * &q, f);
    }
}
