#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `a + b√5`, kept separate from the library's field type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q5 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Q5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Q5 { a, b }
    }

    pub fn one() -> Self {
        Q5::new(BigRational::one(), BigRational::zero())
    }

    pub fn add(&self, o: &Q5) -> Q5 {
        Q5::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Q5) -> Q5 {
        Q5::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn mul(&self, o: &Q5) -> Q5 {
        Q5::new(
            &self.a * &o.a + q(5) * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    pub fn inv(&self) -> Q5 {
        let n = &self.a * &self.a - q(5) * &self.b * &self.b;
        Q5::new(&self.a / &n, -&self.b / &n)
    }

    pub fn pow(&self, e: i64) -> Q5 {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Q5::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }
}

/// `f_n = c α^n + c' β^n` for a binary recurrence whose roots are `α, β` in Q(√5),
/// with `c` solved from `f_0, f_1`.
pub struct Binary5 {
    alpha: Q5,
    beta: Q5,
    c1: Q5,
    c2: Q5,
}

impl Binary5 {
    pub fn new(alpha: Q5, beta: Q5, f0: BigRational, f1: BigRational) -> Self {
        let f0 = Q5::new(f0, BigRational::zero());
        let f1 = Q5::new(f1, BigRational::zero());
        let d = alpha.sub(&beta).inv();
        let c1 = f1.sub(&f0.mul(&beta)).mul(&d);
        let c2 = f0.mul(&alpha).sub(&f1).mul(&d);
        Binary5 { alpha, beta, c1, c2 }
    }

    pub fn fibonacci() -> Self {
        let h = qf(1, 2);
        Binary5::new(Q5::new(h.clone(), h.clone()), Q5::new(h.clone(), -h), q(0), q(1))
    }

    pub fn value(&self, n: i64) -> BigRational {
        let v = self.c1.mul(&self.alpha.pow(n)).add(&self.c2.mul(&self.beta.pow(n)));
        assert!(v.b.is_zero(), "irrational value at {n}");
        v.a
    }
}

/// `f_lo..=f_hi` for `lo >= 0` by forward stepping over the integers.
/// `coeffs` is `[a_{d-1}, ..., a_0]`.
pub fn int_sequence(coeffs: &[i64], init: &[i64], hi: usize) -> Vec<BigInt> {
    let d = coeffs.len();
    let mut v: Vec<BigInt> = init.iter().map(|&x| BigInt::from(x)).collect();
    while v.len() <= hi {
        let n = v.len();
        let next: BigInt = (0..d).map(|i| BigInt::from(coeffs[i]) * &v[n - 1 - i]).sum();
        v.push(next);
    }
    v.truncate(hi + 1);
    v
}

/// `(mean, outer_lo, outer_hi, [f_outer_lo, f_mean, f_outer_hi])` for every
/// `f_m + f_k = 2 f_n` on `values[0..]` with distinct indices and values.
pub type NaiveAp = (i64, i64, i64, [BigInt; 3]);

pub fn naive_aps(values: &[BigInt], allow_zero_mean: bool) -> Vec<NaiveAp> {
    let len = values.len();
    let mut out = Vec::new();
    for n in 0..len {
        if !allow_zero_mean && values[n].is_zero() {
            continue;
        }
        for m in 0..len {
            for k in (m + 1)..len {
                if m == n || k == n {
                    continue;
                }
                let (vm, vn, vk) = (&values[m], &values[n], &values[k]);
                if vm == vn || vn == vk || vm == vk {
                    continue;
                }
                if vm + vk == vn + vn {
                    out.push((n as i64, m as i64, k as i64, [vm.clone(), vn.clone(), vk.clone()]));
                }
            }
        }
    }
    out.sort_by_key(|s| (s.0, s.1, s.2));
    out
}
