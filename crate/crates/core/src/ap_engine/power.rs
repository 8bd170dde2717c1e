use num_bigint::BigUint;
use rayon::prelude::*;

fn a_ln_a(a: u64) -> f64 {
    let x = a as f64;
    x * x.ln()
}

/// Solutions of `a^a = (2b)^b` in positive integers with `a, b <= bound`.
///
/// `a ln a` is increasing on `a >= 1`, so for each `b` a binary search finds
/// the only candidates, which are then confirmed with exact powers.
pub fn power_equation_search(bound: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (1..=bound)
        .into_par_iter()
        .flat_map_iter(|b| {
            let target = b as f64 * (2.0 * b as f64).ln();
            let (mut lo, mut hi) = (1u64, bound);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if a_ln_a(mid) < target {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            let tol = 1e-9 * target.max(1.0);
            (lo.saturating_sub(1).max(1)..=(lo + 1).min(bound))
                .filter(move |&a| (a_ln_a(a) - target).abs() <= tol)
                .filter(move |&a| {
                    let lhs = BigUint::from(a).pow(a as u32);
                    let rhs = BigUint::from(2 * b).pow(b as u32);
                    lhs == rhs
                })
                .map(move |a| (a, b))
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_solutions_small() {
        assert!(power_equation_search(2000).is_empty());
    }

    #[test]
    fn exact_check_by_brute_force() {
        for a in 1u64..=40 {
            for b in 1u64..=40 {
                let eq = BigUint::from(a).pow(a as u32) == BigUint::from(2 * b).pow(b as u32);
                assert!(!eq, "({a}, {b})");
            }
        }
    }
}
