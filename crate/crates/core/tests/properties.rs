use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;

use recap::ap_engine::{brute_force_aps, detect_shift_families, verify_shift_family, APFamily, APSolution};
use recap::exactnum::{ratio, Rational};
use recap::poly::{integer_factor_search, parse_polynomial, Polynomial};
use recap::recurrence::{minimalize, LinearRecurrence};

fn recurrence(max_order: usize) -> impl Strategy<Value = LinearRecurrence> {
    (1..=max_order)
        .prop_flat_map(|d| {
            (
                prop::collection::vec(-3i64..=3, d - 1),
                prop_oneof![-3i64..=-1, 1i64..=3],
                prop::collection::vec(-3i64..=3, d),
            )
        })
        .prop_filter("nonzero sequence", |(_, _, init)| init.iter().any(|&v| v != 0))
        .prop_map(|(mut c, a0, init)| {
            c.push(a0);
            LinearRecurrence::from_ints(&c, &init).unwrap()
        })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn small_factor() -> impl Strategy<Value = Polynomial> {
    prop_oneof![
        (-4i64..=4, 1i64..=2).prop_map(|(c, l)| Polynomial::from_ints(&[c, l])),
        (-3i64..=3, -3i64..=3).prop_map(|(c, b)| Polynomial::from_ints(&[c, b, 1])),
    ]
    .prop_filter("nonzero constant term", |p| !p.coeff(0).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimalize_is_idempotent_and_preserves_terms(rec in recurrence(3)) {
        let m = minimalize(&rec).unwrap();
        prop_assert!(m.order() <= rec.order());
        prop_assert_eq!(minimalize(&m).unwrap(), m.clone());
        prop_assert_eq!(rec.sequence().range(-4, 20), m.sequence().range(-4, 20));
    }

    #[test]
    fn shift_family_instances_are_found_by_search(rec in recurrence(3)) {
        let fams = detect_shift_families(&rec, 6).unwrap();
        let sols = brute_force_aps(&rec, 0, 20, true).unwrap();
        let keys: BTreeSet<(i64, i64, i64)> = sols.iter().map(APSolution::key).collect();
        for fam in fams {
            let rep = verify_shift_family(&rec, fam, -10, 10).unwrap();
            prop_assert!(rep.passed());
            let family = APFamily::Shift(fam);
            let mut seq = rec.sequence();
            for t in 0..=20 {
                let (n, m, k) = family.indices(t).unwrap();
                if [n, m, k].iter().any(|i| !(0..=20).contains(i)) {
                    continue;
                }
                let (vn, vm, vk) = (seq.get(n), seq.get(m), seq.get(k));
                if vn == vm || vn == vk || vm == vk {
                    continue;
                }
                let inst = APSolution::new(n, m, k, vn, vm, vk);
                prop_assert!(keys.contains(&inst.key()), "missing {}", inst);
                prop_assert!(family.contains(&inst));
            }
        }
    }

    #[test]
    fn every_search_result_holds(rec in recurrence(3)) {
        let mut seq = rec.sequence();
        for s in brute_force_aps(&rec, -5, 15, false).unwrap() {
            prop_assert!(s.holds());
            prop_assert!(!s.values[1].is_zero());
            prop_assert_eq!(&s.values[1], &seq.get(s.mean));
            prop_assert_eq!(&s.values[0], &seq.get(s.outer[0]));
            prop_assert_eq!(&s.values[2], &seq.get(s.outer[1]));
        }
    }

    #[test]
    fn recurrence_serde_round_trip(coeffs in prop::collection::vec(rational(), 1..4), seed in rational()) {
        prop_assume!(!coeffs.last().unwrap().is_zero());
        let init: Vec<Rational> = (0..coeffs.len()).map(|i| &seed + ratio(i as i64, 1)).collect();
        let rec = LinearRecurrence::new(coeffs, init).unwrap();
        let text = serde_json::to_string(&rec).unwrap();
        prop_assert_eq!(serde_json::from_str::<LinearRecurrence>(&text).unwrap(), rec);
    }

    #[test]
    fn polynomial_serde_and_text_round_trip(c in prop::collection::vec(rational(), 1..7)) {
        let p = Polynomial::new(c);
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Polynomial>(&json).unwrap(), p.clone());
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn solution_serde_round_trip(rec in recurrence(2)) {
        for s in brute_force_aps(&rec, 0, 12, true).unwrap() {
            let json = serde_json::to_string(&s).unwrap();
            prop_assert_eq!(serde_json::from_str::<APSolution>(&json).unwrap(), s);
        }
    }

    #[test]
    fn factor_product_reproduces_input(fs in prop::collection::vec(small_factor(), 1..4)) {
        let p: Polynomial = fs.iter().cloned().product();
        let search = integer_factor_search(&p, p.degree()).unwrap();
        prop_assert!(search.complete());
        let mut back = search.remainder.clone();
        for (f, k) in &search.factors {
            prop_assert!(p.is_divisible_by(f));
            back = &back * &f.pow(*k as u32);
        }
        prop_assert_eq!(back, search.input.clone());
        prop_assert_eq!(search.input.monic(), p.monic());
        for f in &fs {
            let f = f.primitive_part();
            if f.degree() == 1 {
                prop_assert!(search.factors.iter().any(|(g, _)| g.monic() == f.monic()));
            }
        }
    }
}
