mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{int_sequence, naive_aps, q, qf, Binary5, Q5};
use recap::ap_engine::brute_force_aps;
use recap::recurrence::{eval_at, quad_closed_form, LinearRecurrence};

#[test]
fn binet_matches_recurrence() {
    let oracle = Binary5::fibonacci();
    let f = LinearRecurrence::fibonacci();
    let vals = f.sequence().range(-20, 200);
    for (n, v) in (-20..=200).zip(&vals) {
        assert_eq!(oracle.value(n), *v, "f_{n}");
    }
    assert_eq!(oracle.value(-1), q(1));
    assert_eq!(oracle.value(-2), q(-1));
}

#[test]
fn library_closed_form_matches_oracle() {
    // X^2 - 4X - 1 has roots 2 ± √5
    let rec = LinearRecurrence::from_ints(&[4, 1], &[-3, 1]).unwrap();
    let oracle = Binary5::new(Q5::new(q(2), q(1)), Q5::new(q(2), q(-1)), q(-3), q(1));
    let cf = quad_closed_form(&rec).unwrap();
    for n in -30..=30 {
        assert_eq!(cf.eval(n), oracle.value(n), "n = {n}");
    }
}

#[test]
fn rational_initial_values_match_oracle() {
    let rec = LinearRecurrence::new(vec![q(1), q(1)], vec![qf(1, 3), qf(-2, 7)]).unwrap();
    let oracle = Binary5::new(
        Q5::new(qf(1, 2), qf(1, 2)),
        Q5::new(qf(1, 2), qf(-1, 2)),
        qf(1, 3),
        qf(-2, 7),
    );
    for n in -25..=60 {
        assert_eq!(eval_at(&rec, n), oracle.value(n));
    }
}

#[test]
fn integer_sequence_matches_evaluator() {
    let coeffs = [2, -1, 3];
    let init = [1, -2, 0];
    let rec = LinearRecurrence::from_ints(&coeffs, &init).unwrap();
    let want = int_sequence(&coeffs, &init, 80);
    let got = rec.sequence().range(0, 80);
    for (w, g) in want.iter().zip(&got) {
        assert_eq!(g, &num_rational::BigRational::from_integer(w.clone()));
    }
}

#[test]
fn search_matches_naive_oracle_on_random_recurrences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let d = rng.gen_range(1..=4usize);
        let mut coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
        if coeffs[d - 1] == 0 {
            coeffs[d - 1] = 1;
        }
        let init: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
        let rec = LinearRecurrence::from_ints(&coeffs, &init).unwrap();
        let values = int_sequence(&coeffs, &init, 30);
        for allow in [false, true] {
            let want = naive_aps(&values, allow);
            let got: Vec<(i64, i64, i64, [BigInt; 3])> = brute_force_aps(&rec, 0, 30, allow)
                .unwrap()
                .into_iter()
                .map(|s| (s.mean, s.outer[0], s.outer[1], s.values.map(|x| x.to_integer())))
                .collect();
            assert_eq!(got, want, "coeffs {coeffs:?} init {init:?} allow_zero_mean {allow}");
        }
    }
}

#[test]
fn constant_and_periodic_sequences_have_no_progressions() {
    let constant = LinearRecurrence::from_ints(&[1], &[5]).unwrap();
    assert!(brute_force_aps(&constant, -10, 10, true).unwrap().is_empty());
    let alternating = LinearRecurrence::from_ints(&[-1], &[3]).unwrap();
    assert!(brute_force_aps(&alternating, -10, 10, true).unwrap().is_empty());
    assert!(naive_aps(&int_sequence(&[-1], &[3], 20), true).is_empty());
}
