use std::collections::{BTreeMap, BTreeSet};

use lcalc::arith::{factorial, Rational};
use lcalc::wick::{factorial_det_check, factorial_matrix, forward_expand, separate, window_start, Laurent, LaurentFamily};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

mod common;

fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let t = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 { t } else { -t }
        })
        .fold(Rational::zero(), |a, b| a + b)
}

#[test]
fn determinant_grid_against_cofactor_expansion() {
    let mut cases = 0;
    for m in 0..=6usize {
        for n in m.max(1)..=12 {
            let c = factorial_det_check(m, n).unwrap();
            assert!(c.equal, "m={m} N={n}");
            assert_eq!(c.computed, cofactor_det(&factorial_matrix(m, n).unwrap()), "m={m} N={n}");
            let num: BigInt = (1..=m as u64).map(factorial).product();
            let den: BigInt = (0..=m as u64).map(|k| factorial(n as u64 + k)).product();
            assert_eq!(c.closed_form, Rational::new(num, den));
            cases += 1;
        }
    }
    assert_eq!(cases, 69);
}

/// Random `LaurentFamily` of λ-degree `≤ deg` with z-exponents in `[−4, 4]`
/// and coordinates drawn from `coords`.
fn family(deg: usize, coords: Vec<usize>) -> impl Strategy<Value = LaurentFamily> {
    prop::collection::vec(
        (0..=deg, -4i64..=4, prop::sample::select(coords), common::small_rational()),
        0..8,
    )
    .prop_map(|terms| {
        let mut entries: BTreeMap<usize, Laurent> = BTreeMap::new();
        for (i, e, k, c) in terms {
            entries.entry(i).or_default().add_term(e, k, c);
        }
        entries.into_iter().collect()
    })
}

fn problem() -> impl Strategy<Value = (usize, usize, LaurentFamily, LaurentFamily)> {
    (0usize..=4, 0usize..=4).prop_flat_map(|(m, n)| (Just(m), Just(n), family(m, vec![0, 1, 2]), family(n, vec![0, 1, 2])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn separation_round_trip((m, n, p, q) in problem()) {
        let n0 = window_start(m, n);
        let coeffs = forward_expand(&p, &q, n0..=n0 + m);
        let rec = separate(&coeffs, m, n).unwrap();
        prop_assert_eq!(&rec, &p);
        // e^{λz}·p + (input − e^{λz}·p) reproduces every coefficient
        let again = forward_expand(&rec, &LaurentFamily::new(), n0..=n0 + m);
        for (d, c) in &coeffs {
            prop_assert_eq!(&again[d], c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn recovered_coefficients_stay_in_subspace(
        u in prop::collection::btree_set(0usize..6, 1..4),
        m in 0usize..=4,
        n in 0usize..=4,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let inside: Vec<usize> = u.iter().copied().collect();
        let outside: Vec<usize> = (0..6).filter(|k| !u.contains(k)).collect();
        let mut pick = |coords: &[usize], deg: usize| -> LaurentFamily {
            (0..=deg)
                .map(|i| {
                    let mut l = Laurent::zero();
                    for _ in 0..3 {
                        if coords.is_empty() { break; }
                        let k = coords[rng.gen_range(0..coords.len())];
                        let c = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into());
                        l.add_term(rng.gen_range(-4..=4), k, c);
                    }
                    (i, l)
                })
                .collect()
        };
        let p = pick(&inside, m);
        let q = pick(&outside, n);
        let n0 = window_start(m, n);
        let coeffs = forward_expand(&p, &q, n0..=n0 + m);
        // the input lies in U((z)) because only degrees above deg q are used
        for c in coeffs.values() {
            prop_assert!(c.support().all(|k| u.contains(&k)));
        }
        let rec = separate(&coeffs, m, n).unwrap();
        let used: BTreeSet<usize> = rec.entries.values().flat_map(|l| l.support().collect::<Vec<_>>()).collect();
        prop_assert!(used.is_subset(&u));
    }
}
