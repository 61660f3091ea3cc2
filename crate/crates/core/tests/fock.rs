use lcalc::arith::{int, Rational};
use lcalc::fock::{basis_up_to, Cutoff, FockError, FockState, FockVertex, Monomial};
use num_traits::Zero;
use proptest::prelude::*;

/// `a_(k)` of the generator, straight from the oscillator picture.
fn gen_mode(k: i64, c: &FockState) -> FockState {
    let mut out = FockState::zero();
    if k == 0 {
        return out;
    }
    for (m, coef) in c.terms() {
        if k < 0 {
            out.add_term(m.times((-k) as u32), coef.clone());
        } else if let Some((mult, rest)) = m.derivative(k as u32) {
            out.add_term(rest, coef * int(k * mult as i64));
        }
    }
    out
}

/// `(Ta)_(n) = −n a_(n−1)`
fn ta_mode(n: i64, c: &FockState) -> FockState {
    gen_mode(n - 1, c).scale(&int(-n))
}

/// `:X Y:_(n) c` for fields with annihilation modes `≥ 0`, where `X = a`.
fn normal_ordered(n: i64, c: &FockState, y: impl Fn(i64, &FockState) -> FockState) -> FockState {
    let wc = c.max_weight() as i64;
    let mut out = FockState::zero();
    for k in (n - 2 - wc)..0 {
        out.add_scaled(&gen_mode(k, &y(n - k - 1, c)), &int(1));
    }
    for k in 0..=wc {
        out.add_scaled(&y(n - k - 1, &gen_mode(k, c)), &int(1));
    }
    out
}

fn oracle(b: &str, n: i64, c: &FockState) -> FockState {
    match b {
        "x1" => gen_mode(n, c),
        "x2" => ta_mode(n, c),
        "x1^2" => normal_ordered(n, c, gen_mode),
        "x1*x2" => normal_ordered(n, c, ta_mode),
        _ => unreachable!(),
    }
}

fn basis_state(max_weight: usize) -> impl Strategy<Value = FockState> {
    let basis = basis_up_to(max_weight);
    (0..basis.len()).prop_map(move |i| FockState::monomial(basis[i].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modes_match_oscillator_oracle(
        b in prop::sample::select(vec!["x1", "x2", "x1^2", "x1*x2"]),
        n in -4i64..6,
        c in basis_state(5),
    ) {
        let v = FockVertex::new(Cutoff::new(14));
        let got = v.mode(&FockState::parse(b).unwrap(), n, &c);
        prop_assert_eq!(got, oracle(b, n, &c));
    }

    #[test]
    fn weight_bookkeeping(b in basis_state(4), c in basis_state(4), n in -4i64..8) {
        let v = FockVertex::new(Cutoff::new(12));
        let out = v.mode_action(&b, n, &c).unwrap();
        let expected = b.max_weight() as i64 + c.max_weight() as i64 - n - 1;
        for (m, coef) in out.terms() {
            prop_assert!(!coef.is_zero());
            prop_assert_eq!(m.weight() as i64, expected);
        }
    }

    #[test]
    fn modes_are_linear(
        b in basis_state(3), c1 in basis_state(4), c2 in basis_state(4),
        n in -3i64..5, s in -4i64..4,
    ) {
        let v = FockVertex::new(Cutoff::new(12));
        let combo = c1.plus(&c2.scale(&int(s)));
        let lhs = v.mode(&b, n, &combo);
        let rhs = v.mode(&b, n, &c1).plus(&v.mode(&b, n, &c2).scale(&int(s)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn sources_above_limit_are_rejected() {
    let v = FockVertex::new(Cutoff::with_slack(6, 2));
    let heavy = FockState::monomial(Monomial::new(vec![9]));
    assert!(matches!(
        v.mode_action(&heavy, 0, &FockState::vacuum()),
        Err(FockError::WeightExceeded { weight: 9, limit: 8 })
    ));
}

#[test]
fn creation_and_heisenberg_relation() {
    let v = FockVertex::new(Cutoff::new(10));
    let a = FockState::var(1);
    let vac = FockState::vacuum();
    assert_eq!(v.mode(&a, -1, &vac), a);
    for c in basis_up_to(4).into_iter().map(FockState::monomial) {
        for k in -3i64..=3 {
            for l in -3i64..=3 {
                let lhs = v.mode(&a, k, &v.mode(&a, l, &c)).minus(&v.mode(&a, l, &v.mode(&a, k, &c)));
                let expected = if k + l == 0 { c.scale(&Rational::from_integer(k.into())) } else { FockState::zero() };
                assert_eq!(lhs, expected, "[a_{k}, a_{l}] on {c}");
            }
        }
    }
}
