use lcalc::arith::{int, Rational, Scalar};
use lcalc::calculus::{skew_transform, LambdaBracket, LambdaPoly};
use lcalc::conformal::{
    check_jacobi, check_skew, derived_series, ideal_closure, is_ideal, lambda_coefficient_span, ConformalAlgebra,
    ConformalElement,
};
use lcalc::dsl::builtin;
use lcalc::lattice::canonical_form;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

mod common;

fn parametric_builtins() -> Vec<ConformalAlgebra> {
    ["virasoro", "heisenberg_conf", "current_sl2", "neveu_schwarz", "abelian_3"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect()
}

/// `λ · P`
fn times_lambda(p: &LambdaPoly<ConformalElement>) -> LambdaPoly<ConformalElement> {
    let mut out = LambdaPoly::zero();
    out.add_shifted(p, 1, &Rational::one());
    out
}

/// `(λ + ∂) · P`, with ∂ acting on coefficients.
fn times_lambda_plus_partial(alg: &ConformalAlgebra, p: &LambdaPoly<ConformalElement>) -> LambdaPoly<ConformalElement> {
    let mut out = times_lambda(p);
    out.add_shifted(&p.map(|e| alg.partial(e)), 0, &Rational::one());
    out
}

#[test]
fn sesquilinearity_on_random_pairs() {
    for alg in parametric_builtins() {
        let mut runner = TestRunner::new(ProptestConfig::with_cases(100));
        let strat = (common::element(&alg, 3), common::element(&alg, 3));
        runner
            .run(&strat, |(x, y)| {
                let base = alg.bracket(&x, &y).unwrap();
                let left = alg.bracket(&alg.partial(&x), &y).unwrap();
                prop_assert_eq!(left, times_lambda(&base).scale(&int(-1)));
                let right = alg.bracket(&x, &alg.partial(&y)).unwrap();
                prop_assert_eq!(right, times_lambda_plus_partial(&alg, &base));
                Ok(())
            })
            .unwrap_or_else(|e| panic!("{}: {e}", alg.name()));
    }
}

#[test]
fn skew_transform_is_an_involution() {
    for alg in parametric_builtins() {
        let mut runner = TestRunner::new(ProptestConfig::with_cases(40));
        let strat = (prop::collection::vec(common::element(&alg, 3), 0..4), any::<bool>());
        runner
            .run(&strat, |(coeffs, odd)| {
                let p = LambdaPoly::new(coeffs);
                let twice = skew_transform(&alg, &skew_transform(&alg, &p, odd), odd);
                prop_assert_eq!(twice, p);
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn derivative_brackets_stay_in_span() {
    for alg in common::specialized_builtins() {
        let mut runner = TestRunner::new(ProptestConfig::with_cases(20));
        let strat = (common::element(&alg, 2), common::element(&alg, 2), 0usize..3, 0usize..3);
        runner
            .run(&strat, |(u, w, m, n)| {
                let span = lambda_coefficient_span(&[u.clone()], &[w.clone()], &alg).unwrap();
                let du = (0..m).fold(u, |e, _| alg.partial(&e));
                let dw = (0..n).fold(w, |e, _| alg.partial(&e));
                for c in alg.bracket(&du, &dw).unwrap().coeffs() {
                    prop_assert!(span.contains(c).unwrap());
                }
                Ok(())
            })
            .unwrap();
    }
}

/// Adds 1 to one coefficient of a non-central term in the declared table.
fn mutations(alg: &ConformalAlgebra) -> Vec<(String, ConformalAlgebra)> {
    let gens = alg.generators();
    let mut out = Vec::new();
    for (&(i, j), p) in alg.table() {
        for (k, e) in p.coeffs().iter().enumerate() {
            for (g, d, _) in e.terms() {
                if gens.is_torsion(g) {
                    continue;
                }
                let mut coeffs = p.coeffs().to_vec();
                coeffs[k].add_term(g, d, &Scalar::one());
                let label = format!("[{}, {}] lam^{k} D^{d} {}", gens.decls()[i].name, gens.decls()[j].name, gens.decls()[g].name);
                out.push((label, alg.with_bracket(i, j, LambdaPoly::new(coeffs))));
            }
        }
    }
    out
}

#[test]
fn builtins_pass_and_mutations_fail() {
    let mut mutated = 0;
    for alg in parametric_builtins() {
        assert!(check_skew(&alg).passed(), "{}", alg.name());
        assert!(check_jacobi(&alg).passed(), "{}", alg.name());
        for (label, bad) in mutations(&alg) {
            mutated += 1;
            let skew = check_skew(&bad);
            let jacobi = check_jacobi(&bad);
            let witness = skew.failures().chain(jacobi.failures()).next();
            let witness = witness.unwrap_or_else(|| panic!("{}: mutation {label} went unnoticed", alg.name()));
            assert!(witness.residual.as_deref().is_some_and(|r| r != "0"));
        }
    }
    assert!(mutated >= 6);
}

#[test]
fn commutator_of_ideals_is_ideal() {
    for alg in common::specialized_builtins() {
        let mut ideals = vec![];
        for g in common::generators(&alg) {
            ideals.push(ideal_closure(&[g], &alg).unwrap());
        }
        for s in derived_series(&alg, 6).unwrap().terms {
            ideals.push(s);
        }
        for a in &ideals {
            assert!(is_ideal(a, &alg).unwrap());
            for b in &ideals {
                let ab = lambda_coefficient_span(&a.rows(), &b.rows(), &alg).unwrap();
                assert!(is_ideal(&ab, &alg).unwrap(), "{}: [{a}, {b}] = {ab}", alg.name());
            }
        }
    }
}

#[test]
fn derived_series_descends() {
    for alg in common::specialized_builtins() {
        let series = derived_series(&alg, 6).unwrap();
        for pair in series.terms.windows(2) {
            for r in pair[1].rows() {
                assert!(pair[0].contains(&r).unwrap(), "{}", alg.name());
            }
        }
    }
}

fn sl2() -> ConformalAlgebra {
    common::specialized_builtins().remove(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form_is_confluent(
        seeds in prop::collection::vec(common::element(&sl2(), 3), 1..4),
        shuffle in any::<prop::sample::Index>(),
        which in any::<prop::sample::Index>(),
        other in any::<prop::sample::Index>(),
        f in prop::collection::vec(common::small_rational(), 0..3),
    ) {
        let alg = sl2();
        let gens = alg.generators();
        let base = canonical_form(gens, &seeds).unwrap();
        let mut rotated = seeds.clone();
        rotated.rotate_left(shuffle.index(seeds.len()));
        prop_assert_eq!(&canonical_form(gens, &rotated).unwrap(), &base);
        // g ↦ g + f(∂) g'
        let (i, j) = (which.index(seeds.len()), other.index(seeds.len()));
        if i != j {
            let mut changed = seeds.clone();
            let mut shift = ConformalElement::zero();
            let mut d = seeds[j].clone();
            for c in &f {
                shift.add_scaled(&d, &Scalar::from_rational(c.clone()));
                d = alg.partial(&d);
            }
            changed[i] = changed[i].plus(&shift);
            prop_assert_eq!(&canonical_form(gens, &changed).unwrap(), &base);
        }
    }

    #[test]
    fn membership_and_equality(
        a in prop::collection::vec(common::element(&sl2(), 3), 1..4),
        b in prop::collection::vec(common::element(&sl2(), 3), 1..4),
    ) {
        let alg = sl2();
        let gens = alg.generators();
        let m = canonical_form(gens, &a).unwrap();
        let n = canonical_form(gens, &b).unwrap();
        for r in m.rows() {
            prop_assert!(m.contains(&r).unwrap());
            prop_assert!(m.contains(&alg.partial(&r)).unwrap());
        }
        for s in &a {
            prop_assert!(m.contains(s).unwrap());
        }
        let both = m.rows().iter().all(|r| n.contains(r).unwrap()) && n.rows().iter().all(|r| m.contains(r).unwrap());
        prop_assert_eq!(m.equals(&n).unwrap(), both);
        let sum = m.sum(&n).unwrap();
        prop_assert!(sum.includes(&m).unwrap() && sum.includes(&n).unwrap());
    }
}
