#![allow(dead_code)]

use lcalc::arith::{rat, Rational, Scalar};
use lcalc::conformal::{ConformalAlgebra, ConformalElement};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// A random element `Σ c ∂^d g` of `alg` with rational coefficients.
/// Central generators only appear underived.
pub fn element(alg: &ConformalAlgebra, max_terms: usize) -> impl Strategy<Value = ConformalElement> {
    let rank = alg.rank();
    let torsion: Vec<bool> = (0..rank).map(|i| alg.generators().is_torsion(i)).collect();
    prop::collection::vec((0..rank, 0usize..3, small_rational()), 1..=max_terms).prop_map(move |terms| {
        let mut e = ConformalElement::zero();
        for (g, d, c) in terms {
            let d = if torsion[g] { 0 } else { d };
            e.add_term(g, d, &Scalar::from_rational(c));
        }
        e
    })
}

pub fn generators(alg: &ConformalAlgebra) -> Vec<ConformalElement> {
    (0..alg.rank()).map(|i| alg.generators().generator(i)).collect()
}

/// Builtins with every parameter set to a nonzero value.
pub fn specialized_builtins() -> Vec<ConformalAlgebra> {
    let values = [("c", rat(1, 2)), ("k", rat(3, 1))];
    lcalc::dsl::BUILTIN_NAMES
        .iter()
        .map(|n| if *n == "abelian_n" { "abelian_3" } else { n })
        .map(|n| {
            let alg = lcalc::dsl::builtin(n).expect("builtin");
            let set = values
                .iter()
                .filter(|(p, _)| alg.params().iter().any(|q| q == p))
                .map(|(p, v)| (p.to_string(), v.clone()))
                .collect();
            alg.specialize(&set).expect("declared parameters")
        })
        .collect()
}
