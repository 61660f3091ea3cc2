use lcalc::arith::{poly_substitute, rat, AffineImage, Rational, Scalar, UniPoly, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;

mod common;

/// `Σ r · c^a · k^b` over random terms.
fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((common::small_rational(), 0u32..3, 0u32..3), 0..4).prop_map(|terms| {
        let mut s = Scalar::zero();
        for (r, a, b) in terms {
            let mut t = Scalar::from_rational(r);
            for _ in 0..a {
                t = &t * &Scalar::param("c");
            }
            for _ in 0..b {
                t = &t * &Scalar::param("k");
            }
            s = &s + &t;
        }
        s
    })
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

proptest! {
    #[test]
    fn scalar_ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x + &(-&x)).is_zero());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
    }

    #[test]
    fn shift_by_mu_then_mu_zero_is_identity(coeffs in prop::collection::vec(scalar(), 0..6)) {
        let p = UniPoly::new(Var::Lambda, coeffs);
        let q = poly_substitute(&p, AffineImage::SHIFT_BY_MU).unwrap();
        prop_assert_eq!(q.at_second_zero(), p);
    }

    #[test]
    fn shift_by_mu_matches_evaluation(
        coeffs in prop::collection::vec(common::small_rational(), 0..6),
        l in common::small_rational(),
        m in common::small_rational(),
    ) {
        let p = UniPoly::new(Var::Lambda, coeffs.iter().cloned().map(Scalar::from_rational).collect());
        let q = poly_substitute(&p, AffineImage::SHIFT_BY_MU).unwrap();
        let mut value = Rational::zero();
        for (&(i, j), c) in q.terms() {
            let c = c.as_rational().unwrap();
            value += c * num_traits::pow(l.clone(), i) * num_traits::pow(m.clone(), j);
        }
        prop_assert_eq!(value, eval(&coeffs, &(&l + &m)));
    }
}

#[test]
fn examples() {
    assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    let c_twelfth = Scalar::param("c").scale(&rat(1, 12));
    assert_eq!(&c_twelfth * &Scalar::from_int(2), Scalar::param("c").scale(&rat(1, 6)));
    let lam2 = UniPoly::monomial(Var::Lambda, 2, Scalar::one());
    let q = poly_substitute(&lam2, AffineImage::SHIFT_BY_MU).unwrap();
    let expected: Vec<((usize, usize), Rational)> =
        vec![((0, 2), Rational::one()), ((1, 1), rat(2, 1)), ((2, 0), Rational::one())];
    let got: Vec<((usize, usize), Rational)> = q.terms().map(|(k, c)| (*k, c.as_rational().unwrap())).collect();
    assert_eq!(got, expected);
    let five = UniPoly::new(Var::Lambda, vec![Scalar::from_int(5)]);
    assert_eq!(poly_substitute(&five, AffineImage::SHIFT_BY_MU).unwrap().at_second_zero(), five);
    let bad = AffineImage { lambda: 2, mu: 0, partial: 0 };
    assert!(poly_substitute(&five, bad).is_err());
}
