//! Exact arithmetic kernel.
//!
//! Everything above this module works over the rationals extended by formal
//! parameters (a central charge, a level). Nothing here is approximate.

mod poly;
mod ratpoly;
mod scalar;

pub use poly::{poly_substitute, AffineImage, BiPoly, UniPoly, UnsupportedImage, Var};
pub use ratpoly::RatPoly;
pub use scalar::{ParamMonomial, Scalar};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` for any integer `n` (falling factorial over `k!`).
pub fn binomial(n: i64, k: u64) -> Rational {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    Rational::new(num, factorial(k))
}

/// Parses `p`, `-p`, `p/q` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn sign(parity_product: bool) -> Rational {
    if parity_product {
        -Rational::one()
    } else {
        Rational::one()
    }
}
