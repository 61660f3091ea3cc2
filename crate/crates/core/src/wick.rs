//! Recovering `p(λ)` from the λ-coefficients of `e^{λz} p(λ) + q(λ)`.
//!
//! With `deg p ≤ m` and `deg q ≤ n`, the coefficient of `λ^N` for `N > n` is
//! `Σ_i z^{N−i}/(N−i)! p_i(z)`. Dividing by `z^N` leaves a linear system in
//! `p_i/z^i` whose matrix has entries `1/(N+j−i)!`; that matrix is invertible,
//! so the `p_i` are rational combinations of the input coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorial, parse_rational, Rational};
use crate::linalg::{inverse, rational_det, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WickError {
    #[error("factorial matrix needs N >= m (got m = {m}, N = {n})")]
    WindowTooLow { m: usize, n: usize },
    #[error("missing the coefficient of lambda^{0}")]
    MissingDegree(usize),
    #[error("factorial matrix is singular")]
    Singular,
    #[error("bad input: {0}")]
    Input(String),
}

/// A Laurent polynomial in `z` whose coefficients are finitely supported
/// vectors; a scalar series uses coordinate 0 only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    /// `(exponent, coordinate) → coefficient`, zeros never stored.
    terms: BTreeMap<(i64, usize), Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    /// `c · z^exp` in coordinate `coord`.
    pub fn term(exp: i64, coord: usize, c: Rational) -> Self {
        let mut l = Laurent::zero();
        l.add_term(exp, coord, c);
        l
    }

    pub fn scalar(exp: i64, c: Rational) -> Self {
        Laurent::term(exp, 0, c)
    }

    pub fn from_scalars(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut l = Laurent::zero();
        for (e, c) in terms {
            l.add_term(e, 0, c);
        }
        l
    }

    pub fn add_term(&mut self, exp: i64, coord: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((exp, coord)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(exp, coord));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64, coord: usize) -> Rational {
        self.terms.get(&(exp, coord)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, &Rational)> {
        self.terms.iter().map(|(&(e, k), c)| (e, k, c))
    }

    /// `self + c · z^shift · other`.
    pub fn add_shifted(&mut self, other: &Laurent, shift: i64, c: &Rational) {
        for (&(e, k), v) in &other.terms {
            self.add_term(e + shift, k, v * c);
        }
    }

    pub fn shifted(&self, shift: i64) -> Laurent {
        let mut out = Laurent::zero();
        out.add_shifted(self, shift, &Rational::one());
        out
    }

    pub fn plus(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_shifted(other, 0, &Rational::one());
        out
    }

    pub fn minus(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_shifted(other, 0, &-Rational::one());
        out
    }

    /// Coordinates with a nonzero entry somewhere.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().map(|&(_, k)| k)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vector = self.terms.keys().any(|&(_, k)| k != 0);
        for (i, (&(e, k), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if vector {
                write!(f, "*u{k}")?;
            }
            if e != 0 {
                write!(f, "*z^{e}")?;
            }
        }
        Ok(())
    }
}

/// `p(λ) = Σ p_i(z) λ^i` as a map from λ-degree to Laurent polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentFamily {
    pub entries: BTreeMap<usize, Laurent>,
}

impl LaurentFamily {
    pub fn new() -> Self {
        LaurentFamily::default()
    }

    pub fn get(&self, i: usize) -> Laurent {
        self.entries.get(&i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, l: Laurent) {
        if l.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, l);
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }
}

impl FromIterator<(usize, Laurent)> for LaurentFamily {
    fn from_iter<T: IntoIterator<Item = (usize, Laurent)>>(iter: T) -> Self {
        let mut f = LaurentFamily::new();
        for (i, l) in iter {
            f.set(i, l);
        }
        f
    }
}

fn inv_factorial(k: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(k as u64))
}

/// The `(m+1) × (m+1)` matrix with entries `1/(N+j−i)!`.
pub fn factorial_matrix(m: usize, n: usize) -> Result<Matrix, WickError> {
    if n < m {
        return Err(WickError::WindowTooLow { m, n });
    }
    Ok((0..=m)
        .map(|i| (0..=m).map(|j| inv_factorial(n + j - i)).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetCheck {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub computed: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub closed_form: Rational,
    pub equal: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `∏_{k=1}^m k! / ∏_{k=0}^m (N+k)!`.
pub fn closed_form_det(m: usize, n: usize) -> Rational {
    let num: BigInt = (1..=m as u64).map(factorial).product();
    let den: BigInt = (0..=m as u64).map(|k| factorial(n as u64 + k)).product();
    Rational::new(num, den)
}

pub fn factorial_det_check(m: usize, n: usize) -> Result<DetCheck, WickError> {
    let computed = rational_det(&factorial_matrix(m, n)?);
    let closed_form = closed_form_det(m, n);
    Ok(DetCheck {
        m,
        n,
        equal: computed == closed_form,
        computed,
        closed_form,
    })
}

/// λ-coefficients of `e^{λz} p(λ) + q(λ)` in degrees `degrees`.
pub fn forward_expand(
    p: &LaurentFamily,
    q: &LaurentFamily,
    degrees: impl IntoIterator<Item = usize>,
) -> BTreeMap<usize, Laurent> {
    degrees
        .into_iter()
        .map(|big_n| {
            let mut c = q.get(big_n);
            for (&i, pi) in p.entries.range(..=big_n) {
                c.add_shifted(pi, (big_n - i) as i64, &inv_factorial(big_n - i));
            }
            (big_n, c)
        })
        .collect()
}

/// First λ-degree of the window used by [`separate`].
pub fn window_start(m: usize, n: usize) -> usize {
    (n + 1).max(m)
}

/// Recovers `p` (degree `≤ m`) from the coefficients of `λ^N`,
/// `N = N₀ … N₀+m` with `N₀ = max(n+1, m)`, where `deg q ≤ n`.
pub fn separate(coefficients: &BTreeMap<usize, Laurent>, m: usize, n: usize) -> Result<LaurentFamily, WickError> {
    let n0 = window_start(m, n);
    let f = factorial_matrix(m, n0)?;
    // row k of Fᵀ pairs with λ^{N₀+k}
    let ft: Matrix = (0..=m).map(|k| (0..=m).map(|i| f[i][k].clone()).collect()).collect();
    let inv = inverse(&ft).ok_or(WickError::Singular)?;
    let rhs: Vec<Laurent> = (0..=m)
        .map(|k| {
            let big_n = n0 + k;
            coefficients
                .get(&big_n)
                .map(|c| c.shifted(-(big_n as i64)))
                .ok_or(WickError::MissingDegree(big_n))
        })
        .collect::<Result<_, _>>()?;
    Ok((0..=m)
        .map(|i| {
            let mut r = Laurent::zero();
            for (k, c) in rhs.iter().enumerate() {
                r.add_shifted(c, i as i64, &inv[i][k]);
            }
            (i, r)
        })
        .collect())
}

/// Serialized form of a separation problem: scalar Laurent coefficients
/// `{"m": 1, "n": 0, "coefficients": {"1": {"0": "1"}, ...}}` keyed by
/// λ-degree, then z-exponent.
#[derive(Clone, Debug, Deserialize)]
pub struct SeparationInput {
    pub m: usize,
    pub n: usize,
    pub coefficients: BTreeMap<String, BTreeMap<String, String>>,
}

impl SeparationInput {
    pub fn from_json(src: &str) -> Result<Self, WickError> {
        serde_json::from_str(src).map_err(|e| WickError::Input(e.to_string()))
    }

    pub fn laurent_coefficients(&self) -> Result<BTreeMap<usize, Laurent>, WickError> {
        let mut out = BTreeMap::new();
        for (deg, series) in &self.coefficients {
            let deg: usize = deg
                .parse()
                .map_err(|_| WickError::Input(format!("lambda degree `{deg}` is not a natural number")))?;
            let mut l = Laurent::zero();
            for (exp, c) in series {
                let e: i64 = exp
                    .parse()
                    .map_err(|_| WickError::Input(format!("z exponent `{exp}` is not an integer")))?;
                let c = parse_rational(c).ok_or_else(|| WickError::Input(format!("`{c}` is not a rational")))?;
                l.add_term(e, 0, c);
            }
            out.insert(deg, l);
        }
        Ok(out)
    }
}
