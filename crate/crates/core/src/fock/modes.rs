use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, Rational};
use crate::calculus::LambdaPoly;

use super::state::{FockState, Monomial};
use super::FockError;

/// Weight truncation: results keep weights `≤ weight`, sources may go up to
/// `weight + slack`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cutoff {
    pub weight: usize,
    pub slack: usize,
}

impl Cutoff {
    pub const DEFAULT_SLACK: usize = 4;

    pub fn new(weight: usize) -> Self {
        Cutoff::with_slack(weight, Cutoff::DEFAULT_SLACK)
    }

    pub fn with_slack(weight: usize, slack: usize) -> Self {
        assert!(weight >= 1, "cutoff weight must be positive");
        Cutoff { weight, slack }
    }

    pub fn source_limit(&self) -> usize {
        self.weight + self.slack
    }
}

type MemoKey = (Monomial, i64, Monomial);

/// The rank-one free boson on `ℚ[x₁, x₂, …]`, with `a = x₁`.
///
/// Modes are computed exactly from the normal-ordered product
/// `Y(x_m u) = :(∂^{m−1}a/(m−1)!) Y(u):`; the cutoff only filters what
/// [`FockVertex::mode_action`] returns. Products of monomials are memoized
/// behind a read-write lock, so a shared instance serves parallel sweeps.
pub struct FockVertex {
    cutoff: Cutoff,
    memo: RwLock<HashMap<MemoKey, Arc<FockState>>>,
    memoize: bool,
}

impl FockVertex {
    pub fn new(cutoff: Cutoff) -> Self {
        FockVertex {
            cutoff,
            memo: RwLock::new(HashMap::new()),
            memoize: true,
        }
    }

    /// Same model without the product cache.
    pub fn without_memo(cutoff: Cutoff) -> Self {
        FockVertex {
            memoize: false,
            ..FockVertex::new(cutoff)
        }
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// `b_(n) c` restricted to weights `≤ W`.
    pub fn mode_action(&self, b: &FockState, n: i64, c: &FockState) -> Result<FockState, FockError> {
        let limit = self.cutoff.source_limit();
        for s in [b, c] {
            if s.max_weight() > limit {
                return Err(FockError::WeightExceeded {
                    weight: s.max_weight(),
                    limit,
                });
            }
        }
        Ok(self.mode(b, n, c).truncate(self.cutoff.weight))
    }

    /// `b_(n) c` with no truncation.
    pub fn mode(&self, b: &FockState, n: i64, c: &FockState) -> FockState {
        let mut out = FockState::zero();
        for (mb, cb) in b.terms() {
            for (mc, cc) in c.terms() {
                out.add_scaled(&self.mode_mono(mb, n, mc), &(cb * cc));
            }
        }
        out
    }

    /// `[a_λ b] = Σ_n λⁿ/n! a_(n) b`, restricted to weights `≤ W`.
    pub fn lambda_bracket(&self, a: &FockState, b: &FockState) -> LambdaPoly<FockState> {
        let top = a.max_weight() + b.max_weight();
        let coeffs = (0..top)
            .map(|n| {
                let inv = Rational::new(One::one(), factorial(n as u64));
                self.mode(a, n as i64, b).truncate(self.cutoff.weight).scale(&inv)
            })
            .collect();
        LambdaPoly::new(coeffs)
    }

    fn mode_state(&self, b: &Monomial, n: i64, c: &FockState) -> FockState {
        let mut out = FockState::zero();
        for (mc, cc) in c.terms() {
            out.add_scaled(&self.mode_mono(b, n, mc), cc);
        }
        out
    }

    fn mode_mono(&self, b: &Monomial, n: i64, c: &Monomial) -> Arc<FockState> {
        let out_weight = b.weight() as i64 + c.weight() as i64 - n - 1;
        if out_weight < 0 {
            return Arc::new(FockState::zero());
        }
        if b.is_vacuum() {
            return Arc::new(if n == -1 {
                FockState::monomial(c.clone())
            } else {
                FockState::zero()
            });
        }
        let key = (b.clone(), n, c.clone());
        if self.memoize {
            if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
                return Arc::clone(hit);
            }
        }
        let value = Arc::new(self.normal_ordered(b, n, c));
        if self.memoize {
            self.memo
                .write()
                .expect("memo lock")
                .entry(key)
                .or_insert_with(|| Arc::clone(&value));
        }
        value
    }

    /// `(:A Y(u):)_(n) c` for `b = x_m u`, `A = ∂^j a / j!`, `j = m − 1`:
    /// `Σ_{k<0} A_(k) u_(n−k−1) c + Σ_{k≥0} u_(n−k−1) A_(k) c`, where
    /// `A_(k) = (−1)^j C(k, j) a_(k−j)`.
    fn normal_ordered(&self, b: &Monomial, n: i64, c: &Monomial) -> FockState {
        let (m, u) = b.split_last().expect("non-vacuum");
        let j = (m - 1) as i64;
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        let mut out = FockState::zero();

        // creation part: a_(k−j) multiplies by x_{j−k}
        let lowest = n - u.weight() as i64 - c.weight() as i64;
        for k in lowest.min(0)..0 {
            let coeff = &sign * binomial(k, j as u64);
            if coeff.is_zero() {
                continue;
            }
            let inner = self.mode_mono(&u, n - k - 1, c);
            let var = (j - k) as u32;
            for (mono, v) in inner.terms() {
                out.add_term(mono.times(var), v * &coeff);
            }
        }

        // annihilation part: a_(i) = i ∂/∂x_i with i = k − j ≥ 1
        for (i, _) in c.powers() {
            let k = i as i64 + j;
            let coeff = &sign * binomial(k, j as u64) * Rational::from_integer(i.into());
            let (mult, rest) = c.derivative(i).expect("present");
            let reduced = FockState::term(rest, coeff * Rational::from_integer(mult.into()));
            out.add_scaled(&self.mode_state(&u, n - k - 1, &reduced), &Rational::one());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::fock::state::{basis_up_to, translation};

    fn st(s: &str) -> FockState {
        FockState::parse(s).unwrap()
    }

    fn fv() -> FockVertex {
        FockVertex::new(Cutoff::new(12))
    }

    #[test]
    fn generator_modes() {
        let v = fv();
        let one = FockState::vacuum();
        let a = st("x1");
        assert_eq!(v.mode_action(&a, -1, &one).unwrap(), a);
        assert!(v.mode_action(&a, 0, &a).unwrap().is_zero());
        assert_eq!(v.mode_action(&a, 1, &a).unwrap(), one);
        assert_eq!(v.mode_action(&a, -2, &one).unwrap(), translation(&a));
        // a_(3) x3^2 = 3 * 2 x3
        assert_eq!(v.mode_action(&a, 3, &st("x3^2")).unwrap(), st("6*x3"));
    }

    #[test]
    fn creation_of_composite_states() {
        let v = fv();
        let one = FockState::vacuum();
        for m in basis_up_to(6) {
            let s = FockState::monomial(m);
            // Y(s, z)𝟙 = e^{zT} s
            assert_eq!(v.mode(&s, -1, &one), s);
            assert_eq!(v.mode(&s, -2, &one), translation(&s));
            assert!(v.mode(&s, 0, &one).is_zero());
        }
    }

    #[test]
    fn heisenberg_commutator_on_states() {
        // [a_(k), a_(l)] = k δ_{k+l,0}
        let v = fv();
        let a = st("x1");
        for c in basis_up_to(4).into_iter().map(FockState::monomial) {
            for k in -3i64..=3 {
                for l in -3i64..=3 {
                    let lhs = v
                        .mode(&a, k, &v.mode(&a, l, &c))
                        .minus(&v.mode(&a, l, &v.mode(&a, k, &c)));
                    let rhs = if k + l == 0 { c.scale(&int(k)) } else { FockState::zero() };
                    assert_eq!(lhs, rhs, "k={k} l={l} c={c}");
                }
            }
        }
    }

    #[test]
    fn memo_is_transparent() {
        let with = fv();
        let without = FockVertex::without_memo(Cutoff::new(12));
        let b = st("x1*x2 + 3*x3");
        let c = st("x1^2*x2");
        for n in -4..4 {
            assert_eq!(with.mode(&b, n, &c), without.mode(&b, n, &c));
        }
        assert!(with.memo_len() > 0);
        assert_eq!(without.memo_len(), 0);
    }

    #[test]
    fn weight_bookkeeping() {
        let v = fv();
        let basis: Vec<_> = basis_up_to(4).into_iter().map(FockState::monomial).collect();
        for b in &basis {
            for c in &basis {
                for n in -3..6 {
                    let r = v.mode(b, n, c);
                    if let Some(w) = r.homogeneous_weight() {
                        let expected = b.max_weight() as i64 + c.max_weight() as i64 - n - 1;
                        assert_eq!(w as i64, expected);
                    } else {
                        assert!(r.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn sources_over_limit_are_rejected() {
        let v = FockVertex::new(Cutoff::with_slack(2, 1));
        let big = st("x4");
        assert!(matches!(
            v.mode_action(&big, 0, &FockState::vacuum()),
            Err(FockError::WeightExceeded { weight: 4, limit: 3 })
        ));
        // outputs above W are dropped
        assert!(v.mode_action(&st("x1"), -3, &st("x1")).unwrap().is_zero());
    }

    #[test]
    fn lambda_bracket_of_generator() {
        let v = fv();
        let a = st("x1");
        let p = v.lambda_bracket(&a, &a);
        assert_eq!(p.degree(), Some(1));
        assert!(p.coeff(0).is_zero());
        assert_eq!(p.coeff(1), FockState::vacuum());
        assert!(v.lambda_bracket(&a, &FockState::vacuum()).is_zero());
        assert!(v.lambda_bracket(&FockState::vacuum(), &st("x1^2*x3")).is_zero());
    }
}
