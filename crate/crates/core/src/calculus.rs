//! λ-bracket calculus that only needs a ∂-action and a bracket on generators
//! of some vector space. Shared by the structure-constant algebras and by the
//! conformal algebra extracted from the Fock model (where ∂ is translation).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::{binomial, Rational};
use crate::conformal::Parity;

/// A vector over ℚ.
pub trait Vector: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += c · other`
    fn add_scaled(&mut self, other: &Self, c: &Rational);
}

/// Polynomial in λ with vector coefficients, `coeffs[k]` multiplying `λ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Vector> LambdaPoly<E> {
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(Vector::is_zero) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn constant(e: E) -> Self {
        LambdaPoly::new(vec![e])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> E {
        self.coeffs.get(k).cloned().unwrap_or_else(E::zero)
    }

    /// `self += c · λ^shift · e`
    pub fn add_term(&mut self, shift: usize, e: &E, c: &Rational) {
        if c.is_zero() || e.is_zero() {
            return;
        }
        if self.coeffs.len() <= shift {
            self.coeffs.resize(shift + 1, E::zero());
        }
        self.coeffs[shift].add_scaled(e, c);
        while self.coeffs.last().is_some_and(Vector::is_zero) {
            self.coeffs.pop();
        }
    }

    /// `self += c · λ^shift · other`
    pub fn add_shifted(&mut self, other: &LambdaPoly<E>, shift: usize, c: &Rational) {
        for (k, e) in other.coeffs.iter().enumerate() {
            self.add_term(k + shift, e, c);
        }
    }

    pub fn minus(&self, other: &LambdaPoly<E>) -> LambdaPoly<E> {
        let mut out = self.clone();
        out.add_shifted(other, 0, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> LambdaPoly<E> {
        let mut out = LambdaPoly::zero();
        out.add_shifted(self, 0, c);
        out
    }

    pub fn map<F: Vector>(&self, f: impl Fn(&E) -> F) -> LambdaPoly<F> {
        LambdaPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<E: Vector> Vector for LambdaPoly<E> {
    fn zero() -> Self {
        LambdaPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LambdaPoly::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        self.add_shifted(other, 0, c)
    }
}

/// Polynomial in λ and μ with vector coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMuPoly<E> {
    terms: BTreeMap<(usize, usize), E>,
}

impl<E: Vector> LambdaMuPoly<E> {
    pub fn zero() -> Self {
        LambdaMuPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: usize, j: usize) -> E {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(E::zero)
    }

    /// `self += c · λ^i μ^j · e`
    pub fn add_term(&mut self, i: usize, j: usize, e: &E, c: &Rational) {
        if c.is_zero() || e.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(E::zero);
        slot.add_scaled(e, c);
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn minus(&self, other: &LambdaMuPoly<E>) -> LambdaMuPoly<E> {
        let mut out = self.clone();
        for (&(i, j), e) in &other.terms {
            out.add_term(i, j, e, &-Rational::one());
        }
        out
    }
}

/// A space with a ∂-action and a λ-bracket.
pub trait LambdaBracket {
    type Elem: Vector;

    fn partial(&self, x: &Self::Elem) -> Self::Elem;

    fn lambda_bracket(&self, x: &Self::Elem, y: &Self::Elem) -> LambdaPoly<Self::Elem>;

    /// Parity of a homogeneous element.
    fn parity(&self, x: &Self::Elem) -> Parity;
}

pub fn partial_pow<A: LambdaBracket>(alg: &A, x: &A::Elem, k: usize) -> A::Elem {
    let mut out = x.clone();
    for _ in 0..k {
        if out.is_zero() {
            break;
        }
        out = alg.partial(&out);
    }
    out
}

/// `(λ+∂)^n P`, with ∂ acting on the coefficients of `P`.
pub fn lambda_plus_partial_pow<A: LambdaBracket>(
    alg: &A,
    p: &LambdaPoly<A::Elem>,
    n: usize,
) -> LambdaPoly<A::Elem> {
    let mut out = LambdaPoly::zero();
    for (k, v) in p.coeffs().iter().enumerate() {
        let mut dv = v.clone();
        for r in 0..=n {
            if dv.is_zero() {
                break;
            }
            out.add_term(k + n - r, &dv, &binomial(n as i64, r as u64));
            dv = alg.partial(&dv);
        }
    }
    out
}

/// `−s · Σ_k (−λ−∂)^k v_k` for `P = Σ_k λ^k v_k`, where `s = −1` iff
/// `both_odd`. Applying it to `[b_λ a]` should return `[a_λ b]`.
pub fn skew_transform<A: LambdaBracket>(
    alg: &A,
    p: &LambdaPoly<A::Elem>,
    both_odd: bool,
) -> LambdaPoly<A::Elem> {
    let outer = if both_odd {
        Rational::one()
    } else {
        -Rational::one()
    };
    let mut out = LambdaPoly::zero();
    for (k, v) in p.coeffs().iter().enumerate() {
        let sign_k = if k % 2 == 0 {
            outer.clone()
        } else {
            -outer.clone()
        };
        let mut dv = v.clone();
        for i in 0..=k {
            if dv.is_zero() {
                break;
            }
            out.add_term(k - i, &dv, &(&sign_k * binomial(k as i64, i as u64)));
            dv = alg.partial(&dv);
        }
    }
    out
}

/// `[a_λ b] + (−1)^{p(a)p(b)} [b_{−λ−∂} a]`; zero iff skew-symmetry holds.
pub fn skew_residual<A: LambdaBracket>(alg: &A, a: &A::Elem, b: &A::Elem) -> LambdaPoly<A::Elem> {
    let both_odd = alg.parity(a).both_odd(alg.parity(b));
    let direct = alg.lambda_bracket(a, b);
    let reversed = skew_transform(alg, &alg.lambda_bracket(b, a), both_odd);
    direct.minus(&reversed)
}

/// Residuals of both sesquilinearity identities:
/// `[∂a_λ b] + λ[a_λ b]` and `[a_λ ∂b] − (λ+∂)[a_λ b]`.
pub fn sesquilinearity_residuals<A: LambdaBracket>(
    alg: &A,
    a: &A::Elem,
    b: &A::Elem,
) -> (LambdaPoly<A::Elem>, LambdaPoly<A::Elem>) {
    let base = alg.lambda_bracket(a, b);
    let mut left = alg.lambda_bracket(&alg.partial(a), b);
    left.add_shifted(&base, 1, &Rational::one());
    let right = alg
        .lambda_bracket(a, &alg.partial(b))
        .minus(&lambda_plus_partial_pow(alg, &base, 1));
    (left, right)
}

/// Both sides of the Jacobi identity
/// `[a_λ [b_μ c]] − (−1)^{p(a)p(b)} [b_μ [a_λ c]] = [[a_λ b]_{λ+μ} c]`.
pub fn jacobi_sides<A: LambdaBracket>(
    alg: &A,
    a: &A::Elem,
    b: &A::Elem,
    c: &A::Elem,
) -> (LambdaMuPoly<A::Elem>, LambdaMuPoly<A::Elem>) {
    let one = Rational::one();
    let mut lhs = LambdaMuPoly::zero();
    for (j, v) in alg.lambda_bracket(b, c).coeffs().iter().enumerate() {
        for (i, w) in alg.lambda_bracket(a, v).coeffs().iter().enumerate() {
            lhs.add_term(i, j, w, &one);
        }
    }
    let sign = if alg.parity(a).both_odd(alg.parity(b)) {
        one.clone()
    } else {
        -one.clone()
    };
    for (i, u) in alg.lambda_bracket(a, c).coeffs().iter().enumerate() {
        for (j, w) in alg.lambda_bracket(b, u).coeffs().iter().enumerate() {
            lhs.add_term(i, j, w, &sign);
        }
    }

    let mut rhs = LambdaMuPoly::zero();
    for (k, u) in alg.lambda_bracket(a, b).coeffs().iter().enumerate() {
        for (j, s) in alg.lambda_bracket(u, c).coeffs().iter().enumerate() {
            // (λ+μ)^j
            for r in 0..=j {
                rhs.add_term(k + r, j - r, s, &binomial(j as i64, r as u64));
            }
        }
    }
    (lhs, rhs)
}

pub fn jacobi_residual<A: LambdaBracket>(
    alg: &A,
    a: &A::Elem,
    b: &A::Elem,
    c: &A::Elem,
) -> LambdaMuPoly<A::Elem> {
    let (lhs, rhs) = jacobi_sides(alg, a, b, c);
    lhs.minus(&rhs)
}
