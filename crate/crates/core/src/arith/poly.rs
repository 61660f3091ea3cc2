use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use super::{binomial, Rational, Scalar};

/// Formal variable tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Lambda,
    Mu,
    Z,
    Partial,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Lambda => "lam",
            Var::Mu => "mu",
            Var::Z => "z",
            Var::Partial => "D",
        })
    }
}

/// Univariate polynomial with [`Scalar`] coefficients, indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub var: Var,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly::new(var, Vec::new())
    }

    pub fn monomial(var: Var, degree: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly::new(var, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> Scalar {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }
}

/// Sparse bivariate polynomial with [`Scalar`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    pub vars: (Var, Var),
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl BiPoly {
    pub fn zero(vars: (Var, Var)) -> Self {
        BiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: &Scalar) {
        let slot = self.terms.entry((i, j)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.terms.iter()
    }

    /// Sets the second variable to zero.
    pub fn at_second_zero(&self) -> UniPoly {
        let mut coeffs = Vec::new();
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, Scalar::zero());
                }
                coeffs[i] = c.clone();
            }
        }
        UniPoly::new(self.vars.0, coeffs)
    }

    /// Reads a polynomial in the first variable only as a [`BiPoly`].
    pub fn from_uni(p: &UniPoly, second: Var) -> Self {
        let mut out = BiPoly::zero((p.var, second));
        for (i, c) in p.coeffs.iter().enumerate() {
            out.add_term(i, 0, c);
        }
        out
    }
}

/// Affine image `lambda * λ + mu * μ + partial * ∂` for a substitution of λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineImage {
    pub lambda: i64,
    pub mu: i64,
    pub partial: i64,
}

impl AffineImage {
    /// λ ↦ λ + μ
    pub const SHIFT_BY_MU: AffineImage = AffineImage {
        lambda: 1,
        mu: 1,
        partial: 0,
    };
    /// λ ↦ −λ − ∂
    pub const SKEW: AffineImage = AffineImage {
        lambda: -1,
        mu: 0,
        partial: -1,
    };
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unsupported substitution image {0:?}: expected λ↦λ+μ or λ↦−λ−∂")]
pub struct UnsupportedImage(pub AffineImage);

/// Expands `p(image)` by the binomial theorem.
///
/// The result is bivariate in (λ, μ) for the shift and in (λ, ∂) for the
/// skew substitution; in the latter case the caller decides what ∂ acts on.
pub fn poly_substitute(p: &UniPoly, image: AffineImage) -> Result<BiPoly, UnsupportedImage> {
    let (second, a, b) = if image == AffineImage::SHIFT_BY_MU {
        (Var::Mu, 1i64, 1i64)
    } else if image == AffineImage::SKEW {
        (Var::Partial, -1, -1)
    } else {
        return Err(UnsupportedImage(image));
    };
    let mut out = BiPoly::zero((Var::Lambda, second));
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (aλ + b·y)^k = Σ C(k,r) a^r b^(k−r) λ^r y^(k−r)
        for r in 0..=k {
            let mut w = binomial(k as i64, (k - r) as u64);
            w *= Rational::from_integer(num_traits::pow(a.into(), r));
            w *= Rational::from_integer(num_traits::pow(b.into(), k - r));
            if w == Rational::one() {
                out.add_term(r, k - r, c);
            } else {
                out.add_term(r, k - r, &c.scale(&w));
            }
        }
    }
    Ok(out)
}

impl UniPoly {
    pub fn substitute(&self, image: AffineImage) -> Result<BiPoly, UnsupportedImage> {
        poly_substitute(self, image)
    }
}
