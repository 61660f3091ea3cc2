use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{Rational, Scalar};
use crate::calculus::Vector;

/// ℤ/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Whether `(-1)^{p(a)p(b)}` is −1.
    pub fn both_odd(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GenKind {
    /// Generates a free ℂ[∂]-module.
    Free,
    /// Even, central and killed by ∂.
    CentralTorsion,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorDecl {
    pub name: String,
    pub parity: Parity,
    pub kind: GenKind,
}

impl GeneratorDecl {
    pub fn free(name: &str, parity: Parity) -> Self {
        GeneratorDecl {
            name: name.to_string(),
            parity,
            kind: GenKind::Free,
        }
    }

    pub fn central(name: &str) -> Self {
        GeneratorDecl {
            name: name.to_string(),
            parity: Parity::Even,
            kind: GenKind::CentralTorsion,
        }
    }

    pub fn is_torsion(&self) -> bool {
        self.kind == GenKind::CentralTorsion
    }
}

/// Shared, ordered generator declarations. Column order everywhere is
/// declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generators(Arc<[GeneratorDecl]>);

impl Generators {
    pub fn new(decls: Vec<GeneratorDecl>) -> Self {
        Generators(decls.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn decls(&self) -> &[GeneratorDecl] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<&GeneratorDecl> {
        self.0.get(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|g| g.name == name)
    }

    pub fn is_torsion(&self, i: usize) -> bool {
        self.0.get(i).is_some_and(GeneratorDecl::is_torsion)
    }

    /// `∂^degree g_i`, or zero when `g_i` is torsion and `degree > 0`.
    pub fn derivative(&self, i: usize, degree: usize) -> ConformalElement {
        if degree > 0 && self.is_torsion(i) {
            return ConformalElement::zero();
        }
        ConformalElement::term(i, degree, Scalar::one())
    }

    pub fn generator(&self, i: usize) -> ConformalElement {
        self.derivative(i, 0)
    }

    /// The ∂-action; torsion terms vanish.
    pub fn apply_partial(&self, e: &ConformalElement) -> ConformalElement {
        let mut out = ConformalElement::zero();
        for (&g, coeffs) in &e.terms {
            if self.is_torsion(g) {
                continue;
            }
            let mut shifted = Vec::with_capacity(coeffs.len() + 1);
            shifted.push(Scalar::zero());
            shifted.extend(coeffs.iter().cloned());
            out.terms.insert(g, shifted);
        }
        out
    }

    /// Homogeneous parity, `None` for mixed or zero elements.
    pub fn parity_of(&self, e: &ConformalElement) -> Option<Parity> {
        let mut it = e.terms.keys().map(|&g| self.0[g].parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn render(&self, e: &ConformalElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (&g, coeffs) in &e.terms {
            for (d, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let body = match d {
                    0 => self.0[g].name.clone(),
                    1 => format!("D*{}", self.0[g].name),
                    _ => format!("D^{}*{}", d, self.0[g].name),
                };
                push_term(&mut out, c, &body);
            }
        }
        out
    }

    pub fn render_lambda(&self, p: &LambdaPoly<ConformalElement>) -> String {
        self.render_in(p.coeffs().iter().enumerate().map(|(k, e)| (power("lam", k), e)))
    }

    pub fn render_lambda_mu(&self, p: &LambdaMuPoly<ConformalElement>) -> String {
        self.render_in(p.terms().map(|(&(i, j), e)| {
            let mut v = power("lam", i);
            let mu = power("mu", j);
            if !v.is_empty() && !mu.is_empty() {
                v.push('*');
            }
            v.push_str(&mu);
            (v, e)
        }))
    }

    fn render_in<'a>(&self, parts: impl Iterator<Item = (String, &'a ConformalElement)>) -> String {
        let mut out = String::new();
        for (var, e) in parts {
            if e.is_zero() {
                continue;
            }
            for (&g, coeffs) in &e.terms {
                for (d, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut body = var.clone();
                    let dpart = match d {
                        0 => String::new(),
                        1 => "D".to_string(),
                        _ => format!("D^{d}"),
                    };
                    for piece in [dpart, self.0[g].name.clone()] {
                        if piece.is_empty() {
                            continue;
                        }
                        if !body.is_empty() {
                            body.push('*');
                        }
                        body.push_str(&piece);
                    }
                    push_term(&mut out, c, &body);
                }
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn push_term(out: &mut String, c: &Scalar, body: &str) {
    let coeff = c.to_string();
    let single = c.terms().count() == 1;
    let (neg, mag) = match coeff.strip_prefix('-') {
        Some(rest) if single => (true, rest.to_string()),
        _ => (false, coeff),
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mag == "1" {
        out.push_str(body);
    } else if single {
        let _ = write!(out, "{mag}*{body}");
    } else {
        let _ = write!(out, "({mag})*{body}");
    }
}

/// A finite ℂ[∂]-combination of generators: generator index ↦ coefficients of
/// `∂^0, ∂^1, …`. Torsion generators only ever carry a `∂^0` coefficient when
/// built through [`Generators`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConformalElement {
    terms: BTreeMap<usize, Vec<Scalar>>,
}

impl ConformalElement {
    pub fn zero() -> Self {
        ConformalElement::default()
    }

    pub fn term(generator: usize, degree: usize, c: Scalar) -> Self {
        let mut e = ConformalElement::zero();
        e.add_term(generator, degree, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(generator, ∂-degree, coefficient)` triples, nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.terms.iter().flat_map(|(&g, cs)| {
            cs.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(d, c)| (g, d, c))
        })
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, generator: usize, degree: usize) -> Scalar {
        self.terms
            .get(&generator)
            .and_then(|cs| cs.get(degree))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, generator: usize, degree: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let cs = self.terms.entry(generator).or_default();
        if cs.len() <= degree {
            cs.resize(degree + 1, Scalar::zero());
        }
        cs[degree] += c;
        while cs.last().is_some_and(Scalar::is_zero) {
            cs.pop();
        }
        if cs.is_empty() {
            self.terms.remove(&generator);
        }
    }

    pub fn add_scaled(&mut self, other: &ConformalElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (g, d, x) in other.terms() {
            self.add_term(g, d, &(x * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> ConformalElement {
        let mut out = ConformalElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> ConformalElement {
        self.scale(&-Scalar::one())
    }

    pub fn plus(&self, other: &ConformalElement) -> ConformalElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &ConformalElement) -> ConformalElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn is_parameter_free(&self) -> bool {
        self.terms().all(|(_, _, c)| c.is_parameter_free())
    }

    pub fn specialize(&self, values: &BTreeMap<String, Rational>) -> ConformalElement {
        let mut out = ConformalElement::zero();
        for (g, d, c) in self.terms() {
            out.add_term(g, d, &c.specialize(values));
        }
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> ConformalElement {
        let mut out = ConformalElement::zero();
        for (g, d, c) in self.terms() {
            out.add_term(g, d, &f(c));
        }
        out
    }
}

impl Vector for ConformalElement {
    fn zero() -> Self {
        ConformalElement::zero()
    }

    fn is_zero(&self) -> bool {
        ConformalElement::is_zero(self)
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        ConformalElement::add_scaled(self, other, &Scalar::from(c.clone()))
    }
}

pub use crate::calculus::{LambdaMuPoly, LambdaPoly};
