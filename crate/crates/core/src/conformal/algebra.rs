use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::arith::Rational;
use crate::calculus::{self, LambdaBracket, LambdaPoly};

use super::element::{ConformalElement, GeneratorDecl, Generators, Parity};
use super::CoreError;

/// A finitely generated Lie conformal superalgebra given by structure
/// constants `[g_i λ g_j]` for `i ≤ j`. The other orientation is derived by
/// skew-symmetry; the axioms themselves are checked, not assumed.
#[derive(Clone, Debug)]
pub struct ConformalAlgebra {
    name: String,
    params: Vec<String>,
    gens: Generators,
    table: BTreeMap<(usize, usize), LambdaPoly<ConformalElement>>,
    full: Vec<Vec<LambdaPoly<ConformalElement>>>,
}

impl ConformalAlgebra {
    /// Builds an algebra from declared brackets. Keys `(i, j)` with `i > j`
    /// are cross-checked against the skew-symmetric image of `(j, i)` when
    /// both are present, or moved to the upper triangle otherwise.
    pub fn new(
        name: &str,
        params: Vec<String>,
        generators: Vec<GeneratorDecl>,
        brackets: BTreeMap<(usize, usize), LambdaPoly<ConformalElement>>,
    ) -> Result<Self, CoreError> {
        let gens = Generators::new(generators);
        let mut seen = BTreeSet::new();
        for g in gens.decls() {
            if !seen.insert(g.name.as_str()) {
                return Err(CoreError::DuplicateGenerator(g.name.clone()));
            }
        }
        let declared: BTreeSet<&str> = params.iter().map(String::as_str).collect();
        let n = gens.len();
        for (&(i, j), value) in &brackets {
            for k in [i, j] {
                if k >= n {
                    return Err(CoreError::UndeclaredGenerator(format!("#{k}")));
                }
            }
            for side in [i, j] {
                if gens.is_torsion(side) && !value.is_zero() {
                    return Err(CoreError::TorsionBracket(gens.decls()[side].name.clone()));
                }
            }
            let expected = gens.decls()[i].parity.add(gens.decls()[j].parity);
            for coeff in value.coeffs() {
                for (g, _, c) in coeff.terms() {
                    if g >= n {
                        return Err(CoreError::UndeclaredGenerator(format!("#{g}")));
                    }
                    if gens.decls()[g].parity != expected {
                        return Err(CoreError::ParityMismatch {
                            left: gens.decls()[i].name.clone(),
                            right: gens.decls()[j].name.clone(),
                            term: gens.decls()[g].name.clone(),
                        });
                    }
                    if let Some(p) = c.parameters().find(|p| !declared.contains(p)) {
                        return Err(CoreError::UndeclaredParameter(p.to_string()));
                    }
                }
            }
        }

        let mut alg = ConformalAlgebra {
            name: name.to_string(),
            params,
            gens,
            table: BTreeMap::new(),
            full: Vec::new(),
        };
        let mut lower = Vec::new();
        for ((i, j), value) in brackets {
            let value = value.map(|e| strip_torsion_derivatives(&alg.gens, e));
            if i <= j {
                alg.table.insert((i, j), value);
            } else {
                lower.push(((j, i), value));
            }
        }
        // transpose-only entries are converted, pairs are cross-checked below
        let mut needs_check = Vec::new();
        for ((i, j), reversed) in lower {
            let both_odd = alg.parity_of(i).both_odd(alg.parity_of(j));
            if alg.table.contains_key(&(i, j)) {
                needs_check.push(((i, j), reversed));
            } else {
                let derived = calculus::skew_transform(&alg.gens_view(), &reversed, both_odd);
                alg.table.insert((i, j), derived);
            }
        }
        alg.rebuild_full();
        for ((i, j), reversed) in needs_check {
            if alg.full[j][i] != reversed {
                return Err(CoreError::SkewMismatch {
                    left: alg.gens.decls()[i].name.clone(),
                    right: alg.gens.decls()[j].name.clone(),
                });
            }
        }
        Ok(alg)
    }

    fn rebuild_full(&mut self) {
        self.table.retain(|_, v| !v.is_zero());
        let n = self.gens.len();
        let view = self.gens_view();
        let mut full = vec![vec![LambdaPoly::zero(); n]; n];
        for (&(i, j), value) in &self.table {
            full[i][j] = value.clone();
            if i != j {
                let both_odd = self.parity_of(i).both_odd(self.parity_of(j));
                full[j][i] = calculus::skew_transform(&view, value, both_odd);
            }
        }
        self.full = full;
    }

    fn gens_view(&self) -> GensView<'_> {
        GensView(&self.gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        self.gens.decls()[i].parity
    }

    /// Upper-triangular structure table as declared.
    pub fn table(&self) -> &BTreeMap<(usize, usize), LambdaPoly<ConformalElement>> {
        &self.table
    }

    /// `[g_i λ g_j]` for any ordered pair.
    pub fn structure(&self, i: usize, j: usize) -> &LambdaPoly<ConformalElement> {
        &self.full[i][j]
    }

    pub fn generator(&self, name: &str) -> Result<ConformalElement, CoreError> {
        self.gens
            .index_of(name)
            .map(|i| self.gens.generator(i))
            .ok_or_else(|| CoreError::UndeclaredGenerator(name.to_string()))
    }

    pub fn apply_partial(&self, e: &ConformalElement) -> ConformalElement {
        self.gens.apply_partial(e)
    }

    pub fn is_parameter_free(&self) -> bool {
        self.table
            .values()
            .all(|p| p.coeffs().iter().all(ConformalElement::is_parameter_free))
    }

    pub fn ensure_parameter_free(&self) -> Result<(), CoreError> {
        if self.is_parameter_free() {
            Ok(())
        } else {
            Err(CoreError::Parametric(self.name.clone()))
        }
    }

    /// Substitutes values for parameters; the substituted names are dropped
    /// from the declaration.
    pub fn specialize(&self, values: &BTreeMap<String, Rational>) -> Result<Self, CoreError> {
        if let Some(bad) = values.keys().find(|k| !self.params.contains(k)) {
            return Err(CoreError::UndeclaredParameter(bad.clone()));
        }
        Ok(self.map_table(
            self.params
                .iter()
                .filter(|p| !values.contains_key(*p))
                .cloned()
                .collect(),
            |e| e.specialize(values),
        ))
    }

    /// Applies `f` to every coefficient of every declared bracket.
    pub fn map_table(
        &self,
        params: Vec<String>,
        f: impl Fn(&ConformalElement) -> ConformalElement,
    ) -> ConformalAlgebra {
        let mut out = ConformalAlgebra {
            name: self.name.clone(),
            params,
            gens: self.gens.clone(),
            table: self.table.iter().map(|(k, v)| (*k, v.map(&f))).collect(),
            full: Vec::new(),
        };
        out.rebuild_full();
        out
    }

    /// Same algebra with one declared bracket replaced; no validation beyond
    /// index bounds. Used to build deliberately broken variants.
    pub fn with_bracket(&self, i: usize, j: usize, value: LambdaPoly<ConformalElement>) -> Self {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let mut out = self.clone();
        out.table.insert((i, j), value);
        out.rebuild_full();
        out
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    fn check_ids(&self, e: &ConformalElement) -> Result<(), CoreError> {
        match e.generators().find(|&g| g >= self.rank()) {
            Some(g) => Err(CoreError::UndeclaredGenerator(format!("#{g}"))),
            None => Ok(()),
        }
    }

    /// `[x_λ y]` extended sesquilinearly:
    /// `[∂^m g_i λ ∂^n g_j] = (−λ)^m (λ+∂)^n [g_i λ g_j]`.
    pub fn bracket(
        &self,
        x: &ConformalElement,
        y: &ConformalElement,
    ) -> Result<LambdaPoly<ConformalElement>, CoreError> {
        self.check_ids(x)?;
        self.check_ids(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(
        &self,
        x: &ConformalElement,
        y: &ConformalElement,
    ) -> LambdaPoly<ConformalElement> {
        let view = self.gens_view();
        let mut out = LambdaPoly::zero();
        let one = Rational::one();
        for (i, m, cx) in x.terms() {
            for (j, n, cy) in y.terms() {
                let base = &self.full[i][j];
                if base.is_zero() {
                    continue;
                }
                let moved = calculus::lambda_plus_partial_pow(&view, base, n);
                let coeff = cx * cy;
                let coeff = if m % 2 == 1 { -coeff } else { coeff };
                let scaled = moved.map(|e| e.scale(&coeff));
                out.add_shifted(&scaled, m, &one);
            }
        }
        out
    }

    /// Renders the algebra in the `.lca` source format.
    pub fn to_source(&self) -> String {
        let mut s = format!("algebra {} {{\n", self.name);
        for p in &self.params {
            s.push_str(&format!("  param {p};\n"));
        }
        for g in self.gens.decls() {
            if g.is_torsion() {
                s.push_str(&format!("  central {};\n", g.name));
            } else {
                s.push_str(&format!("  generator {} : {};\n", g.name, g.parity));
            }
        }
        for (&(i, j), value) in &self.table {
            if value.is_zero() {
                continue;
            }
            s.push_str(&format!(
                "  bracket [{}, {}] = {};\n",
                self.gens.decls()[i].name,
                self.gens.decls()[j].name,
                self.gens.render_lambda(value)
            ));
        }
        s.push_str("}\n");
        s
    }
}

fn strip_torsion_derivatives(gens: &Generators, e: &ConformalElement) -> ConformalElement {
    let mut out = ConformalElement::zero();
    for (g, d, c) in e.terms() {
        if d == 0 || !gens.is_torsion(g) {
            out.add_term(g, d, c);
        }
    }
    out
}

/// ∂-action without a bracket, enough for the skew transform.
struct GensView<'a>(&'a Generators);

impl LambdaBracket for GensView<'_> {
    type Elem = ConformalElement;

    fn partial(&self, x: &ConformalElement) -> ConformalElement {
        self.0.apply_partial(x)
    }

    fn lambda_bracket(&self, _: &ConformalElement, _: &ConformalElement) -> LambdaPoly<ConformalElement> {
        LambdaPoly::zero()
    }

    fn parity(&self, x: &ConformalElement) -> Parity {
        self.0.parity_of(x).unwrap_or(Parity::Even)
    }
}

impl LambdaBracket for ConformalAlgebra {
    type Elem = ConformalElement;

    fn partial(&self, x: &ConformalElement) -> ConformalElement {
        self.gens.apply_partial(x)
    }

    fn lambda_bracket(&self, x: &ConformalElement, y: &ConformalElement) -> LambdaPoly<ConformalElement> {
        self.bracket_unchecked(x, y)
    }

    fn parity(&self, x: &ConformalElement) -> Parity {
        self.gens.parity_of(x).unwrap_or(Parity::Even)
    }
}

