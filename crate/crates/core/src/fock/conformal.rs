use serde::Serialize;

use crate::calculus::{
    jacobi_residual, partial_pow, sesquilinearity_residuals, skew_residual, LambdaBracket, LambdaPoly,
};
use crate::conformal::{ConformalAlgebra, ConformalElement, Parity};

use super::checks::IdentityCheck;
use super::modes::FockVertex;
use super::state::{basis_up_to, translation, FockState};
use super::FockError;

/// The Fock space viewed as a Lie conformal algebra: `∂ = T` and
/// `[a_λ b] = Σ λⁿ/n! a_(n)b`. Every state is even.
pub struct FockConformal<'a>(pub &'a FockVertex);

impl LambdaBracket for FockConformal<'_> {
    type Elem = FockState;

    fn partial(&self, x: &FockState) -> FockState {
        translation(x)
    }

    fn lambda_bracket(&self, x: &FockState, y: &FockState) -> LambdaPoly<FockState> {
        self.0.lambda_bracket(x, y)
    }

    fn parity(&self, _: &FockState) -> Parity {
        Parity::Even
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    /// λ-coefficients, lowest degree first.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractReport {
    pub basis: Vec<String>,
    pub table: Vec<BracketEntry>,
    pub checks: Vec<IdentityCheck>,
}

impl ExtractReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

/// The λ-bracket on the monomial basis of weight `≤ max_weight`, with the
/// conformal axioms checked pointwise on basis pairs and triples.
/// Needs `3·max_weight ≤ W` so nested brackets stay in the window.
pub fn extract_conformal(v: &FockVertex, max_weight: usize) -> Result<ExtractReport, FockError> {
    let w = v.cutoff().weight;
    if 3 * max_weight > w {
        return Err(FockError::Refused {
            what: format!("extraction at weight {max_weight} needs 3*{max_weight} <= W"),
            required_cutoff: 3 * max_weight,
        });
    }
    let alg = FockConformal(v);
    let basis: Vec<FockState> = basis_up_to(max_weight).into_iter().map(FockState::monomial).collect();
    let mut table = Vec::new();
    let mut finite = check("C1: [a_lam b] is a polynomial in lam");
    let mut sesqui = check("C2: sesquilinearity");
    let mut skew = check("C3: skew-symmetry");
    let mut jacobi = check("C4: Jacobi identity");
    for a in &basis {
        for b in &basis {
            let p = alg.lambda_bracket(a, b);
            let bound = a.max_weight() + b.max_weight();
            finite.instances += 1;
            // a_(n)b = 0 for n ≥ wt a + wt b
            if !v.mode(a, bound as i64, b).is_zero() {
                finite.witness.get_or_insert_with(|| format!("{a}_({bound}) {b} != 0"));
            }
            table.push(BracketEntry {
                left: a.to_string(),
                right: b.to_string(),
                coefficients: p.coeffs().iter().map(ToString::to_string).collect(),
            });

            let (l, r) = sesquilinearity_residuals(&alg, a, b);
            sesqui.instances += 1;
            if !(l.is_zero() && r.is_zero()) {
                sesqui.witness.get_or_insert_with(|| format!("({a}, {b})"));
            }
            skew.instances += 1;
            if !skew_residual(&alg, a, b).is_zero() {
                skew.witness.get_or_insert_with(|| format!("({a}, {b})"));
            }
            for c in &basis {
                jacobi.instances += 1;
                if !jacobi_residual(&alg, a, b, c).is_zero() {
                    jacobi.witness.get_or_insert_with(|| format!("({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(ExtractReport {
        basis: basis.iter().map(ToString::to_string).collect(),
        table,
        checks: vec![finite, sesqui, skew, jacobi],
    })
}

fn check(name: &str) -> IdentityCheck {
    IdentityCheck {
        name: name.into(),
        instances: 0,
        witness: None,
    }
}

/// Image of a parameter-free element under `g_i ↦ images[i]`, `∂ ↦ T`.
pub fn image_of(v: &FockVertex, images: &[FockState], e: &ConformalElement) -> Option<FockState> {
    let alg = FockConformal(v);
    let mut out = FockState::zero();
    for (g, d, c) in e.terms() {
        let img = images.get(g)?;
        out.add_scaled(&partial_pow(&alg, img, d), &c.as_rational()?);
    }
    Some(out)
}

/// Compares every generator bracket of `alg` with the Fock bracket of the
/// images; returns the mismatching pairs.
pub fn compare_with_algebra(
    v: &FockVertex,
    alg: &ConformalAlgebra,
    images: &[FockState],
) -> Result<Vec<String>, FockError> {
    if images.len() != alg.rank() {
        return Err(FockError::Mapping(format!(
            "{} images for {} generators",
            images.len(),
            alg.rank()
        )));
    }
    let fock = FockConformal(v);
    let gens = alg.generators();
    let mut mismatches = Vec::new();
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            let expected = alg.lambda_bracket(&gens.generator(i), &gens.generator(j));
            let mut mapped = Vec::new();
            for e in expected.coeffs() {
                mapped.push(image_of(v, images, e).ok_or_else(|| {
                    FockError::Mapping(format!("cannot map {} (parameters present?)", gens.render(e)))
                })?);
            }
            let mapped = LambdaPoly::new(mapped);
            let actual = fock.lambda_bracket(&images[i], &images[j]);
            if mapped != actual {
                mismatches.push(format!(
                    "[{}_lam {}]: algebra gives {}, Fock space gives {}",
                    gens.decls()[i].name,
                    gens.decls()[j].name,
                    render(&mapped),
                    render(&actual)
                ));
            }
        }
    }
    Ok(mismatches)
}

fn render(p: &LambdaPoly<FockState>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("lam*({c})"),
            _ => format!("lam^{k}*({c})"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::builtin;
    use crate::fock::modes::Cutoff;

    #[test]
    fn heisenberg_table() {
        let v = FockVertex::new(Cutoff::new(6));
        let report = extract_conformal(&v, 1).unwrap();
        assert_eq!(report.basis, ["1", "x1"]);
        let aa = report.table.iter().find(|e| e.left == "x1" && e.right == "x1").unwrap();
        assert_eq!(aa.coefficients, ["0", "1"]);
        assert!(report
            .table
            .iter()
            .filter(|e| e.left == "1" || e.right == "1")
            .all(|e| e.coefficients.is_empty()));
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn sesquilinear_instance() {
        let v = FockVertex::new(Cutoff::new(6));
        let alg = FockConformal(&v);
        let a = FockState::var(1);
        // [Ta_λ a] = −λ²𝟙
        let p = alg.lambda_bracket(&translation(&a), &a);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeff(2), FockState::vacuum().scale(&crate::arith::int(-1)));
    }

    #[test]
    fn matches_builtin() {
        let v = FockVertex::new(Cutoff::new(6));
        let heis = builtin("heisenberg_conf").unwrap();
        let images = [FockState::var(1), FockState::vacuum()];
        assert!(compare_with_algebra(&v, &heis, &images).unwrap().is_empty());
        // a wrong image is detected
        let wrong = [FockState::var(1), FockState::vacuum().scale(&crate::arith::int(2))];
        assert_eq!(compare_with_algebra(&v, &heis, &wrong).unwrap().len(), 1);
    }

    #[test]
    fn refuses_large_weight() {
        let v = FockVertex::new(Cutoff::new(5));
        assert!(matches!(
            extract_conformal(&v, 2),
            Err(FockError::Refused { required_cutoff: 6, .. })
        ));
    }
}
