//! Submodule-valued analyses: bracket spans, derived series, centre, ideals
//! and the structural classification. All of these need parameter-free
//! structure constants.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{Rational, Scalar};
use crate::calculus::LambdaBracket;
use crate::lattice::{canonical_form, Submodule};
use crate::linalg;

use super::{ConformalAlgebra, ConformalElement, CoreError};

/// Upper bound on `I ← I + [R, I]` rounds; ascending chains of canonical
/// forms stabilize long before this on anything finitely generated.
pub const MAX_CLOSURE_ROUNDS: usize = 64;

fn ensure_elements_free(elems: &[ConformalElement]) -> Result<(), CoreError> {
    if elems.iter().all(ConformalElement::is_parameter_free) {
        Ok(())
    } else {
        Err(CoreError::Parametric("element".into()))
    }
}

/// The ℂ[∂]-submodule generated by all λ-coefficients of `[u_λ w]`.
///
/// Only module generators of `A` and `B` are needed: the coefficients of
/// `[∂^m u_λ ∂^n w]` are ℂ[∂]-combinations of those of `[u_λ w]`.
pub fn lambda_coefficient_span(
    a: &[ConformalElement],
    b: &[ConformalElement],
    alg: &ConformalAlgebra,
) -> Result<Submodule, CoreError> {
    alg.ensure_parameter_free()?;
    ensure_elements_free(a)?;
    ensure_elements_free(b)?;
    let mut coeffs = Vec::new();
    for u in a {
        for w in b {
            coeffs.extend(alg.bracket(u, w)?.coeffs().iter().cloned());
        }
    }
    Ok(canonical_form(alg.generators(), &coeffs)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesStatus {
    /// Reached zero.
    Solvable,
    /// Two consecutive terms agree and are nonzero.
    Stabilized,
    /// `max_depth` reached first.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct DerivedSeries {
    pub terms: Vec<Submodule>,
    pub status: SeriesStatus,
}

impl DerivedSeries {
    pub fn solvable(&self) -> bool {
        self.status == SeriesStatus::Solvable
    }
}

/// `R⁰ = R`, `Rⁿ⁺¹ = [Rⁿ, Rⁿ]`.
pub fn derived_series(alg: &ConformalAlgebra, max_depth: usize) -> Result<DerivedSeries, CoreError> {
    alg.ensure_parameter_free()?;
    let mut terms = vec![Submodule::full(alg.generators())];
    for _ in 0..max_depth {
        let current = terms.last().expect("nonempty");
        if current.is_zero() {
            return Ok(DerivedSeries {
                terms,
                status: SeriesStatus::Solvable,
            });
        }
        let rows = current.rows();
        let next = lambda_coefficient_span(&rows, &rows, alg)?;
        let stalled = next.equals(current)?;
        let zero = next.is_zero();
        terms.push(next);
        if zero {
            return Ok(DerivedSeries {
                terms,
                status: SeriesStatus::Solvable,
            });
        }
        if stalled {
            return Ok(DerivedSeries {
                terms,
                status: SeriesStatus::Stabilized,
            });
        }
    }
    Ok(DerivedSeries {
        terms,
        status: SeriesStatus::Inconclusive,
    })
}

#[derive(Clone, Debug)]
pub struct Centre {
    pub module: Submodule,
    pub degree_bound: usize,
    /// Unchanged when recomputed at `degree_bound + 1`.
    pub stable: bool,
    /// Equal to the whole algebra (only the degree-truncated part was searched).
    pub full: bool,
}

fn centre_at(alg: &ConformalAlgebra, bound: usize) -> Result<Submodule, CoreError> {
    let gens = alg.generators();
    // unknowns: coefficient of ∂^d g_i
    let unknowns: Vec<(usize, usize)> = (0..alg.rank())
        .flat_map(|i| {
            let top = if gens.is_torsion(i) { 0 } else { bound };
            (0..=top).map(move |d| (i, d))
        })
        .collect();
    // equations indexed by (target generator j, λ-degree, generator, ∂-degree)
    let mut equations: BTreeMap<(usize, usize, usize, usize), Vec<Rational>> = BTreeMap::new();
    for (col, &(i, d)) in unknowns.iter().enumerate() {
        let x = gens.derivative(i, d);
        for j in 0..alg.rank() {
            let value = alg.lambda_bracket(&x, &gens.generator(j));
            for (k, e) in value.coeffs().iter().enumerate() {
                for (g, dd, c) in e.terms() {
                    let c = c.as_rational().ok_or_else(|| CoreError::Parametric(alg.name().into()))?;
                    let row = equations
                        .entry((j, k, g, dd))
                        .or_insert_with(|| vec![Rational::default(); unknowns.len()]);
                    row[col] += c;
                }
            }
        }
    }
    let basis = linalg::nullspace(equations.into_values().collect(), unknowns.len());
    let elems: Vec<ConformalElement> = basis
        .iter()
        .map(|v| {
            let mut e = ConformalElement::zero();
            for (c, &(i, d)) in v.iter().zip(&unknowns) {
                e.add_scaled(&gens.derivative(i, d), &Scalar::from(c.clone()));
            }
            e
        })
        .collect();
    Ok(canonical_form(gens, &elems)?)
}

/// Elements `Σ f_i(∂) g_i` with `deg f_i ≤ degree_bound` whose bracket with
/// every generator vanishes. Bracketing with generators suffices since
/// `[r_λ ∂^n g] = (λ+∂)^n [r_λ g]`.
pub fn centre(alg: &ConformalAlgebra, degree_bound: usize) -> Result<Centre, CoreError> {
    alg.ensure_parameter_free()?;
    let module = centre_at(alg, degree_bound)?;
    let next = centre_at(alg, degree_bound + 1)?;
    let stable = module.equals(&next)?;
    let full = module.equals(&Submodule::full(alg.generators()))?;
    Ok(Centre {
        module,
        degree_bound,
        stable,
        full,
    })
}

/// Smallest ideal containing `seeds`, with the number of enlargement rounds.
pub fn ideal_closure_rounds(
    seeds: &[ConformalElement],
    alg: &ConformalAlgebra,
) -> Result<(Submodule, usize), CoreError> {
    alg.ensure_parameter_free()?;
    ensure_elements_free(seeds)?;
    let all: Vec<_> = (0..alg.rank()).map(|i| alg.generators().generator(i)).collect();
    let mut ideal = canonical_form(alg.generators(), seeds)?;
    for round in 0..MAX_CLOSURE_ROUNDS {
        let grown = ideal.sum(&lambda_coefficient_span(&all, &ideal.rows(), alg)?)?;
        if grown.equals(&ideal)? {
            return Ok((ideal, round));
        }
        ideal = grown;
    }
    Err(CoreError::LimitExceeded(format!(
        "ideal closure did not stabilize in {MAX_CLOSURE_ROUNDS} rounds"
    )))
}

pub fn ideal_closure(seeds: &[ConformalElement], alg: &ConformalAlgebra) -> Result<Submodule, CoreError> {
    ideal_closure_rounds(seeds, alg).map(|(m, _)| m)
}

fn check_ambient(i: &Submodule, alg: &ConformalAlgebra) -> Result<(), CoreError> {
    if i.ambient() == alg.generators() {
        Ok(())
    } else {
        Err(crate::lattice::LatticeError::AmbientMismatch.into())
    }
}

/// `[R, I] ⊆ I`.
pub fn is_ideal(i: &Submodule, alg: &ConformalAlgebra) -> Result<bool, CoreError> {
    alg.ensure_parameter_free()?;
    check_ambient(i, alg)?;
    let all: Vec<_> = (0..alg.rank()).map(|k| alg.generators().generator(k)).collect();
    let image = lambda_coefficient_span(&all, &i.rows(), alg)?;
    Ok(i.includes(&image)?)
}

/// `[R, I] = 0`.
pub fn is_central_ideal(i: &Submodule, alg: &ConformalAlgebra) -> Result<bool, CoreError> {
    alg.ensure_parameter_free()?;
    check_ambient(i, alg)?;
    let all: Vec<_> = (0..alg.rank()).map(|k| alg.generators().generator(k)).collect();
    Ok(lambda_coefficient_span(&all, &i.rows(), alg)?.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Abelian,
    Solvable,
    /// Perfect, and every tested proper ideal is central.
    CentralExtensionOfSimple,
    /// Perfect, but a tested proper ideal is not central.
    NonCentralProperIdeal,
    /// Neither solvable nor perfect.
    NotPerfect,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Abelian => "abelian",
            Verdict::Solvable => "solvable",
            Verdict::CentralExtensionOfSimple => {
                "consistent with: irreducible central extension of a simple algebra"
            }
            Verdict::NonCentralProperIdeal => "inconsistent: non-central proper ideal found",
            Verdict::NotPerfect => "not solvable and not perfect",
            Verdict::Inconclusive => "inconclusive: derived series did not settle",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TestedIdeal {
    pub seed: String,
    pub module: Submodule,
    pub proper: bool,
    pub central: bool,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub abelian: bool,
    pub series: DerivedSeries,
    pub centre: Centre,
    /// `R' = R`.
    pub perfect: bool,
    /// Closures of the central-torsion generators.
    pub central_closures: Vec<TestedIdeal>,
    /// The whole tested family (generator closures, centre rows, derived terms).
    pub tested: Vec<TestedIdeal>,
    pub verdict: Verdict,
}

/// Evidence for the abelian / central-extension-of-simple dichotomy. Never a
/// proof of simplicity: only a generated family of ideals is tested.
pub fn classify(
    alg: &ConformalAlgebra,
    centre_bound: usize,
    max_depth: usize,
) -> Result<Classification, CoreError> {
    alg.ensure_parameter_free()?;
    let gens = alg.generators();
    let full = Submodule::full(gens);
    let series = derived_series(alg, max_depth)?;
    let derived = series
        .terms
        .get(1)
        .cloned()
        .unwrap_or_else(|| Submodule::zero(gens));
    let abelian = derived.is_zero();
    let perfect = derived.equals(&full)?;
    let centre = centre(alg, centre_bound)?;

    let mut seeds: Vec<(String, Vec<ConformalElement>)> = (0..alg.rank())
        .map(|i| (gens.decls()[i].name.clone(), vec![gens.generator(i)]))
        .collect();
    for row in centre.module.rows() {
        seeds.push((format!("centre row {}", gens.render(&row)), vec![row]));
    }
    for (k, term) in series.terms.iter().enumerate().skip(1) {
        seeds.push((format!("R^{k}"), term.rows()));
    }

    let mut tested: Vec<TestedIdeal> = Vec::new();
    for (seed, elems) in seeds {
        let module = ideal_closure(&elems, alg)?;
        if tested.iter().any(|t| t.module == module) {
            continue;
        }
        let proper = !module.is_zero() && !module.equals(&full)?;
        let central = is_central_ideal(&module, alg)?;
        tested.push(TestedIdeal {
            seed,
            module,
            proper,
            central,
        });
    }
    let mut central_closures = Vec::new();
    for i in (0..alg.rank()).filter(|&i| gens.is_torsion(i)) {
        let module = ideal_closure(&[gens.generator(i)], alg)?;
        central_closures.push(TestedIdeal {
            seed: gens.decls()[i].name.clone(),
            proper: !module.is_zero() && !module.equals(&full)?,
            central: is_central_ideal(&module, alg)?,
            module,
        });
    }

    let verdict = if abelian {
        Verdict::Abelian
    } else if series.solvable() {
        Verdict::Solvable
    } else if perfect {
        if tested.iter().all(|t| !t.proper || t.central) {
            Verdict::CentralExtensionOfSimple
        } else {
            Verdict::NonCentralProperIdeal
        }
    } else if series.status == SeriesStatus::Inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::NotPerfect
    };

    Ok(Classification {
        abelian,
        series,
        centre,
        perfect,
        central_closures,
        tested,
        verdict,
    })
}
