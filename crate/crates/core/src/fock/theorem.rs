use rayon::prelude::*;
use serde::Serialize;

use super::modes::FockVertex;
use super::state::{basis_up_to, FockState};
use super::subspace::{translation_closure, GradedSubspace};
use super::FockError;

pub const TRUNCATION_CAVEAT: &str = "necessary condition at truncation: sources are cut off at \
W + slack and containment is tested only up to W - slack; this can refute but never prove \
the ideal property";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub j: String,
    pub n: i64,
    pub v: String,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub generators: Vec<String>,
    pub cutoff: usize,
    pub slack: usize,
    /// `(weight, dim)` of the translation closure `I`.
    pub i_dims: Vec<(usize, usize)>,
    /// `(weight, dim)` of `J = [I, V]` up to the cutoff.
    pub j_dims: Vec<(usize, usize)>,
    /// Products `j_(n)v` tested for membership in `J`.
    pub checked: usize,
    pub violation_count: usize,
    /// The first few violations, in a fixed order.
    pub violations: Vec<Violation>,
    /// A product `v_(n)i` leaving `I`, showing `I` itself is not a vertex ideal.
    pub i_not_ideal_witness: Option<String>,
    pub caveat: String,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const MAX_REPORTED: usize = 20;

/// Tests `(J·V)|≤W−slack ⊆ J|≤W−slack` for `J = [I, V]`, where `I` is the
/// translation closure of `gens`. `J` is spanned by the λ-coefficients
/// `i_(n)v`, `n ≥ 0`, with sources up to `W + slack`.
pub fn theorem_ideal_check(v: &FockVertex, gens: &[FockState]) -> Result<TheoremReport, FockError> {
    let cut = v.cutoff();
    let (w, slack) = (cut.weight, cut.slack);
    let inner = w.saturating_sub(slack);
    for g in gens {
        match g.homogeneous_weight() {
            _ if g.is_zero() => {}
            None => return Err(FockError::Inhomogeneous(g.to_string())),
            Some(wg) if wg > inner => {
                return Err(FockError::Refused {
                    what: format!("generator {g} has weight {wg} above W - slack = {inner}"),
                    required_cutoff: wg + slack,
                })
            }
            Some(_) => {}
        }
    }
    let source_limit = cut.source_limit();
    let ideal = translation_closure(gens, source_limit);
    let sources: Vec<FockState> = basis_up_to(source_limit).into_iter().map(FockState::monomial).collect();

    // J = span{ i_(n) v : n ≥ 0 } in weights ≤ W
    let i_vecs = ideal.all_vectors();
    let pieces: Vec<Vec<FockState>> = i_vecs
        .par_iter()
        .map(|i| {
            let wi = i.max_weight() as i64;
            let mut out = Vec::new();
            for s in &sources {
                let total = wi + s.max_weight() as i64;
                for n in (total - 1 - w as i64).max(0)..total {
                    let p = v.mode(i, n, s).truncate(w);
                    if !p.is_zero() {
                        out.push(p);
                    }
                }
            }
            out
        })
        .collect();
    let mut j_space = GradedSubspace::new(w);
    for p in pieces.iter().flatten() {
        j_space.insert(p);
    }

    // (J · V) restricted to ≤ W − slack, against J restricted likewise
    let j_low = j_space.restrict(inner);
    let j_vecs = j_space.all_vectors();
    let targets: Vec<FockState> = basis_up_to(w).into_iter().map(FockState::monomial).collect();
    let found: Vec<(usize, Vec<Violation>)> = j_vecs
        .par_iter()
        .map(|j| {
            let wj = j.max_weight() as i64;
            let mut checked = 0;
            let mut bad = Vec::new();
            for t in &targets {
                let total = wj + t.max_weight() as i64;
                for n in (total - 1 - inner as i64)..total {
                    let p = v.mode(j, n, t);
                    checked += 1;
                    if !j_low.contains(&p) {
                        bad.push(Violation {
                            j: j.to_string(),
                            n,
                            v: t.to_string(),
                            product: p.to_string(),
                        });
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let checked = found.iter().map(|f| f.0).sum();
    let all_bad: Vec<Violation> = found.into_iter().flat_map(|f| f.1).collect();

    let i_low = ideal.restrict(inner);
    let witness = first_escape(v, &i_low, &targets, inner);

    Ok(TheoremReport {
        generators: gens.iter().map(ToString::to_string).collect(),
        cutoff: w,
        slack,
        i_dims: ideal.restrict(w).dims(),
        j_dims: j_space.dims(),
        checked,
        violation_count: all_bad.len(),
        violations: all_bad.into_iter().take(MAX_REPORTED).collect(),
        i_not_ideal_witness: witness,
        caveat: TRUNCATION_CAVEAT.to_string(),
    })
}

/// First `t_(n) i` of weight `≤ limit` outside `I`, scanning sources and
/// modes in a fixed order.
fn first_escape(v: &FockVertex, ideal: &GradedSubspace, targets: &[FockState], limit: usize) -> Option<String> {
    for i in ideal.all_vectors() {
        for t in targets.iter().filter(|t| t.max_weight() <= limit) {
            let total = (i.max_weight() + t.max_weight()) as i64;
            for n in ((total - 1 - limit as i64)..total).rev() {
                let p = v.mode(t, n, &i);
                if !p.is_zero() && !ideal.contains(&p) {
                    return Some(format!("{t}_({n}) {i} = {p} is not in I"));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::modes::Cutoff;

    #[test]
    fn vacuum_generates_nothing() {
        let v = FockVertex::new(Cutoff::with_slack(8, 4));
        let r = theorem_ideal_check(&v, &[FockState::vacuum()]).unwrap();
        assert!(r.j_dims.is_empty());
        assert!(r.passed());
        let w = r.i_not_ideal_witness.unwrap();
        assert!(w.contains("x1_(-1) 1 = x1"), "{w}");
        assert!(r.caveat.contains("necessary condition"));
    }

    #[test]
    fn empty_generating_set() {
        let v = FockVertex::new(Cutoff::with_slack(6, 2));
        let r = theorem_ideal_check(&v, &[]).unwrap();
        assert!(r.passed() && r.j_dims.is_empty() && r.i_dims.is_empty());
    }

    #[test]
    fn generator_x1_small_window() {
        let v = FockVertex::new(Cutoff::with_slack(6, 2));
        let r = theorem_ideal_check(&v, &[FockState::var(1)]).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.checked > 0);
    }

    #[test]
    fn rejects_bad_generators() {
        let v = FockVertex::new(Cutoff::with_slack(6, 2));
        let mixed = FockState::parse("x1 + x2").unwrap();
        assert!(matches!(theorem_ideal_check(&v, &[mixed]), Err(FockError::Inhomogeneous(_))));
        assert!(matches!(
            theorem_ideal_check(&v, &[FockState::var(5)]),
            Err(FockError::Refused { required_cutoff: 7, .. })
        ));
    }
}
