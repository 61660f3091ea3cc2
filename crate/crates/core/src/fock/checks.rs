//! Exact checks of the vertex-algebra identities inside the weight window.
//!
//! A check is refused when some intermediate state it needs would exceed the
//! cutoff; coefficients whose own weight is above the cutoff are not
//! asserted. Every pass is therefore a statement about the truncation only.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, factorial, Rational};

use super::modes::FockVertex;
use super::state::{basis_up_to, translation, FockState, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `asserted` coefficients compared; zero means the window held nothing.
    Pass { asserted: usize },
    Fail { location: String, residual: FockState },
    Refused { required_cutoff: usize },
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }
}

fn weights(s: &FockState) -> (i64, i64) {
    s.weight_range().map_or((0, 0), |(lo, hi)| (lo as i64, hi as i64))
}

fn inv_factorial(k: u64) -> Rational {
    Rational::new(One::one(), factorial(k))
}

fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `a_(m)(b_(n)c) − b_(n)(a_(m)c) = Σ_{j≥0} C(m, j) (a_(j)b)_(m+n−j) c`.
pub fn verify_borcherds(
    v: &FockVertex,
    a: &FockState,
    b: &FockState,
    c: &FockState,
    m: i64,
    n: i64,
) -> Outcome {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Outcome::Pass { asserted: 0 };
    }
    let w = v.cutoff().weight as i64;
    let (la, ha) = weights(a);
    let (lb, hb) = weights(b);
    let (lc, hc) = weights(c);
    let required = [hb + hc - n - 1, ha + hc - m - 1, ha + hb - 1, ha, hb, hc]
        .into_iter()
        .max()
        .expect("nonempty");
    if required > w {
        return Outcome::Refused {
            required_cutoff: required as usize,
        };
    }
    let lo_out = la + lb + lc - m - n - 2;
    let hi_out = ha + hb + hc - m - n - 2;
    if lo_out > w || hi_out < 0 {
        return Outcome::Pass { asserted: 0 };
    }
    let lhs = v
        .mode(a, m, &v.mode(b, n, c))
        .minus(&v.mode(b, n, &v.mode(a, m, c)));
    let mut rhs = FockState::zero();
    for j in 0..(ha + hb).max(0) {
        let ab = v.mode(a, j, b);
        if ab.is_zero() {
            continue;
        }
        rhs.add_scaled(&v.mode(&ab, m + n - j, c), &binomial(m, j as u64));
    }
    let residual = lhs.minus(&rhs).truncate(w as usize);
    if residual.is_zero() {
        Outcome::Pass {
            asserted: (lo_out.max(0)..=hi_out.min(w)).count(),
        }
    } else {
        Outcome::Fail {
            location: format!("m={m}, n={n}"),
            residual,
        }
    }
}

/// `Y(a, z)b = e^{zT} Y(b, −z)a`, compared on each `z^{−n−1}`:
/// `a_(n)b = Σ_k (−1)^{n+k+1} T^k/k! b_(n+k)a`.
pub fn verify_skew_vertex(v: &FockVertex, a: &FockState, b: &FockState) -> Outcome {
    if a.is_zero() || b.is_zero() {
        return Outcome::Pass { asserted: 0 };
    }
    let w = v.cutoff().weight as i64;
    let (la, ha) = weights(a);
    let (lb, hb) = weights(b);
    if 2 * ha.max(hb) > w {
        return Outcome::Refused {
            required_cutoff: 2 * ha.max(hb) as usize,
        };
    }
    let mut asserted = 0;
    for n in (la + lb - 1 - w)..=(ha + hb - 1) {
        let lhs = v.mode(a, n, b);
        let mut rhs = FockState::zero();
        for k in 0..=(ha + hb - 1 - n).max(0) {
            let mut term = v.mode(b, n + k, a);
            for _ in 0..k {
                term = translation(&term);
            }
            rhs.add_scaled(&term, &(sign(n + k + 1) * inv_factorial(k as u64)));
        }
        let residual = lhs.minus(&rhs).truncate(w as usize);
        if !residual.is_zero() {
            return Outcome::Fail {
                location: format!("z^{}", -n - 1),
                residual,
            };
        }
        asserted += 1;
    }
    Outcome::Pass { asserted }
}

/// `[a_λ Y(b, z)c] = e^{λz} Y([a_λ b], z)c + Y(b, z)[a_λ c]`, compared on
/// each `λ^L z^{−N−1}` whose coefficient and intermediate `b_(N)c` lie in
/// the window.
pub fn verify_wick(v: &FockVertex, a: &FockState, b: &FockState, c: &FockState) -> Outcome {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Outcome::Pass { asserted: 0 };
    }
    let w = v.cutoff().weight as i64;
    let (la, ha) = weights(a);
    let (lb, hb) = weights(b);
    let (lc, hc) = weights(c);
    let required = (ha + hb - 1).max(ha + hc - 1).max(hb).max(hc);
    if required > w {
        return Outcome::Refused {
            required_cutoff: required as usize,
        };
    }
    let total_hi = ha + hb + hc;
    let total_lo = la + lb + lc;
    let a_on_b: Vec<FockState> = (0..(ha + hb).max(0)).map(|j| v.mode(a, j, b)).collect();
    let mut asserted = 0;
    for big_n in (hb + hc - 1 - w)..=(total_hi - 2) {
        let bc = v.mode(b, big_n, c);
        for l in 0..=(total_hi - big_n - 2).max(0) {
            if total_lo - l - big_n - 2 > w {
                continue;
            }
            let mut lhs = v.mode(a, l, &bc).scale(&inv_factorial(l as u64));
            let ac = v.mode(a, l, c);
            lhs.add_scaled(&v.mode(b, big_n, &ac), &-inv_factorial(l as u64));
            let mut rhs = FockState::zero();
            for j in 0..=l {
                let Some(ab) = a_on_b.get(j as usize) else { break };
                if ab.is_zero() {
                    continue;
                }
                let p = l - j;
                let coeff = inv_factorial(p as u64) * inv_factorial(j as u64);
                rhs.add_scaled(&v.mode(ab, big_n + p, c), &coeff);
            }
            let residual = lhs.minus(&rhs).truncate(w as usize);
            if !residual.is_zero() {
                return Outcome::Fail {
                    location: format!("lam^{l} z^{}", -big_n - 1),
                    residual,
                };
            }
            asserted += 1;
        }
    }
    Outcome::Pass { asserted }
}

/// Aggregate of many instances of one identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub cases: usize,
    /// Coefficient comparisons actually made.
    pub asserted: usize,
    /// Cases with nothing inside the window.
    pub vacuous: usize,
    pub refused: Vec<String>,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.refused.is_empty()
    }

    fn record(&mut self, label: String, outcome: Outcome) {
        self.cases += 1;
        match outcome {
            Outcome::Pass { asserted: 0 } => self.vacuous += 1,
            Outcome::Pass { asserted } => self.asserted += asserted,
            Outcome::Fail { location, residual } => {
                self.failures.push(format!("{label} at {location}: residual {residual}"))
            }
            Outcome::Refused { required_cutoff } => self
                .refused
                .push(format!("{label}: needs cutoff {required_cutoff}")),
        }
    }
}

fn states(max_weight: usize) -> Vec<FockState> {
    basis_up_to(max_weight).into_iter().map(FockState::monomial).collect()
}

/// Borcherds identity on all basis pairs of weight `≤ pair_weight`, all
/// `|m|, |n| ≤ mode_range`, all basis `c` of weight `≤ c_weight`.
pub fn borcherds_sweep(
    v: &FockVertex,
    pair_weight: usize,
    mode_range: i64,
    c_weight: usize,
) -> SweepReport {
    let basis = states(pair_weight);
    let cs = states(c_weight);
    let pairs: Vec<(&FockState, &FockState)> =
        basis.iter().flat_map(|a| basis.iter().map(move |b| (a, b))).collect();
    let results: Vec<Vec<(String, Outcome)>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let mut out = Vec::new();
            for m in -mode_range..=mode_range {
                for n in -mode_range..=mode_range {
                    for c in &cs {
                        let label = format!("a={a}, b={b}, c={c}, m={m}, n={n}");
                        out.push((label, verify_borcherds(v, a, b, c, m, n)));
                    }
                }
            }
            out
        })
        .collect();
    let mut report = SweepReport {
        name: "borcherds".into(),
        ..Default::default()
    };
    for (label, outcome) in results.into_iter().flatten() {
        report.record(label, outcome);
    }
    report
}

/// Wick formula on all basis triples of weight `≤ max_weight`.
pub fn wick_sweep(v: &FockVertex, max_weight: usize) -> SweepReport {
    let basis = states(max_weight);
    let basis = &basis;
    let triples: Vec<(&FockState, &FockState, &FockState)> = basis
        .iter()
        .flat_map(|a| basis.iter().flat_map(move |b| basis.iter().map(move |c| (a, b, c))))
        .collect();
    let results: Vec<(String, Outcome)> = triples
        .par_iter()
        .map(|(a, b, c)| (format!("a={a}, b={b}, c={c}"), verify_wick(v, a, b, c)))
        .collect();
    let mut report = SweepReport {
        name: "wick".into(),
        ..Default::default()
    };
    for (label, outcome) in results {
        report.record(label, outcome);
    }
    report
}

/// Skew-commutativity on all basis pairs of weight `≤ max_weight`.
pub fn skew_sweep(v: &FockVertex, max_weight: usize) -> SweepReport {
    let basis = states(max_weight);
    let pairs: Vec<(&FockState, &FockState)> =
        basis.iter().flat_map(|a| basis.iter().map(move |b| (a, b))).collect();
    let results: Vec<(String, Outcome)> = pairs
        .par_iter()
        .map(|(a, b)| (format!("a={a}, b={b}"), verify_skew_vertex(v, a, b)))
        .collect();
    let mut report = SweepReport {
        name: "skew".into(),
        ..Default::default()
    };
    for (label, outcome) in results {
        report.record(label, outcome);
    }
    report
}

/// One family of mode identities with its first counterexample, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub instances: usize,
    pub witness: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityOrder {
    pub a: String,
    pub b: String,
    /// Least `N` with `a_(j)b = 0` for all `j ≥ N`.
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomsReport {
    pub identities: Vec<IdentityCheck>,
    pub locality: Vec<LocalityOrder>,
}

impl AxiomsReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityCheck::passed)
    }
}

struct Tally {
    check: IdentityCheck,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            check: IdentityCheck {
                name: name.into(),
                instances: 0,
                witness: None,
            },
        }
    }

    fn expect(&mut self, lhs: &FockState, rhs: &FockState, label: impl FnOnce() -> String) {
        self.check.instances += 1;
        if lhs != rhs && self.check.witness.is_none() {
            self.check.witness = Some(format!("{}: {lhs} != {rhs}", label()));
        }
    }
}

/// Vacuum, creation and translation identities for states `a` of weight
/// `≤ max_weight` acting on the basis up to the cutoff, plus locality
/// orders of basis pairs of weight `≤ max_weight`.
pub fn verify_axioms(v: &FockVertex, max_weight: usize) -> AxiomsReport {
    let w = v.cutoff().weight;
    let wi = w as i64;
    let vac = FockState::vacuum();
    let small = states(max_weight.min(w));
    let all = states(w);

    let mut vacuum = Tally::new("vacuum: 1_(n) = delta(n,-1) id");
    for s in &all {
        for n in -3..=3 {
            let expected = if n == -1 { s.clone() } else { FockState::zero() };
            let got = v.mode(&vac, n, s).truncate(w);
            vacuum.expect(&got, &expected.truncate(w), || format!("1_({n}) {s}"));
        }
    }

    let mut creation = Tally::new("creation: a_(-1)1 = a, a_(n)1 = 0 for n >= 0");
    let mut translate = Tally::new("a_(-2)1 = Ta");
    for a in &small {
        let wa = a.max_weight() as i64;
        creation.expect(&v.mode(a, -1, &vac), a, || format!("{a}_(-1) 1"));
        for n in 0..=wa + 1 {
            creation.expect(&v.mode(a, n, &vac), &FockState::zero(), || format!("{a}_({n}) 1"));
        }
        if wa < wi {
            translate.expect(&v.mode(a, -2, &vac), &translation(a), || format!("{a}_(-2) 1"));
        }
    }

    let mut commutator = Tally::new("[T, a_(n)] = -n a_(n-1)");
    let mut derivative = Tally::new("(Ta)_(n) = -n a_(n-1)");
    for a in &small {
        let ta = translation(a);
        let wa = a.max_weight() as i64;
        for s in &all {
            let ws = s.max_weight() as i64;
            for n in -2..=3i64 {
                if wa + ws - n > wi {
                    continue;
                }
                let expected = v.mode(a, n - 1, s).scale(&Rational::from_integer((-n).into()));
                let lhs = translation(&v.mode(a, n, s)).minus(&v.mode(a, n, &translation(s)));
                commutator.expect(&lhs, &expected, || format!("a={a}, n={n}, on {s}"));
                derivative.expect(&v.mode(&ta, n, s), &expected, || format!("a={a}, n={n}, on {s}"));
            }
        }
    }

    let mut locality = Vec::new();
    let mut finite = Tally::new("locality: a_(j)b = 0 for j >= wt a + wt b");
    for a in &small {
        for b in &small {
            let top = (a.max_weight() + b.max_weight()) as i64;
            finite.expect(&v.mode(a, top, b), &FockState::zero(), || format!("{a}_({top}) {b}"));
            let order = (0..top).rev().find(|&j| !v.mode(a, j, b).is_zero()).map_or(0, |j| j + 1);
            locality.push(LocalityOrder {
                a: a.to_string(),
                b: b.to_string(),
                order: order as usize,
            });
        }
    }

    AxiomsReport {
        identities: vec![
            vacuum.check,
            creation.check,
            translate.check,
            commutator.check,
            derivative.check,
            finite.check,
        ],
        locality,
    }
}

/// `[b_λ 𝟙] = 0` for every basis `b` of weight `≤ max_weight`, together with
/// `a_(−1)𝟙 = a ∉ ℚ𝟙`: the vacuum line is a central ideal of the conformal
/// structure but not a vertex ideal.
pub fn vacuum_dichotomy(v: &FockVertex, max_weight: usize) -> (IdentityCheck, IdentityCheck) {
    let vac = FockState::vacuum();
    let mut central = Tally::new("[b_lam 1] = 0");
    for b in states(max_weight) {
        let p = v.lambda_bracket(&b, &vac);
        central.check.instances += 1;
        if !p.is_zero() && central.check.witness.is_none() {
            central.check.witness = Some(format!("[{b}_lam 1] != 0"));
        }
    }
    let a = FockState::var(1);
    let created = v.mode(&a, -1, &vac);
    let outside = created.terms().any(|(m, c)| *m != Monomial::vacuum() && !c.is_zero());
    let not_ideal = IdentityCheck {
        name: "x1_(-1) 1 = x1 lies outside Q*1".into(),
        instances: 1,
        witness: (!(outside && created == a)).then(|| format!("x1_(-1) 1 = {created}")),
    };
    (central.check, not_ideal)
}
