//! One line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lcalc::arith::{rat, Rational, Scalar};
use lcalc::calculus::LambdaPoly;
use lcalc::conformal::{check_jacobi, check_skew, classify, ConformalAlgebra, Verdict};
use lcalc::dsl::builtin;
use lcalc::fock::{
    borcherds_sweep, compare_with_algebra, extract_conformal, skew_sweep, theorem_ideal_check, vacuum_dichotomy,
    verify_axioms, wick_sweep, Cutoff, FockState, FockVertex,
};
use lcalc::lattice::{canonical_form, Submodule};
use lcalc::wick::{factorial_det_check, forward_expand, separate, window_start, Laurent, LaurentFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial_determinant() -> Outcome {
    let mut cases = 0;
    for m in 0..=6 {
        for n in m.max(1)..=12 {
            let c = factorial_det_check(m, n).map_err(|e| e.to_string())?;
            ensure(c.equal, || format!("m={m} N={n}: {} != {}", c.computed, c.closed_form))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases exact"))
}

fn mutants(alg: &ConformalAlgebra) -> Vec<ConformalAlgebra> {
    let gens = alg.generators();
    let mut out = Vec::new();
    for (&(i, j), p) in alg.table() {
        for (k, e) in p.coeffs().iter().enumerate() {
            for (g, d, _) in e.terms().filter(|t| !gens.is_torsion(t.0)) {
                let mut coeffs = p.coeffs().to_vec();
                coeffs[k].add_term(g, d, &Scalar::one());
                out.push(alg.with_bracket(i, j, LambdaPoly::new(coeffs)));
            }
        }
    }
    out
}

fn axiom_suite() -> Outcome {
    let mut mutations = 0;
    for name in ["virasoro", "heisenberg_conf", "current_sl2", "neveu_schwarz", "abelian_3"] {
        let alg = builtin(name).ok_or("missing builtin")?;
        ensure(check_skew(&alg).passed(), || format!("{name}: C3 fails"))?;
        ensure(check_jacobi(&alg).passed(), || format!("{name}: C4 fails"))?;
        for bad in mutants(&alg) {
            mutations += 1;
            let (s, j) = (check_skew(&bad), check_jacobi(&bad));
            let witness = s.failures().chain(j.failures()).find_map(|f| f.residual.clone());
            ensure(witness.is_some_and(|w| w != "0"), || format!("{name}: a mutation passed"))?;
        }
    }
    Ok(format!("5 builtins pass C3 and C4; {mutations} mutations each fail with a witness"))
}

fn sweep_line(s: &lcalc::fock::SweepReport) -> Outcome {
    ensure(s.failures.is_empty(), || s.failures[0].clone())?;
    ensure(s.refused.is_empty(), || format!("refused: {}", s.refused[0]))?;
    Ok(format!("{} cases, {} coefficients compared, {} vacuous", s.cases, s.asserted, s.vacuous))
}

fn borcherds() -> Outcome {
    let v = FockVertex::new(Cutoff::new(12));
    sweep_line(&borcherds_sweep(&v, 4, 4, 4))
}

fn wick() -> Outcome {
    let v = FockVertex::new(Cutoff::new(12));
    sweep_line(&wick_sweep(&v, 3))
}

fn skew_and_vacuum() -> Outcome {
    let v = FockVertex::new(Cutoff::new(10));
    let line = sweep_line(&skew_sweep(&v, 4))?;
    let axioms = verify_axioms(&v, 4);
    for c in &axioms.identities {
        ensure(c.passed(), || format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))?;
    }
    let a = FockState::var(1);
    let t = v.mode(&a, -2, &FockState::vacuum());
    ensure(t == FockState::var(2), || format!("a_(-2)1 = {t}"))?;
    Ok(format!("skew {line}; {} mode identities hold", axioms.identities.len()))
}

fn vacuum_line() -> Outcome {
    let v = FockVertex::new(Cutoff::new(8));
    let (central, not_ideal) = vacuum_dichotomy(&v, 8);
    ensure(central.passed(), || central.witness.clone().unwrap_or_default())?;
    ensure(not_ideal.passed(), || not_ideal.witness.clone().unwrap_or_default())?;
    let created = v.mode_action(&FockState::var(1), -1, &FockState::vacuum()).map_err(|e| e.to_string())?;
    ensure(created == FockState::var(1), || format!("x1_(-1) 1 = {created}"))?;
    Ok(format!("[b_lam 1] = 0 on {} states; x1_(-1) 1 = x1 outside Q1", central.instances))
}

fn theorem() -> Outcome {
    let v = FockVertex::new(Cutoff::with_slack(10, 4));
    let mut checked = 0;
    for gens in [vec!["x1"], vec!["x2"], vec!["x1^2"], vec!["x1", "x2"]] {
        let states: Vec<FockState> = gens.iter().map(|g| FockState::parse(g).unwrap()).collect();
        let r = theorem_ideal_check(&v, &states).map_err(|e| e.to_string())?;
        ensure(r.violation_count == 0, || format!("I=<{}>: {:?}", gens.join(","), r.violations.first()))?;
        ensure(r.caveat.contains("necessary condition at truncation"), || "missing caveat".into())?;
        checked += r.checked;
    }
    Ok(format!("4 generating sets, {checked} products, 0 violations (truncation-level)"))
}

fn corollary() -> Outcome {
    let vir = builtin("virasoro").unwrap();
    let vir = vir.specialize(&[("c".to_string(), rat(1, 1))].into()).unwrap();
    let c = classify(&vir, 3, 8).map_err(|e| e.to_string())?;
    let gens = vir.generators();
    let full = Submodule::full(gens);
    let qc = canonical_form(gens, &[vir.generator("C").unwrap()]).unwrap();
    ensure(c.series.terms[1].equals(&full).unwrap(), || "virasoro: R' != R".into())?;
    ensure(c.centre.module.equals(&qc).unwrap() && c.centre.stable, || "virasoro: centre != QC".into())?;
    let proper: Vec<_> = c.tested.iter().filter(|t| t.proper).collect();
    ensure(!proper.is_empty() && proper.iter().all(|t| t.central), || "virasoro: proper ideal not central".into())?;
    ensure(c.verdict == Verdict::CentralExtensionOfSimple, || format!("virasoro: {}", c.verdict))?;

    let heis = builtin("heisenberg_conf").unwrap();
    let h = classify(&heis, 3, 8).map_err(|e| e.to_string())?;
    let hgens = heis.generators();
    let hqc = canonical_form(hgens, &[heis.generator("C").unwrap()]).unwrap();
    let t = &h.series.terms;
    ensure(
        t.len() == 3 && t[0].equals(&Submodule::full(hgens)).unwrap() && t[1].equals(&hqc).unwrap() && t[2].is_zero(),
        || "heisenberg: series is not [R, QC, 0]".into(),
    )?;
    ensure(h.series.solvable(), || "heisenberg: not solvable".into())?;
    Ok("virasoro c=1: R' = R, centre QC stable 3->4, proper ideals central; heisenberg: [R, QC, 0]".into())
}

fn cross_module() -> Outcome {
    let v = FockVertex::new(Cutoff::new(6));
    let r = extract_conformal(&v, 1).map_err(|e| e.to_string())?;
    ensure(r.basis == ["1", "x1"], || format!("basis {:?}", r.basis))?;
    ensure(r.passed(), || format!("{:?}", r.checks))?;
    let heis = builtin("heisenberg_conf").unwrap();
    let images = [FockState::var(1), FockState::vacuum()];
    let mism = compare_with_algebra(&v, &heis, &images).map_err(|e| e.to_string())?;
    ensure(mism.is_empty(), || mism.join("; "))?;
    Ok("table on {1, x1} equals heisenberg_conf under C -> 1; C1-C4 instances pass".into())
}

fn random_family(rng: &mut ChaCha8Rng, deg: usize, coords: &[usize]) -> LaurentFamily {
    (0..=deg)
        .map(|i| {
            let mut l = Laurent::zero();
            for _ in 0..rng.gen_range(0..4) {
                if coords.is_empty() {
                    break;
                }
                let k = coords[rng.gen_range(0..coords.len())];
                let c = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=6).into());
                l.add_term(rng.gen_range(-4..=4), k, c);
            }
            (i, l)
        })
        .collect()
}

fn separation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let (m, n) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let p = random_family(&mut rng, m, &[0, 1, 2]);
        let q = random_family(&mut rng, n, &[0, 1, 2]);
        let n0 = window_start(m, n);
        let rec = separate(&forward_expand(&p, &q, n0..=n0 + m), m, n).map_err(|e| e.to_string())?;
        ensure(rec == p, || format!("round trip {case} (m={m}, n={n})"))?;
    }
    for case in 0..20 {
        let u: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.5)).collect();
        let outside: Vec<usize> = (0..6).filter(|k| !u.contains(k)).collect();
        let (m, n) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let p = random_family(&mut rng, m, &u);
        let q = random_family(&mut rng, n, &outside);
        let n0 = window_start(m, n);
        let rec = separate(&forward_expand(&p, &q, n0..=n0 + m), m, n).map_err(|e| e.to_string())?;
        let inside = rec.entries.values().all(|l| l.support().all(|k| u.contains(&k)));
        ensure(inside, || format!("subspace case {case} left U = {u:?}"))?;
    }
    Ok("100 round trips exact; 20 random coordinate subspaces preserved".into())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("factorial determinant closed form", 1, factorial_determinant),
        ("conformal axiom suite and mutations", 5, axiom_suite),
        ("Borcherds commutator formula, W=12", 60, borcherds),
        ("generalized Wick formula, W=12", 60, wick),
        ("skew-commutativity and vacuum/translation identities, W=10", 30, skew_and_vacuum),
        ("vacuum line: central, not a vertex ideal", 5, vacuum_line),
        ("[I, V] closed under products, W=10 slack=4", 120, theorem),
        ("virasoro and heisenberg structure", 5, corollary),
        ("Fock extraction reproduces heisenberg_conf", 5, cross_module),
        ("separation round trip and subspace preservation", 10, separation),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("{msg}; over the {budget} s budget"))
            } else {
                Ok(msg)
            }
        });
        let (tag, msg) = match outcome {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("criterion {:>2} {tag}: {name}: {msg} ({:.2} s)", k + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
