//! Exact sweeps of the vertex-algebra identities inside a weight window.

use lcalc::fock::{borcherds_sweep, skew_sweep, verify_axioms, wick_sweep, Cutoff, FockVertex, SweepReport};

fn show(r: &SweepReport) {
    println!(
        "{:<10} cases={} compared={} vacuous={} refused={} failures={}",
        r.name,
        r.cases,
        r.asserted,
        r.vacuous,
        r.refused.len(),
        r.failures.len()
    );
}

fn main() {
    let v = FockVertex::new(Cutoff::new(8));
    show(&borcherds_sweep(&v, 3, 3, 2));
    show(&wick_sweep(&v, 2));
    show(&skew_sweep(&v, 4));
    for c in verify_axioms(&v, 3).identities {
        println!("{:<48} instances={} ok={}", c.name, c.instances, c.passed());
    }
    // windows that would need weights above the cutoff are refused, not guessed
    show(&skew_sweep(&FockVertex::new(Cutoff::new(4)), 3));
}
