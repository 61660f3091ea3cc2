//! The lambda-bracket induced on low-weight Fock states, compared with heisenberg_conf.

use lcalc::dsl::builtin;
use lcalc::fock::{compare_with_algebra, extract_conformal, Cutoff, FockState, FockVertex};

fn main() {
    let v = FockVertex::new(Cutoff::new(6));
    let report = extract_conformal(&v, 2).unwrap();
    println!("basis: {:?}", report.basis);
    for e in report.table.iter().filter(|e| !e.coefficients.is_empty()) {
        println!("[{}_lam {}] = {:?}", e.left, e.right, e.coefficients);
    }
    for c in &report.checks {
        println!("{}: {} instances, ok={}", c.name, c.instances, c.passed());
    }
    let heis = builtin("heisenberg_conf").unwrap();
    let mism = compare_with_algebra(&v, &heis, &[FockState::var(1), FockState::vacuum()]).unwrap();
    println!("a -> x1, C -> 1 matches heisenberg_conf: {}", mism.is_empty());
}
