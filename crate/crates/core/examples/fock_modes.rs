//! Modes of the free boson on polynomial Fock space.

use lcalc::fock::{basis_of_weight, translation, Cutoff, FockState, FockVertex};

fn main() {
    let v = FockVertex::new(Cutoff::new(8));
    let a = FockState::var(1);
    let vac = FockState::vacuum();
    let s = FockState::parse("x1^2 + 2*x3").unwrap();

    for w in 0..=4 {
        let basis: Vec<String> = basis_of_weight(w).iter().map(ToString::to_string).collect();
        println!("weight {w}: {}", basis.join(", "));
    }
    println!("T({s}) = {}", translation(&s));
    for n in -2..=2 {
        println!("x1_({n}) ({s}) = {}", v.mode(&a, n, &s));
    }
    println!("x1_(-2) 1 = {}", v.mode(&a, -2, &vac));

    let b = FockState::parse("x1^2").unwrap();
    let p = v.lambda_bracket(&b, &b);
    for (k, c) in p.coeffs().iter().enumerate() {
        println!("[x1^2 _lam x1^2] lam^{k}: {c}");
    }
    println!("memoised products: {}", v.memo_len());
}
