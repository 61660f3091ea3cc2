//! Truncation-level test that [I, V] is closed under all products.

use lcalc::fock::{theorem_ideal_check, Cutoff, FockState, FockVertex};

fn main() {
    let v = FockVertex::new(Cutoff::with_slack(8, 3));
    for gens in [vec!["x1"], vec!["x2"], vec!["x1^2"], vec!["1"]] {
        let states: Vec<FockState> = gens.iter().map(|g| FockState::parse(g).unwrap()).collect();
        let r = theorem_ideal_check(&v, &states).unwrap();
        println!("I = <{}>", gens.join(", "));
        println!("  dim I by weight: {:?}", r.i_dims);
        println!("  dim J by weight: {:?}", r.j_dims);
        println!("  products checked: {}, violations: {}", r.checked, r.violation_count);
        if let Some(w) = &r.i_not_ideal_witness {
            println!("  I is not itself an ideal: {w}");
        }
    }
    println!("caveat: {}", lcalc::fock::TRUNCATION_CAVEAT);
}
