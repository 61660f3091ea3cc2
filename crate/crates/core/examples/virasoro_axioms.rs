//! Axiom checks on the Virasoro conformal algebra with a formal central charge.

use lcalc::conformal::{check_jacobi, check_skew};
use lcalc::dsl::{builtin, parse_element};

fn main() {
    let vir = builtin("virasoro").expect("builtin");
    print!("{}", vir.to_source());

    let gens = vir.generators();
    for (x, y) in [("L", "L"), ("D*L", "L"), ("L", "D^2*L"), ("L", "C")] {
        let a = parse_element(x, &vir).unwrap();
        let b = parse_element(y, &vir).unwrap();
        let p = vir.bracket(&a, &b).unwrap();
        println!("[{x}_lam {y}] = {}", gens.render_lambda(&p));
    }

    let skew = check_skew(&vir);
    let jacobi = check_jacobi(&vir);
    println!("skew-symmetry: {} ({} pairs)", verdict(skew.passed()), skew.entries.len());
    println!("Jacobi identity: {} ({} triples)", verdict(jacobi.passed()), jacobi.entries.len());
    for note in &jacobi.notes {
        println!("  note: {note}");
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
