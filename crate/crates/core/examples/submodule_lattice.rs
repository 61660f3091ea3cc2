//! Canonical forms of C[D]-submodules and ideal closures.

use lcalc::arith::int;
use lcalc::conformal::{ideal_closure_rounds, lambda_coefficient_span};
use lcalc::dsl::{builtin, parse_element};
use lcalc::lattice::canonical_form;

fn main() {
    let sl2 = builtin("current_sl2").unwrap();
    let sl2 = sl2.specialize(&[("k".to_string(), int(1))].into()).unwrap();
    let el = |s: &str| parse_element(s, &sl2).unwrap();
    let gens = sl2.generators();

    let m = canonical_form(gens, &[el("D*e + h"), el("e"), el("D^2*h")]).unwrap();
    let n = canonical_form(gens, &[el("e"), el("h")]).unwrap();
    println!("M = {m}");
    println!("N = {n}");
    println!("M == N: {}", m.equals(&n).unwrap());
    println!("D*h in M: {}", m.contains(&el("D*h")).unwrap());
    println!("f in M: {}", m.contains(&el("f")).unwrap());
    println!("M + <f> = {}", m.sum(&canonical_form(gens, &[el("f")]).unwrap()).unwrap());

    let (ideal, rounds) = ideal_closure_rounds(&[el("e")], &sl2).unwrap();
    println!("ideal generated by e: {ideal} after {rounds} rounds");
    let comm = lambda_coefficient_span(&[el("e")], &[el("f")], &sl2).unwrap();
    println!("[e, f] coefficients span {comm}");
}
