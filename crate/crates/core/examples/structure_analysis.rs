//! Derived series, centre and the ideal-based classification of the builtins.

use lcalc::arith::int;
use lcalc::conformal::classify;
use lcalc::dsl::builtin;

fn main() {
    let cases = [
        ("virasoro", vec![("c", 1)]),
        ("heisenberg_conf", vec![]),
        ("current_sl2", vec![("k", 1)]),
        ("neveu_schwarz", vec![("c", 1)]),
        ("abelian_2", vec![]),
    ];
    for (name, values) in cases {
        let alg = builtin(name).expect("builtin");
        let values = values.into_iter().map(|(p, v)| (p.to_string(), int(v))).collect();
        let alg = alg.specialize(&values).unwrap();
        let c = classify(&alg, 3, 8).unwrap();
        let series: Vec<String> = c.series.terms.iter().map(|m| m.render()).collect();
        println!("{name}");
        println!("  derived series: {} ({:?})", series.join(" > "), c.series.status);
        println!("  centre (deg <= 3): {} stable={}", c.centre.module, c.centre.stable);
        for t in &c.tested {
            println!("  ideal from {}: {} proper={} central={}", t.seed, t.module, t.proper, t.central);
        }
        println!("  verdict: {}", c.verdict);
    }
}
