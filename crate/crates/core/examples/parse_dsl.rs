//! Parsing `.lca` sources, with diagnostics for broken input.

use lcalc::dsl::{parse_file, BUILTIN_NAMES};

const GOOD: &str = "
algebra w {
  param c;
  generator L : even;
  generator J : even;
  central K;
  bracket [L, L] = (D + 2*lam) L + (1/12)*c*lam^3*K;
  bracket [L, J] = (D + lam) J;
  bracket [J, J] = lam*K;
}";

const BAD: &str = "algebra broken {
  generator L : even;
  generator G : odd;
  bracket [L, G] = (D + lam) L;
  bracket [L, M] = L;
  bracket [L, L] = q*L;
}";

fn main() {
    println!("builtins: {}", BUILTIN_NAMES.join(", "));
    for alg in parse_file(GOOD).unwrap() {
        println!("parsed {} with {} generators", alg.name(), alg.rank());
        print!("{}", alg.to_source());
    }
    match parse_file(BAD) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(errors) => {
            for e in errors {
                println!("{}", e.render(BAD, "broken.lca"));
            }
        }
    }
}
