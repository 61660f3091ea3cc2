use crate::conformal::{check_jacobi, check_skew, ConformalAlgebra, GeneratorDecl, Parity};

use std::collections::BTreeMap;

pub const BUILTIN_NAMES: &[&str] = &[
    "virasoro",
    "heisenberg_conf",
    "current_sl2",
    "neveu_schwarz",
    "abelian_n",
];

const VIRASORO: &str = "
algebra virasoro {
  param c;
  generator L : even;
  central C;
  bracket [L, L] = (D + 2*lam) L + (1/12)*lam^3*c*C;
}";

const HEISENBERG: &str = "
algebra heisenberg_conf {
  generator a : even;
  central C;
  bracket [a, a] = lam*C;
}";

const CURRENT_SL2: &str = "
algebra current_sl2 {
  param k;
  generator e : even;
  generator f : even;
  generator h : even;
  central K;
  bracket [e, f] = h + k*lam*K;
  bracket [e, h] = -2*e;
  bracket [f, h] = 2*f;
  bracket [h, h] = 2*k*lam*K;
}";

const NEVEU_SCHWARZ: &str = "
algebra neveu_schwarz {
  param c;
  generator L : even;
  generator G : odd;
  central C;
  bracket [L, L] = (D + 2*lam) L + (1/12)*lam^3*c*C;
  bracket [L, G] = (D + (3/2)*lam) G;
  bracket [G, G] = 2*L + (1/3)*c*lam^2*C;
}";

/// Looks up a builtin by name. `abelian_<n>` gives the abelian algebra on
/// `n` even free generators. Every builtin is checked against skew-symmetry
/// and the Jacobi identity before it is returned.
pub fn builtin(name: &str) -> Option<ConformalAlgebra> {
    let alg = match name {
        "virasoro" => parse(VIRASORO),
        "heisenberg_conf" => parse(HEISENBERG),
        "current_sl2" => parse(CURRENT_SL2),
        "neveu_schwarz" => parse(NEVEU_SCHWARZ),
        _ => {
            let n: usize = name.strip_prefix("abelian_")?.parse().ok()?;
            if n == 0 {
                return None;
            }
            let gens = (1..=n)
                .map(|i| GeneratorDecl::free(&format!("g{i}"), Parity::Even))
                .collect();
            ConformalAlgebra::new(name, Vec::new(), gens, BTreeMap::new())
                .expect("abelian presentation is well formed")
        }
    };
    assert!(
        check_skew(&alg).passed() && check_jacobi(&alg).passed(),
        "builtin `{name}` failed self-certification"
    );
    Some(alg)
}

fn parse(src: &str) -> ConformalAlgebra {
    super::parse_algebra(src).expect("builtin source parses")
}
