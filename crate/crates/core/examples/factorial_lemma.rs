//! The factorial matrix, its determinant, and recovery of p from e^{lam z} p + q.

use lcalc::arith::{int, rat};
use lcalc::wick::{factorial_det_check, factorial_matrix, forward_expand, separate, window_start, Laurent, LaurentFamily};

fn main() {
    for row in factorial_matrix(2, 3).unwrap() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("[{}]", cells.join(", "));
    }
    for (m, n) in [(1, 1), (2, 3), (4, 6), (6, 12)] {
        let c = factorial_det_check(m, n).unwrap();
        println!("m={m} N={n}: det = {} closed form = {} equal={}", c.computed, c.closed_form, c.equal);
    }

    // p = z^-1 + lam * (2 - z^2 / 3), q = lam^2 * z^5
    let p: LaurentFamily = [
        (0, Laurent::scalar(-1, int(1))),
        (1, Laurent::from_scalars([(0, int(2)), (2, rat(-1, 3))])),
    ]
    .into_iter()
    .collect();
    let q: LaurentFamily = [(2, Laurent::scalar(5, int(1)))].into_iter().collect();
    let (m, n) = (1, 2);
    let n0 = window_start(m, n);
    let coeffs = forward_expand(&p, &q, n0..=n0 + m);
    for (d, c) in &coeffs {
        println!("lam^{d}: {c}");
    }
    let rec = separate(&coeffs, m, n).unwrap();
    for (i, l) in &rec.entries {
        println!("recovered p_{i} = {l}");
    }
    assert_eq!(rec, p);
}
