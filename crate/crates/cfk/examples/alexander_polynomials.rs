//! Torus and cable Alexander polynomials, their alternating exponents,
//! and the staircase complexes the exponent gaps define.
//!
//! `cargo run --example alexander_polynomials`

use cfk::catalog;
use cfk::laurent::{alternating_exponents, cable_alexander, torus_alexander};
use cfk::LaurentPoly;

fn main() {
    for n in 2..=6 {
        let d = torus_alexander(n, n + 1).unwrap();
        println!("torus ({n}, {}):  {d}", n + 1);
    }
    println!();
    let trefoil = LaurentPoly::from_terms(&[(2, 1), (1, -1), (0, 1)]);
    for n in 2..=5 {
        let d = cable_alexander(&trefoil, n, n + 1).unwrap();
        let exps = alternating_exponents(&d).unwrap();
        let gaps: Vec<i64> = exps.windows(2).map(|w| w[0] - w[1]).collect();
        println!("trefoil cable ({n}, {}):", n + 1);
        println!("  polynomial  {d}");
        println!("  exponents   {exps:?}");
        println!("  step vector {gaps:?}");
        let c = catalog::staircase_from_alexander(&d).unwrap();
        println!("  staircase   {} with {} generators", c.name(), c.len());
    }
}
