//! τ, ε and a-sequences across the catalog.
//!
//! `cargo run --example invariants_tour`

use cfk::catalog;
use cfk::invariants::{invariants, Orientation, Tail};

fn main() {
    let complexes = vec![
        catalog::unknot(),
        catalog::staircase(&[1, 1]).unwrap(),
        catalog::staircase(&[2, 2]).unwrap(),
        catalog::staircase(&[1, 2, 2, 1]).unwrap(),
        catalog::staircase(&[1, 2, 2, 1]).unwrap().dual().unwrap(),
        catalog::torus_complex(4, 5).unwrap(),
        catalog::trefoil_cable_complex(3).unwrap(),
        catalog::trefoil_cable_complex(4).unwrap(),
        catalog::kn_model(2).unwrap(),
        catalog::kn_model(3).unwrap(),
        catalog::figure2_fixture(),
    ];
    for c in complexes {
        let r = invariants(&c, 16, None).unwrap();
        let aseq = match &r.aseq {
            None => "undefined (ε = 0)".to_string(),
            Some((a, o)) => {
                let tail = match a.tail {
                    Tail::Complete => "complete".to_string(),
                    Tail::Prime(v) => format!("prime {v}"),
                    Tail::PrimePair(x, y) => format!("primes {x}, {y}"),
                    Tail::DepthLimit => "depth limit".to_string(),
                };
                let side = match o {
                    Orientation::Direct => "",
                    Orientation::OfDual => " (of the dual)",
                };
                format!("{:?} [{tail}]{side}", a.terms)
            }
        };
        println!(
            "{:<28} τ = {:>2}  ε = {:>2}  a = {aseq}",
            c.name(),
            r.tau,
            r.epsilon
        );
    }
}
