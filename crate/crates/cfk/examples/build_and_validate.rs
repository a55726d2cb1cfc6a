//! Build the catalog complexes, check their invariant conditions, and
//! watch the Gaussian reduction cancel a presentation with an extra pair.
//!
//! `cargo run --example build_and_validate`

use cfk::catalog;
use cfk::complex::{Arrow, Complex, Generator};

fn main() {
    for c in [
        catalog::unknot(),
        catalog::staircase(&[1, 1]).unwrap(),
        catalog::staircase(&[1, 2, 2, 1]).unwrap(),
        catalog::torus_complex(4, 5).unwrap(),
        catalog::trefoil_cable_complex(3).unwrap(),
        catalog::kn_model(2).unwrap(),
        catalog::figure2_fixture(),
    ] {
        let status = if c.validate().is_empty() {
            "valid"
        } else {
            "INVALID"
        };
        println!(
            "{:<24} {:>3} generators {:>3} arrows  reduced: {:<5} {status}",
            c.name(),
            c.len(),
            c.arrow_count(),
            c.is_reduced(),
        );
    }

    // A trefoil presented with one cancellable pair: reduce removes it.
    let g = |id: &str, a: i64, m: i64| Generator {
        id: id.into(),
        alexander: a,
        maslov: m,
    };
    let ar = |f: &str, t: &str, u: u32| Arrow {
        from: f.into(),
        to: t.into(),
        upower: u,
    };
    let fat = Complex::new(
        "trefoil_with_pair",
        vec![
            g("x0", 1, 0),
            g("x1", 0, -1),
            g("x2", -1, -2),
            g("p", 0, -1),
            g("q", 0, -2),
        ],
        vec![ar("x1", "x0", 1), ar("x1", "x2", 0), ar("p", "q", 0)],
    )
    .unwrap();
    let slim = fat.reduce().unwrap();
    println!(
        "\nreduce: {} ({} generators) -> {} generators, reduced: {}",
        fat.name(),
        fat.len(),
        slim.len(),
        slim.is_reduced()
    );

    // Deleting a vertical arrow breaks the column condition.
    let broken = Complex::new(
        "broken_staircase",
        catalog::staircase(&[1, 2, 2, 1])
            .unwrap()
            .generators()
            .to_vec(),
        vec![ar("x1", "x0", 1), ar("x3", "x2", 2), ar("x3", "x4", 0)],
    )
    .unwrap();
    println!("\nviolations of a staircase missing one vertical arrow:");
    for v in broken.validate() {
        println!("  {v}");
    }
}
