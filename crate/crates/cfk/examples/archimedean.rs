//! Archimedean equivalence witnesses and the dominance chain of the
//! difference models.
//!
//! `cargo run --release --example archimedean` (release recommended; the
//! n = 3 dominance sweep walks a tensor with hundreds of millions of
//! virtual generators).

use std::time::Instant;

use cfk::catalog;
use cfk::order::{arch_equivalent, dominance_consistent};

fn main() {
    for n in 2..=4i64 {
        let kn = catalog::kn_model(n).unwrap();
        let st = catalog::staircase(&[1, n, n, 1]).unwrap();
        let t = Instant::now();
        let w = arch_equivalent(&kn, &st, 8).unwrap();
        println!(
            "kn_model({n}) ~A st[1,{n},{n},1]: {:?}  ({:.2?})",
            w.outcome,
            t.elapsed()
        );
    }
    // Elements at different scales: no witness exists, only a bound.
    let st11 = catalog::staircase(&[1, 1]).unwrap();
    let st22 = catalog::staircase(&[2, 2]).unwrap();
    let w = arch_equivalent(&st11, &st22, 8).unwrap();
    println!("st[1,1] ~A st[2,2]: {:?}", w.outcome);

    let heavy = std::env::var("CFK_HEAVY").is_ok();
    let range = if heavy { 2..=3i64 } else { 2..=2i64 };
    for n in range {
        let small = catalog::kn_model(n).unwrap();
        let big = catalog::kn_model(n + 1).unwrap();
        let t = Instant::now();
        let r = dominance_consistent(&small, &big, 4).unwrap();
        println!(
            "kn_model({n}) ≪ kn_model({})? {:?}  ({:.2?})",
            n + 1,
            r.outcome,
            t.elapsed()
        );
    }
    if !heavy {
        println!("(set CFK_HEAVY=1 to run the n = 3 dominance sweep too)");
    }
}
