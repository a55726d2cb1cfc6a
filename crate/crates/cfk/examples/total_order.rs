//! The total order: a comparison matrix over a small family and absolute
//! values.
//!
//! `cargo run --example total_order`

use cfk::{catalog, order};

fn main() {
    let family = vec![
        catalog::unknot(),
        catalog::staircase(&[1, 1]).unwrap(),
        catalog::staircase(&[2, 2]).unwrap(),
        catalog::staircase(&[1, 2, 2, 1]).unwrap(),
        catalog::staircase(&[1, 1]).unwrap().dual().unwrap(),
        catalog::figure2_fixture(),
    ];
    print!("{:<14}", "");
    for c in &family {
        print!("{:>12}", c.name());
    }
    println!();
    for a in &family {
        print!("{:<14}", a.name());
        for b in &family {
            print!("{:>12}", order::compare(a, b).unwrap());
        }
        println!();
    }
    println!();
    for c in &family {
        let abs = order::abs(c).unwrap();
        println!("|{}| = {}", c.name(), abs.name());
    }
}
