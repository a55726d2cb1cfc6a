//! Region realizations and the homological maps behind ε: columns, hooks,
//! quotient-then-include maps, and a connecting homomorphism.
//!
//! `cargo run --example regions_and_maps`

use cfk::region::{connecting_map, quotient_include_map, realize_region, RegionSpec};
use cfk::{catalog, invariants};

fn main() {
    let c = catalog::staircase(&[1, 2, 2, 1]).unwrap();
    let tau = invariants::tau(&c).unwrap();
    println!("{}: τ = {tau}", c.name());

    for spec in [
        RegionSpec::ColumnI0,
        RegionSpec::MinHook { tau },
        RegionSpec::MaxHook { tau },
        RegionSpec::TruncatedMinHook { tau, s: 1 },
        RegionSpec::SRegion {
            tau,
            prefix: vec![1],
            s: 2,
        },
    ] {
        let r = realize_region(&c, &spec).unwrap();
        let h = r.homology();
        println!(
            "  {spec:?}: dimension {}, homology rank {}",
            r.dim(),
            h.rank
        );
    }

    // The F map kills the generator (so ε = +1) ...
    let f = quotient_include_map(
        &c,
        &RegionSpec::ColumnI0,
        &RegionSpec::ColumnSegment {
            i: 0,
            jmin: -20,
            jmax: tau - 1,
        },
        &RegionSpec::MinHook { tau },
    )
    .unwrap();
    println!("F map zero: {}", f.is_zero());
    // ... while on the figure-2 fixture both maps are nonzero (ε = 0).
    let fig = catalog::figure2_fixture();
    let f = quotient_include_map(
        &fig,
        &RegionSpec::ColumnI0,
        &RegionSpec::ColumnSegment {
            i: 0,
            jmin: -20,
            jmax: -1,
        },
        &RegionSpec::MinHook { tau: 0 },
    )
    .unwrap();
    let killed: Vec<(i64, i64)> = (-20..0).map(|i| (i, 0)).collect();
    let g = quotient_include_map(
        &fig,
        &RegionSpec::MaxHook { tau: 0 },
        &RegionSpec::Explicit(killed),
        &RegionSpec::ColumnI0,
    )
    .unwrap();
    println!("figure2: F zero: {}, G zero: {}", f.is_zero(), g.is_zero());

    // Connecting homomorphism along the staircase zig-zag: the class of
    // the x3 corner maps to the generator class.
    let delta = connecting_map(
        &c,
        &RegionSpec::SRegion {
            tau,
            prefix: vec![1],
            s: 2,
        },
        &RegionSpec::SRegion {
            tau,
            prefix: vec![1, 2],
            s: 2,
        },
        &[("x3".into(), (3, 1))],
    )
    .unwrap();
    println!("δ of the x3 corner class: {delta:?}");
}
