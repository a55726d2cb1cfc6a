//! Cross-module properties: algebra of tensor and reduce against the
//! invariants, and functoriality of the quotient-then-include maps.

use cfk::complex::{Arrow, Complex, Generator};
use cfk::invariants::{self, Tail};
use cfk::region::{quotient_include_map, RegionSpec};
use cfk::{catalog, region};

fn graded_multiset(c: &Complex) -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> = c
        .generators()
        .iter()
        .map(|g| (g.alexander, g.maslov))
        .collect();
    v.sort_unstable();
    v
}

/// Invariant-level equality: graded multiset, τ, ε, and the a-sequence.
fn same_invariants(a: &Complex, b: &Complex) {
    assert_eq!(graded_multiset(a), graded_multiset(b));
    assert_eq!(invariants::tau(a).unwrap(), invariants::tau(b).unwrap());
    let ea = invariants::epsilon(a).unwrap();
    assert_eq!(ea, invariants::epsilon(b).unwrap());
    if ea == 1 {
        let sa = invariants::a_sequence(a, 20, None).unwrap();
        let sb = invariants::a_sequence(b, 20, None).unwrap();
        assert_eq!(sa.terms, sb.terms);
        assert_eq!(sa.tail, sb.tail);
    }
}

#[test]
fn tensor_commutative_and_associative_up_to_renaming() {
    let a = catalog::staircase(&[1, 1]).unwrap();
    let b = catalog::staircase(&[1, 2, 2, 1]).unwrap();
    let c = catalog::figure2_fixture();
    same_invariants(&a.tensor(&b).unwrap(), &b.tensor(&a).unwrap());
    same_invariants(&a.tensor(&c).unwrap(), &c.tensor(&a).unwrap());
    let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
    let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
    same_invariants(&left, &right);
}

#[test]
fn reduce_idempotent_and_invariant_preserving() {
    // A trefoil with a cancellable pair spliced through the generator.
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
        "fat",
        vec![
            g("x0", 1, 0),
            g("y", 0, -1),
            g("x2", -1, -2),
            g("z", 0, -1),
            g("q", 0, -2),
        ],
        vec![
            ar("y", "x0", 1),
            ar("y", "x2", 0),
            ar("y", "q", 0),
            ar("z", "q", 0),
        ],
    )
    .unwrap();
    assert!(fat.validate().is_empty());
    let once = fat.reduce().unwrap();
    let twice = once.reduce().unwrap();
    assert_eq!(once, twice);
    // The reduction is a trefoil staircase: same invariants.
    let t23 = catalog::staircase(&[1, 1]).unwrap();
    assert_eq!(
        invariants::tau(&once).unwrap(),
        invariants::tau(&t23).unwrap()
    );
    assert_eq!(invariants::epsilon(&once).unwrap(), 1);
    let a = invariants::a_sequence(&once, 8, None).unwrap();
    assert_eq!(a.terms, vec![1, 1]);
    assert_eq!(a.tail, Tail::Complete);
    // Reduced fixtures are fixed points.
    for c in [
        t23,
        catalog::figure2_fixture(),
        catalog::kn_model(2).unwrap(),
    ] {
        assert_eq!(c.reduce().unwrap(), c);
    }
}

#[test]
fn quotient_include_functoriality_on_staircases() {
    // Composing column -> S(1) -> S(3) equals the direct map.
    for steps in [
        vec![1i64, 1],
        vec![2, 2],
        vec![1, 2, 2, 1],
        vec![1, 3, 3, 1],
    ] {
        let c = catalog::staircase(&steps).unwrap();
        let tau = invariants::tau(&c).unwrap();
        let w = region::window(&c, tau, 4);
        let killed = RegionSpec::ColumnSegment {
            i: 0,
            jmin: -w,
            jmax: tau - 1,
        };
        let small = RegionSpec::TruncatedMinHook { tau, s: 1 };
        let big = RegionSpec::TruncatedMinHook { tau, s: 3 };
        let first = quotient_include_map(&c, &RegionSpec::ColumnI0, &killed, &small).unwrap();
        let second = quotient_include_map(&c, &small, &RegionSpec::Explicit(vec![]), &big).unwrap();
        let direct = quotient_include_map(&c, &RegionSpec::ColumnI0, &killed, &big).unwrap();
        // Multiply the induced matrices over F₂.
        assert_eq!(second.source_rank, first.target_rank);
        assert_eq!(direct.source_rank, first.source_rank);
        assert_eq!(direct.target_rank, second.target_rank);
        for r in 0..second.target_rank {
            for s in 0..first.source_rank {
                let mut bit = false;
                for m in 0..first.target_rank {
                    bit ^= second.matrix[r][m] & first.matrix[m][s];
                }
                assert_eq!(
                    bit, direct.matrix[r][s],
                    "functoriality fails for {steps:?} at ({r}, {s})"
                );
            }
        }
    }
}

#[test]
fn epsilon_of_differences_and_duals_across_fixtures() {
    let fixtures = vec![
        catalog::staircase(&[1, 1]).unwrap(),
        catalog::staircase(&[2, 2]).unwrap(),
        catalog::staircase(&[1, 2, 2, 1]).unwrap(),
        catalog::trefoil_cable_complex(2).unwrap(),
        catalog::kn_model(2).unwrap(),
        catalog::figure2_fixture(),
    ];
    for c in &fixtures {
        let d = c.difference(c).unwrap();
        assert_eq!(
            invariants::epsilon(&d.reduce().unwrap()).unwrap(),
            0,
            "{}",
            c.name()
        );
        let dual = c.dual().unwrap();
        assert_eq!(
            invariants::epsilon(&dual).unwrap(),
            -invariants::epsilon(c).unwrap(),
            "{}",
            c.name()
        );
    }
}
