//! Regenerates the `fixtures/` directory at the workspace root.
//!
//! Run from anywhere inside the workspace:
//! `cargo run --example export_fixtures`

use std::path::PathBuf;

use cfk::complex::{Arrow, Complex, Generator};
use cfk::{catalog, io};

/// The cable-pattern complex shipped as data only: seven generators whose
/// bifiltered picture matches the (2,1)-cable of the trefoil.
fn t23_2_1() -> Complex {
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
    Complex::new(
        "t23_2_1",
        vec![
            g("a", 2, 0),
            g("b", 1, -1),
            g("c", -1, -2),
            g("d", 0, -1),
            g("e", 1, 0),
            g("f", -1, -3),
            g("g", -2, -4),
        ],
        vec![
            ar("b", "a", 1),
            ar("b", "c", 0),
            ar("b", "e", 1),
            ar("c", "d", 1),
            ar("e", "d", 0),
            ar("f", "e", 2),
            ar("f", "g", 0),
            ar("f", "c", 1),
        ],
    )
    .expect("t23_2_1 fixture is structurally sound")
}

fn main() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&root).expect("create fixtures directory");
    let mut fixtures: Vec<(&str, Complex)> = vec![
        ("unknot", catalog::unknot()),
        ("st_1_1", catalog::staircase(&[1, 1]).unwrap()),
        ("st_2_2", catalog::staircase(&[2, 2]).unwrap()),
        ("st_1_2_2_1", catalog::staircase(&[1, 2, 2, 1]).unwrap()),
        ("st_1_3_3_1", catalog::staircase(&[1, 3, 3, 1]).unwrap()),
        ("t23", catalog::torus_complex(2, 3).unwrap()),
        ("t34", catalog::torus_complex(3, 4).unwrap()),
        ("t45", catalog::torus_complex(4, 5).unwrap()),
        ("figure2", catalog::figure2_fixture()),
        ("t23_2_1", t23_2_1()),
    ];
    for n in 2..=5 {
        fixtures.push((
            match n {
                2 => "cable2",
                3 => "cable3",
                4 => "cable4",
                _ => "cable5",
            },
            catalog::trefoil_cable_complex(n).unwrap(),
        ));
    }
    for n in 2..=4 {
        fixtures.push((
            match n {
                2 => "kn2",
                3 => "kn3",
                _ => "kn4",
            },
            catalog::kn_model(n).unwrap(),
        ));
    }
    for (stem, c) in &fixtures {
        let violations = c.validate();
        assert!(violations.is_empty(), "{stem}: {violations:?}");
        let path = root.join(format!("{stem}.json"));
        io::write_complex(&path, c).expect("write fixture");
        println!("wrote {} ({} generators)", path.display(), c.len());
    }
}
