//! Render the catalog pictures to SVG files under target/figures.
//!
//! `cargo run --example render_figures`

use std::path::PathBuf;

use cfk::catalog;
use cfk::render::{render_svg, Window};

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../target/figures");
    std::fs::create_dir_all(&dir).unwrap();
    let jobs: Vec<(&str, cfk::Complex, Window)> = vec![
        ("t34", catalog::torus_complex(3, 4).unwrap(), Window::Auto),
        ("t45", catalog::torus_complex(4, 5).unwrap(), Window::Auto),
        (
            "cable3",
            catalog::trefoil_cable_complex(3).unwrap(),
            Window::Auto,
        ),
        ("figure2", catalog::figure2_fixture(), Window::Auto),
        (
            "unknot_copies",
            catalog::unknot(),
            Window::Explicit {
                imin: -3,
                imax: 3,
                jmin: -3,
                jmax: 3,
            },
        ),
        (
            "trefoil_copies",
            catalog::staircase(&[1, 1]).unwrap(),
            Window::Explicit {
                imin: -4,
                imax: 4,
                jmin: -4,
                jmax: 4,
            },
        ),
    ];
    for (stem, c, window) in jobs {
        let svg = render_svg(&c, window).unwrap();
        let path = dir.join(format!("{stem}.svg"));
        std::fs::write(&path, &svg).unwrap();
        println!("wrote {}", path.display());
    }
}
