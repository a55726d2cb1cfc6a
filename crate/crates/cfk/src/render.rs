//! SVG rendering of (i, j)-plane diagrams.
//!
//! Auto mode draws one dot per generator at the canonical placement
//! obtained by solving c(to) = c(from) - upower along the arrow graph and
//! anchoring each connected component at minimum column zero; this
//! reproduces the usual staircase pictures. An explicit window instead
//! draws every lattice copy inside it, showing the U-orbit structure.
//! Co-located dots are offset along the antidiagonal in id order.

use std::collections::BTreeMap;

use crate::complex::Complex;
use crate::error::CfkError;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;
const OFFSET: f64 = 0.12;

/// Window bounds (imin, imax, jmin, jmax) or automatic placement.
#[derive(Clone, Copy, Debug)]
pub enum Window {
    Auto,
    Explicit {
        imin: i64,
        imax: i64,
        jmin: i64,
        jmax: i64,
    },
}

/// Column placement per generator: solve c(to) = c(from) - n along every
/// arrow, anchoring each component at minimum column zero. Falls back to
/// column zero for generators whose component is inconsistent.
fn placement(c: &Complex) -> Vec<i64> {
    let n = c.len();
    let mut col = vec![i64::MIN; n];
    let mut component = vec![usize::MAX; n];
    let mut comp_count = 0usize;
    for start in 0..n as u32 {
        if component[start as usize] != usize::MAX {
            continue;
        }
        let id = comp_count;
        comp_count += 1;
        let mut members = Vec::new();
        let mut queue = vec![start];
        component[start as usize] = id;
        col[start as usize] = 0;
        let mut consistent = true;
        while let Some(u) = queue.pop() {
            members.push(u);
            for &(t, up) in c.arrows_from(u) {
                let want = col[u as usize] - up as i64;
                if component[t as usize] == usize::MAX {
                    component[t as usize] = id;
                    col[t as usize] = want;
                    queue.push(t);
                } else if col[t as usize] != want {
                    consistent = false;
                }
            }
            for &(f, up) in c.arrows_into(u) {
                let want = col[u as usize] + up as i64;
                if component[f as usize] == usize::MAX {
                    component[f as usize] = id;
                    col[f as usize] = want;
                    queue.push(f);
                } else if col[f as usize] != want {
                    consistent = false;
                }
            }
        }
        if !consistent {
            for &m in &members {
                col[m as usize] = 0;
            }
        } else {
            let min = members.iter().map(|&m| col[m as usize]).min().unwrap();
            for &m in &members {
                col[m as usize] -= min;
            }
        }
    }
    col
}

fn fmt(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.2}")
    }
}

/// Renders the complex to SVG bytes. Deterministic output.
pub fn render_svg(c: &Complex, window: Window) -> Result<String, CfkError> {
    c.require_valid()?;
    c.require_reduced()?;
    // Dots: (i, j, generator index); arrows between drawn dots.
    type Dot = (i64, i64, u32);
    let mut dots: Vec<Dot> = Vec::new();
    let mut segments: Vec<(Dot, Dot)> = Vec::new();
    let (imin, imax, jmin, jmax) = match window {
        Window::Auto => {
            let col = placement(c);
            for (g, gen) in c.generators().iter().enumerate() {
                let i = col[g];
                dots.push((i, gen.alexander + i, g as u32));
            }
            for (f, t, u) in c.arrow_triples() {
                let fi = col[f as usize];
                let ti = fi - u as i64;
                segments.push((
                    (fi, c.gen(f).alexander + fi, f),
                    (ti, c.gen(t).alexander + ti, t),
                ));
            }
            let imin = dots.iter().map(|d| d.0).min().unwrap_or(0);
            let imax = dots.iter().map(|d| d.0).max().unwrap_or(0);
            let jmin = dots.iter().map(|d| d.1).min().unwrap_or(0);
            let jmax = dots.iter().map(|d| d.1).max().unwrap_or(0);
            (imin, imax, jmin, jmax)
        }
        Window::Explicit {
            imin,
            imax,
            jmin,
            jmax,
        } => {
            if imax < imin || jmax < jmin {
                return Err(CfkError::BadArgument("empty render window".into()));
            }
            if imax - imin + 1 > 64 || jmax - jmin + 1 > 64 {
                return Err(CfkError::WindowTooLarge {
                    w: imax - imin + 1,
                    h: jmax - jmin + 1,
                });
            }
            for (g, gen) in c.generators().iter().enumerate() {
                for i in imin..=imax {
                    let j = gen.alexander + i;
                    if jmin <= j && j <= jmax {
                        dots.push((i, j, g as u32));
                    }
                }
            }
            let drawn: std::collections::BTreeSet<(i64, i64, u32)> = dots.iter().copied().collect();
            for (f, t, u) in c.arrow_triples() {
                for &(i, j, g) in &dots {
                    if g != f {
                        continue;
                    }
                    let ti = i - u as i64;
                    let tj = c.gen(t).alexander + ti;
                    if drawn.contains(&(ti, tj, t)) {
                        segments.push(((i, j, f), (ti, tj, t)));
                    }
                }
            }
            (imin, imax, jmin, jmax)
        }
    };
    if imax - imin + 1 > 64 || jmax - jmin + 1 > 64 {
        return Err(CfkError::WindowTooLarge {
            w: imax - imin + 1,
            h: jmax - jmin + 1,
        });
    }
    // Antidiagonal offsets for co-located dots, in id order.
    let mut groups: BTreeMap<(i64, i64), Vec<u32>> = BTreeMap::new();
    for &(i, j, g) in &dots {
        groups.entry((i, j)).or_default().push(g);
    }
    let mut shift: BTreeMap<(i64, i64, u32), (f64, f64)> = BTreeMap::new();
    for ((i, j), mut gs) in groups {
        gs.sort_by(|&a, &b| c.gen(a).id.cmp(&c.gen(b).id));
        let k = gs.len();
        for (idx, &g) in gs.iter().enumerate() {
            let t = (2 * idx) as f64 - (k - 1) as f64;
            shift.insert((i, j, g), (t * OFFSET, -t * OFFSET));
        }
    }
    let place = |i: i64, j: i64, g: u32| -> (f64, f64) {
        let (dx, dy) = shift.get(&(i, j, g)).copied().unwrap_or((0.0, 0.0));
        let x = MARGIN + ((i - imin) as f64 + dx) * SCALE;
        let y = MARGIN + ((jmax - j) as f64 - dy) * SCALE;
        (x, y)
    };
    let width = MARGIN * 2.0 + (imax - imin) as f64 * SCALE;
    let height = MARGIN * 2.0 + (jmax - jmin) as f64 * SCALE;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(width), fmt(height), fmt(width), fmt(height)
    ));
    out.push_str(
        "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" \
         markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n",
    );
    // Grid.
    for i in imin..=imax {
        let x = MARGIN + (i - imin) as f64 * SCALE;
        let stroke = if i == 0 { "#888888" } else { "#dddddd" };
        out.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"{stroke}\" stroke-width=\"1\"/>\n",
            x = fmt(x),
            y1 = fmt(MARGIN - 10.0),
            y2 = fmt(height - MARGIN + 10.0),
        ));
    }
    for j in jmin..=jmax {
        let y = MARGIN + (jmax - j) as f64 * SCALE;
        let stroke = if j == 0 { "#888888" } else { "#dddddd" };
        out.push_str(&format!(
            "  <line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"{stroke}\" stroke-width=\"1\"/>\n",
            y = fmt(y),
            x1 = fmt(MARGIN - 10.0),
            x2 = fmt(width - MARGIN + 10.0),
        ));
    }
    // Arrows, sorted for determinism.
    segments.sort_by_key(|&((i1, j1, g1), (i2, j2, g2))| (g1, g2, i1, j1, i2, j2));
    for ((i1, j1, g1), (i2, j2, g2)) in segments {
        let (x1, y1) = place(i1, j1, g1);
        let (x2, y2) = place(i2, j2, g2);
        // Pull the endpoint back slightly so the arrowhead clears the dot.
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let (ex, ey) = (x2 - dx / len * 7.0, y2 - dy / len * 7.0);
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>\n",
            fmt(x1), fmt(y1), fmt(ex), fmt(ey)
        ));
    }
    // Dots, sorted by generator then position.
    dots.sort_by_key(|&(i, j, g)| (g, i, j));
    for (i, j, g) in dots {
        let (x, y) = place(i, j, g);
        out.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#000000\"><title>{}</title></circle>\n",
            fmt(x),
            fmt(y),
            c.gen(g).id
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn unknot_single_dot() {
        let svg = render_svg(&catalog::unknot(), Window::Auto).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn staircase_auto_layout() {
        let c = catalog::staircase(&[1, 2, 2, 1]).unwrap();
        let svg = render_svg(&c, Window::Auto).unwrap();
        assert_eq!(svg.matches("<circle").count(), 5);
        assert_eq!(svg.matches("marker-end").count(), 4);
        // Figure-style placement: x0 at (0,3), x1 at (1,3), x2 at (1,1),
        // x3 at (3,1), x4 at (3,0).
        let col = placement(&c);
        let cols: Vec<i64> = ["x0", "x1", "x2", "x3", "x4"]
            .iter()
            .map(|id| col[c.index_of(id).unwrap() as usize])
            .collect();
        assert_eq!(cols, vec![0, 1, 1, 3, 3]);
    }

    #[test]
    fn figure2_offsets() {
        let c = catalog::figure2_fixture();
        let svg = render_svg(&c, Window::Auto).unwrap();
        assert_eq!(svg.matches("<circle").count(), 9);
        assert_eq!(svg.matches("marker-end").count(), 11);
        // Offsets appear: some coordinates have the 0.12 shift.
        assert!(svg.contains(".12") || svg.contains(".88"));
    }

    #[test]
    fn explicit_window_shows_copies() {
        let c = catalog::unknot();
        let svg = render_svg(
            &c,
            Window::Explicit {
                imin: -1,
                imax: 1,
                jmin: -1,
                jmax: 1,
            },
        )
        .unwrap();
        // Copies at (-1,-1), (0,0), (1,1).
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn oversized_window_rejected() {
        let c = catalog::unknot();
        assert!(matches!(
            render_svg(
                &c,
                Window::Explicit {
                    imin: 0,
                    imax: 100,
                    jmin: 0,
                    jmax: 1
                }
            ),
            Err(CfkError::WindowTooLarge { .. })
        ));
    }

    #[test]
    fn deterministic_bytes() {
        let c = catalog::figure2_fixture();
        let a = render_svg(&c, Window::Auto).unwrap();
        let b = render_svg(&c, Window::Auto).unwrap();
        assert_eq!(a, b);
    }
}
