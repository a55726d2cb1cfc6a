//! Builders for the concrete complexes: staircases, torus knots, cables
//! of the trefoil, the difference models K_n, and embedded figure
//! fixtures.

use crate::complex::{Arrow, Complex, Generator};
use crate::error::CfkError;
use crate::laurent::{self, LaurentPoly};

/// The one-generator complex of the unknot.
pub fn unknot() -> Complex {
    Complex::new(
        "unknot",
        vec![Generator {
            id: "u0".into(),
            alexander: 0,
            maslov: 0,
        }],
        vec![],
    )
    .expect("unknot is structurally sound")
}

fn staircase_name(steps: &[i64]) -> String {
    let body: Vec<String> = steps.iter().map(|b| b.to_string()).collect();
    format!("st[{}]", body.join(","))
}

/// The staircase complex of a step vector b_1, ..., b_2m.
///
/// Generators x0..x2m with A(x0) the sum of the even-position steps and
/// A(x_k) = A(x_{k-1}) - b_k; each odd k contributes the horizontal arrow
/// x_k -> x_{k-1} of length b_k and the vertical arrow x_k -> x_{k+1} of
/// drop b_{k+1}. M(x0) = 0, the rest propagated by the grading constraint.
///
/// Step vectors must be palindromic; non-palindromic algebraic elements go
/// through [`staircase_algebraic`].
pub fn staircase(steps: &[i64]) -> Result<Complex, CfkError> {
    let palindromic = steps.iter().eq(steps.iter().rev());
    if !palindromic {
        return Err(CfkError::BadArgument(format!(
            "step vector {steps:?} is not palindromic; use staircase_algebraic for algebraic elements"
        )));
    }
    staircase_algebraic(steps)
}

/// Staircase builder without the palindrome gate; the result must still
/// pass full validation.
pub fn staircase_algebraic(steps: &[i64]) -> Result<Complex, CfkError> {
    if steps.is_empty() {
        return Ok(unknot().with_name(staircase_name(steps)));
    }
    if !steps.len().is_multiple_of(2) {
        return Err(CfkError::BadArgument(format!(
            "step vector must have even length, got {}",
            steps.len()
        )));
    }
    if steps.iter().any(|&b| b < 1) {
        return Err(CfkError::BadArgument(format!(
            "steps must be >= 1, got {steps:?}"
        )));
    }
    let m2 = steps.len();
    let a0: i64 = steps.iter().skip(1).step_by(2).sum();
    let mut gens = Vec::with_capacity(m2 + 1);
    let mut a = a0;
    let mut m = 0i64;
    gens.push(Generator {
        id: "x0".into(),
        alexander: a0,
        maslov: 0,
    });
    for k in 1..=m2 {
        let b = steps[k - 1];
        a -= b;
        m = if k % 2 == 1 { m + 1 - 2 * b } else { m - 1 };
        gens.push(Generator {
            id: format!("x{k}"),
            alexander: a,
            maslov: m,
        });
    }
    let mut arrows = Vec::new();
    for k in (1..=m2).step_by(2) {
        arrows.push(Arrow {
            from: format!("x{k}"),
            to: format!("x{}", k - 1),
            upower: steps[k - 1] as u32,
        });
        arrows.push(Arrow {
            from: format!("x{k}"),
            to: format!("x{}", k + 1),
            upower: 0,
        });
    }
    let c = Complex::new(staircase_name(steps), gens, arrows)?;
    c.require_valid()?;
    Ok(c)
}

/// Staircase from an Alexander polynomial with the alternating ±1 shape:
/// the steps are the successive gaps of the exponent list.
pub fn staircase_from_alexander(delta: &LaurentPoly) -> Result<Complex, CfkError> {
    let exps = laurent::alternating_exponents(delta)?;
    let steps: Vec<i64> = exps.windows(2).map(|w| w[0] - w[1]).collect();
    staircase(&steps)
}

/// The staircase complex of the (p, q) torus knot, 2 <= p < q coprime.
pub fn torus_complex(p: i64, q: i64) -> Result<Complex, CfkError> {
    if !(2 <= p && p < q) {
        return Err(CfkError::BadArgument(format!(
            "need 2 <= p < q, got ({p}, {q})"
        )));
    }
    let delta = laurent::torus_alexander(p, q)?;
    Ok(staircase_from_alexander(&delta)?.with_name(format!("t{p}_{q}")))
}

/// The staircase complex of the (n, n+1) cable of the right-handed
/// trefoil, n >= 2.
pub fn trefoil_cable_complex(n: i64) -> Result<Complex, CfkError> {
    if n < 2 {
        return Err(CfkError::BadArgument(format!(
            "cable parameter must be >= 2, got {n}"
        )));
    }
    let trefoil = LaurentPoly::from_terms(&[(2, 1), (1, -1), (0, 1)]);
    let delta = laurent::cable_alexander(&trefoil, n, n + 1)?;
    Ok(staircase_from_alexander(&delta)?.with_name(format!("cable_t23_{n}_{}", n + 1)))
}

/// The model of K_n: the (n, n+1)-cable complex tensored with the dual of
/// the (n, n+1) torus complex, reduced.
///
/// The cable of the doubled knot is replaced by the cable of the trefoil;
/// the name records that modeling substitution.
pub fn kn_model(n: i64) -> Result<Complex, CfkError> {
    let cable = trefoil_cable_complex(n)?;
    let torus = torus_complex(n, n + 1)?;
    let d = cable.difference(&torus)?;
    d.reduce()
        .map(|c| c.with_name(format!("kn{n}_D_as_trefoil_cable")))
}

/// The nine-generator complex without a simultaneously vertically and
/// horizontally simplified basis.
pub fn figure2_fixture() -> Complex {
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
    let c = Complex::new(
        "figure2",
        vec![
            g("a", 2, 0),
            g("b", 2, 0),
            g("c", 0, -3),
            g("d", 0, -3),
            g("e", 0, -2),
            g("f", 0, -1),
            g("g", 0, -1),
            g("h", -2, -4),
            g("i", -2, -4),
        ],
        vec![
            ar("c", "a", 2),
            ar("c", "i", 0),
            ar("d", "b", 2),
            ar("d", "h", 0),
            ar("d", "e", 1),
            ar("a", "f", 0),
            ar("b", "g", 0),
            ar("e", "f", 1),
            ar("i", "f", 2),
            ar("h", "g", 2),
            ar("h", "f", 2),
        ],
    )
    .expect("figure2 fixture is structurally sound");
    debug_assert!(c.validate().is_empty());
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_staircase_gradings() {
        let c = staircase(&[1, 1]).unwrap();
        assert_eq!(c.len(), 3);
        let grades: Vec<(i64, i64)> = ["x0", "x1", "x2"]
            .iter()
            .map(|id| {
                let g = c.gen(c.index_of(id).unwrap());
                (g.alexander, g.maslov)
            })
            .collect();
        assert_eq!(grades, vec![(1, 0), (0, -1), (-1, -2)]);
    }

    #[test]
    fn t34_staircase_lattice() {
        let c = staircase(&[1, 2, 2, 1]).unwrap();
        assert_eq!(c.len(), 5);
        let a: Vec<i64> = ["x0", "x1", "x2", "x3", "x4"]
            .iter()
            .map(|id| c.gen(c.index_of(id).unwrap()).alexander)
            .collect();
        assert_eq!(a, vec![3, 2, 0, -2, -3]);
        assert!(c.validate().is_empty());
        assert!(c.is_reduced());
    }

    #[test]
    fn two_step_staircase() {
        let c = staircase(&[2, 2]).unwrap();
        let mut a: Vec<i64> = c.generators().iter().map(|g| g.alexander).collect();
        a.sort_unstable();
        assert_eq!(a, vec![-2, 0, 2]);
    }

    #[test]
    fn non_palindromic_rejected() {
        assert!(staircase(&[1, 2]).is_err());
        // The algebraic-element path skips the palindrome gate but still
        // validates; an asymmetric zig-zag fails the symmetry condition.
        assert!(matches!(
            staircase_algebraic(&[1, 2]),
            Err(crate::error::CfkError::InvalidComplex(_))
        ));
    }

    #[test]
    fn staircase_from_alexander_t34() {
        let d = LaurentPoly::from_terms(&[(6, 1), (5, -1), (3, 1), (1, -1), (0, 1)]);
        let c = staircase_from_alexander(&d).unwrap();
        assert_eq!(c.name(), "st[1,2,2,1]");
    }

    #[test]
    fn staircase_from_alexander_unknot() {
        let c = staircase_from_alexander(&LaurentPoly::one()).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn staircase_from_alexander_t45() {
        let d = laurent::torus_alexander(4, 5).unwrap();
        let c = staircase_from_alexander(&d).unwrap();
        assert_eq!(c.name(), "st[1,3,2,2,3,1]");
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn torus_complexes() {
        assert_eq!(torus_complex(2, 3).unwrap().len(), 3);
        assert_eq!(torus_complex(3, 4).unwrap().len(), 5);
        assert_eq!(torus_complex(4, 5).unwrap().len(), 7);
    }

    #[test]
    fn trefoil_cables() {
        // Gaps of the cable polynomials.
        let c2 = trefoil_cable_complex(2).unwrap();
        assert_eq!(c2.len(), 5);
        let c3 = trefoil_cable_complex(3).unwrap();
        assert_eq!(c3.len(), 9);
        let c4 = trefoil_cable_complex(4).unwrap();
        assert_eq!(c4.len(), 13);
        let c5 = trefoil_cable_complex(5).unwrap();
        assert_eq!(c5.len(), 17);
    }

    #[test]
    fn cable3_steps() {
        // Exponents [12,11,8,7,6,5,4,1,0] -> steps [1,3,1,1,1,1,3,1].
        let trefoil = LaurentPoly::from_terms(&[(2, 1), (1, -1), (0, 1)]);
        let d = laurent::cable_alexander(&trefoil, 3, 4).unwrap();
        let exps = laurent::alternating_exponents(&d).unwrap();
        assert_eq!(exps, vec![12, 11, 8, 7, 6, 5, 4, 1, 0]);
        let c = trefoil_cable_complex(3).unwrap();
        assert_eq!(c.len(), 9);
    }

    #[test]
    fn kn_model_counts() {
        // 5 x 3 and 9 x 5 generators; the tensor of reduced staircases is
        // already reduced, so no cancellation occurs.
        assert_eq!(kn_model(2).unwrap().len(), 15);
        assert_eq!(kn_model(3).unwrap().len(), 45);
    }

    #[test]
    fn builders_validate_and_reduce() {
        for c in [
            unknot(),
            staircase(&[1, 1]).unwrap(),
            staircase(&[2, 2]).unwrap(),
            staircase(&[1, 2, 2, 1]).unwrap(),
            staircase(&[1, 3, 3, 1]).unwrap(),
            torus_complex(4, 5).unwrap(),
            trefoil_cable_complex(3).unwrap(),
            kn_model(2).unwrap(),
            figure2_fixture(),
        ] {
            assert!(c.validate().is_empty(), "{} invalid", c.name());
            assert!(c.is_reduced(), "{} not reduced", c.name());
        }
    }

    #[test]
    fn figure2_data() {
        let c = figure2_fixture();
        assert_eq!(c.len(), 9);
        assert_eq!(c.arrow_count(), 11);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn staircase_roundtrip_via_gaps() {
        // Regenerate the polynomial exponents from the A-gaps of the
        // staircase and compare step vectors.
        for steps in [
            vec![1, 1],
            vec![2, 2],
            vec![1, 2, 2, 1],
            vec![1, 3, 2, 2, 3, 1],
        ] {
            let c = staircase(&steps).unwrap();
            let mut a: Vec<i64> = c.generators().iter().map(|g| g.alexander).collect();
            a.sort_unstable();
            a.reverse();
            let gaps: Vec<i64> = a.windows(2).map(|w| w[0] - w[1]).collect();
            assert_eq!(gaps, steps);
        }
    }
}
