//! The total order on complexes up to ε-equivalence, absolute values,
//! Archimedean-equivalence witnesses, and dominance consistency checks.
//!
//! Every comparison is one ε computation on a formal tensor of factors;
//! multiples are never materialized, they enter as repeated factors of the
//! streaming engine.

use crate::complex::Complex;
use crate::error::CfkError;
use crate::invariants;
use crate::stream;

/// compare(C1, C2): ε of the reduced difference C1 ⊗ C2*.
/// +1 means C1 > C2, 0 equality in the group, -1 means C1 < C2.
pub fn compare(c1: &Complex, c2: &Complex) -> Result<i8, CfkError> {
    stream::epsilon_factors(&[(c1, false), (c2, true)])
}

/// The absolute value: C when ε(C) >= 0, otherwise the dual.
pub fn abs(c: &Complex) -> Result<Complex, CfkError> {
    if invariants::epsilon(c)? >= 0 {
        Ok(c.clone())
    } else {
        c.dual()
    }
}

/// Outcome of an Archimedean-equivalence search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArchOutcome {
    /// Both N·|g| > |h| and N·|h| > |g| confirmed at this N.
    Witness(u32),
    /// No N up to the bound confirmed both inequalities.
    Unknown(u32),
}

#[derive(Clone, Debug)]
pub struct ArchWitness {
    pub outcome: ArchOutcome,
    /// Whether N·|g| > |h| held at the last N tried.
    pub forward_confirmed: bool,
    /// Whether N·|h| > |g| held at the last N tried.
    pub backward_confirmed: bool,
}

fn multiple_gt(base: &Complex, n: u32, other: &Complex) -> Result<bool, CfkError> {
    // ε( base^{⊗N} ⊗ other* ) = +1?
    let mut parts: Vec<(&Complex, bool)> = Vec::with_capacity(n as usize + 1);
    for _ in 0..n {
        parts.push((base, false));
    }
    parts.push((other, true));
    Ok(stream::epsilon_factors(&parts)? == 1)
}

/// Searches N = 1..Nmax for the least N with N·|g| > |h| and N·|h| > |g|.
pub fn arch_equivalent(g: &Complex, h: &Complex, nmax: u32) -> Result<ArchWitness, CfkError> {
    if invariants::epsilon(g)? == 0 || invariants::epsilon(h)? == 0 {
        return Err(CfkError::ZeroElement);
    }
    let ga = abs(g)?;
    let ha = abs(h)?;
    let mut fwd = false;
    let mut bwd = false;
    for n in 1..=nmax {
        fwd = multiple_gt(&ga, n, &ha)?;
        bwd = multiple_gt(&ha, n, &ga)?;
        if fwd && bwd {
            return Ok(ArchWitness {
                outcome: ArchOutcome::Witness(n),
                forward_confirmed: true,
                backward_confirmed: true,
            });
        }
    }
    Ok(ArchWitness {
        outcome: ArchOutcome::Unknown(nmax),
        forward_confirmed: fwd,
        backward_confirmed: bwd,
    })
}

/// Outcome of a dominance consistency sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DominanceOutcome {
    /// compare(|big|, N·|small|) failed to be +1 at this N.
    RefutedAt(u32),
    /// All N up to the bound kept |big| above N·|small|.
    ConsistentUpTo(u32),
}

#[derive(Clone, Debug)]
pub struct DominanceReport {
    pub outcome: DominanceOutcome,
    /// Set when a size budget stopped the sweep before the bound.
    pub stopped_early: Option<String>,
}

/// Checks compare(|big|, N·|small|) = +1 for every N <= Nmax; the first
/// failure refutes dominance.
pub fn dominance_consistent(
    small: &Complex,
    big: &Complex,
    nmax: u32,
) -> Result<DominanceReport, CfkError> {
    if invariants::epsilon(small)? == 0 || invariants::epsilon(big)? == 0 {
        return Err(CfkError::ZeroElement);
    }
    let sa = abs(small)?;
    let ba = abs(big)?;
    for n in 1..=nmax {
        let mut parts: Vec<(&Complex, bool)> = vec![(&ba, false)];
        for _ in 0..n {
            parts.push((&sa, true));
        }
        match stream::epsilon_factors(&parts) {
            Ok(1) => {}
            Ok(_) => {
                return Ok(DominanceReport {
                    outcome: DominanceOutcome::RefutedAt(n),
                    stopped_early: None,
                })
            }
            Err(CfkError::SizeBudget { needed, budget }) => {
                return Ok(DominanceReport {
                    outcome: DominanceOutcome::ConsistentUpTo(n - 1),
                    stopped_early: Some(format!(
                        "size budget exceeded at N = {n}: needed {needed}, budget {budget}"
                    )),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(DominanceReport {
        outcome: DominanceOutcome::ConsistentUpTo(nmax),
        stopped_early: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn compare_examples() {
        let t34 = catalog::staircase(&[1, 2, 2, 1]).unwrap();
        assert_eq!(compare(&t34, &t34).unwrap(), 0);
        let st11 = catalog::staircase(&[1, 1]).unwrap();
        let st22 = catalog::staircase(&[2, 2]).unwrap();
        assert_eq!(compare(&st11, &st22).unwrap(), 1);
        assert_eq!(compare(&st22, &st11).unwrap(), -1);
        assert_eq!(compare(&catalog::unknot(), &st11).unwrap(), -1);
    }

    #[test]
    fn abs_examples() {
        let u = catalog::unknot();
        assert_eq!(abs(&u).unwrap(), u);
        let st11 = catalog::staircase(&[1, 1]).unwrap();
        let back = abs(&st11.dual().unwrap()).unwrap();
        // Double dual: same graded multiset and invariants.
        assert_eq!(crate::invariants::epsilon(&back).unwrap(), 1);
        assert_eq!(crate::invariants::tau(&back).unwrap(), 1);
        let kn = catalog::kn_model(2).unwrap();
        assert_eq!(abs(&kn).unwrap(), kn);
    }

    #[test]
    fn arch_self_witness_is_two() {
        let c = catalog::staircase(&[1, 1]).unwrap();
        let w = arch_equivalent(&c, &c, 8).unwrap();
        assert_eq!(w.outcome, ArchOutcome::Witness(2));
        let w1 = arch_equivalent(&c, &c, 1).unwrap();
        assert_eq!(w1.outcome, ArchOutcome::Unknown(1));
    }

    #[test]
    fn arch_zero_element_rejected() {
        let st11 = catalog::staircase(&[1, 1]).unwrap();
        assert!(matches!(
            arch_equivalent(&catalog::figure2_fixture(), &st11, 2),
            Err(CfkError::ZeroElement)
        ));
    }

    #[test]
    fn arch_staircases_of_different_scale_unknown() {
        let st11 = catalog::staircase(&[1, 1]).unwrap();
        let st22 = catalog::staircase(&[2, 2]).unwrap();
        let w = arch_equivalent(&st11, &st22, 8).unwrap();
        assert_eq!(w.outcome, ArchOutcome::Unknown(8));
    }

    #[test]
    fn arch_kn_model_matches_bracket_staircase() {
        let kn = catalog::kn_model(2).unwrap();
        let st = catalog::staircase(&[1, 2, 2, 1]).unwrap();
        let w = arch_equivalent(&kn, &st, 8).unwrap();
        match w.outcome {
            ArchOutcome::Witness(n) => assert!(n <= 2, "witness N = {n}"),
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn dominance_examples() {
        let st11 = catalog::staircase(&[1, 1]).unwrap();
        let st22 = catalog::staircase(&[2, 2]).unwrap();
        let r = dominance_consistent(&st22, &st11, 6).unwrap();
        assert_eq!(r.outcome, DominanceOutcome::ConsistentUpTo(6));
        // An element does not dominate itself: compare(|C|, 1·|C|) = 0
        // already fails the sweep at N = 1.
        let r = dominance_consistent(&st11, &st11, 2).unwrap();
        assert_eq!(r.outcome, DominanceOutcome::RefutedAt(1));
    }

    #[test]
    fn multiples_strictly_increase() {
        let st11 = catalog::staircase(&[1, 1]).unwrap();
        for k in 1..=3u32 {
            let a = st11.multiple(k).unwrap();
            let b = st11.multiple(k + 1).unwrap();
            assert_eq!(compare(&a, &b).unwrap(), -1);
        }
    }
}
