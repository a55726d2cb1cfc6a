//! Crate-wide error type.

use std::fmt;

/// Errors reported by the engine.
///
/// Validation findings are not errors: `complex::validate` returns them as
/// data. `CfkError` covers precondition failures, infeasible regions, and
/// I/O trouble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfkError {
    /// A polynomial does not have the alternating ±1 coefficient shape.
    NotLSpaceShape(String),
    /// gcd(p, q) != 1 where coprimality is required.
    NonCoprime { p: i64, q: i64 },
    /// A companion polynomial with Δ(1) != ±1 was passed to the cable formula.
    NotAlexander(String),
    /// An operation required a valid complex but validation found violations.
    InvalidComplex(Vec<String>),
    /// A region realization escaped the bounding window.
    InfiniteRegion(String),
    /// An explicit region is not order-convex.
    NonConvex { hole: (i64, i64) },
    /// The copy-identity correspondence fails to commute with boundaries.
    ChainMapViolation(String),
    /// A chain fed to a homology-level operation is not a cycle.
    NotACycle,
    /// An arrow preserving both filtrations was found where a reduced
    /// complex was required.
    NotReduced { from: String, to: String },
    /// An invariant request that is undefined for the input (for example
    /// the a-sequence of an ε = 0 complex).
    UndefinedInvariant(String),
    /// Both the F and G maps were trivial; impossible for valid complexes.
    InvariantContradiction,
    /// A zero group element was passed where a nonzero one is required.
    ZeroElement,
    /// An argument was out of range (k < 1 multiples, bad window, ...).
    BadArgument(String),
    /// An a-sequence is too shallow to classify; recompute deeper.
    Unclassifiable(String),
    /// A computation exceeded the configured size budget.
    SizeBudget { needed: u64, budget: u64 },
    /// Render window larger than the permitted 64x64.
    WindowTooLarge { w: i64, h: i64 },
    /// I/O failure.
    Io(String),
    /// Parse failure for the on-disk format.
    Parse(String),
}

impl fmt::Display for CfkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfkError::NotLSpaceShape(p) => {
                write!(f, "coefficients are not alternating +1/-1: {p}")
            }
            CfkError::NonCoprime { p, q } => write!(f, "parameters not coprime: ({p}, {q})"),
            CfkError::NotAlexander(p) => write!(f, "companion has Δ(1) != ±1: {p}"),
            CfkError::InvalidComplex(v) => {
                write!(f, "invalid complex: {}", v.join("; "))
            }
            CfkError::InfiniteRegion(s) => write!(f, "region escapes bounding window: {s}"),
            CfkError::NonConvex { hole } => {
                write!(
                    f,
                    "explicit region not order-convex at ({}, {})",
                    hole.0, hole.1
                )
            }
            CfkError::ChainMapViolation(s) => write!(f, "chain map violation: {s}"),
            CfkError::NotACycle => write!(f, "input chain is not a cycle"),
            CfkError::NotReduced { from, to } => {
                write!(f, "arrow {from} -> {to} preserves both filtrations")
            }
            CfkError::UndefinedInvariant(s) => write!(f, "undefined invariant: {s}"),
            CfkError::InvariantContradiction => {
                write!(f, "both F and G maps trivial; upstream data corrupt")
            }
            CfkError::ZeroElement => write!(f, "element is ε-equivalent to the trivial complex"),
            CfkError::BadArgument(s) => write!(f, "bad argument: {s}"),
            CfkError::Unclassifiable(s) => write!(f, "unclassifiable a-sequence: {s}"),
            CfkError::SizeBudget { needed, budget } => {
                write!(f, "size budget exceeded: needed {needed}, budget {budget}")
            }
            CfkError::WindowTooLarge { w, h } => {
                write!(f, "render window {w}x{h} exceeds 64x64")
            }
            CfkError::Io(s) => write!(f, "io error: {s}"),
            CfkError::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for CfkError {}
