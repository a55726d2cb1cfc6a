//! Exact-arithmetic engine for doubly filtered chain complexes over
//! F₂[U, U⁻¹].
//!
//! The central object is [`Complex`]: a finitely generated, bifiltered,
//! reduced chain complex presented by generators with Alexander and Maslov
//! gradings and an F₂ arrow list with U-powers. On top of it the crate
//! computes the concordance-style invariants τ and ε, the a-sequence with
//! its primed extensions, the total order on the group of complexes up to
//! ε-equivalence, and Archimedean-equivalence witnesses.
//!
//! Modules:
//!
//! * [`laurent`] — integer Laurent polynomials and the Alexander-polynomial
//!   formulas for torus knots and cables.
//! * [`complex`] — the complex data model: validation, dual, tensor,
//!   reduction, differences and multiples.
//! * [`f2`] — bit-packed and sparse F₂ linear algebra.
//! * [`region`] — convex lattice regions realized as finite F₂ complexes,
//!   homology, induced maps, connecting homomorphisms.
//! * [`invariants`] — τ, ε and the a-sequence.
//! * [`order`] — the total order, absolute values, Archimedean witnesses.
//! * [`catalog`] — builders for staircases, torus knots, cables and the
//!   fixture complexes.
//! * [`suite`] — the mechanized lemma-verification suite.
//! * [`io`] — the on-disk JSON format.
//! * [`render`] — SVG rendering of (i, j)-plane diagrams.
//!
//! See the `examples/` directory for runnable tours of each capability.

pub mod catalog;
pub mod complex;
pub mod error;
pub mod f2;
pub mod invariants;
pub mod io;
pub mod laurent;
pub mod order;
pub mod region;
pub mod render;
pub mod stream;
pub mod suite;

pub use complex::{Arrow, ArrowKind, Complex, Generator};
pub use error::CfkError;
pub use invariants::{ASequence, InvariantReport, Tail};
pub use laurent::LaurentPoly;
pub use region::{HomologyBasis, RegionComplex, RegionSpec};
