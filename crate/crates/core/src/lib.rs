//! Polar derivatives, conjugate-reciprocal polynomials and certified
//! Bernstein-type inequalities on the unit circle.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: dense complex polynomials, factored form, radius profiles,
//!   derivative, conjugate-reciprocal and polar derivative.
//! * [`circle`]: rigorous two-sided enclosures of `max |P(z)|` over `|z| = 1`.
//! * [`bounds`]: the refinement constants `t0`/`s0` and the right-hand side of
//!   every inequality (Bernstein, Erdős–Lax, Malik, Aziz, the `t0`/`s0`
//!   refinements, the small-disk corollary and the Govil limit).
//! * [`verify`]: certified verdicts for the inequalities and pointwise checks
//!   of the supporting lemmas and identities.
//! * [`search`]: seeded hill-climbing that probes how tight the bounds are.

pub mod bounds;
pub mod circle;
mod error;
pub mod poly;
pub mod search;
pub mod verify;

pub use num_complex::Complex64;

pub use bounds::{BoundId, BoundValue, ConstantBranch, RefinementConstant};
pub use circle::{max_modulus, max_modulus_of_sum, sample_circle, CertifiedMax, DEFAULT_REL_TOL};
pub use error::{Error, Result};
pub use poly::{FactoredPolynomial, Orientation, Polynomial, RadiusProfile};
pub use search::{SearchConfig, SearchResult, SearchTarget};
pub use verify::{BoundReport, CheckId, PointwiseReport, Verdict};
