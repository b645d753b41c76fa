//! Numerical laboratory for Orlicz-space embeddings on irregular domains.
//!
//! The library is organized around one construction: a boundary-growth
//! function φ (a power `t^s` or a power with a logarithmic correction)
//! determines a one-knot extension ψ, and from ψ an Orlicz N-function
//! representative H is built through an explicit formula for its inverse,
//!
//! ```text
//!   F⁻¹(t) = scale · t^{1/p − 1} / ψ(t^{−1/n})^{n−1},      H = F = (F⁻¹)⁻¹.
//! ```
//!
//! Around that sit:
//!
//! * [`orlicz`] — φ/ψ evaluation with certified structural constants,
//!   H and its inverse, the Legendre conjugate, the dyadic kernel-sum
//!   bound with constant C(n, α), and John-domain constants.
//! * [`geometry`] — cell-center grid domains in 2-D/3-D: boxes, cusps
//!   `{|x'| < ψ(x_n)}`, quarter-space domains with mushroom attachments,
//!   nested exhaustions, an exact distance transform, and a cigar-condition
//!   checker for user-supplied core curves (it certifies the curves it is
//!   given; it does not search for curves).
//! * [`fields`] — scalar fields on grid domains, gradients, Lᵖ and
//!   Luxemburg norms, modulars, averages, best-shift minimization.
//! * [`potentials`] — the modified Riesz potential with kernel
//!   1/ψ(|x−y|)^{n−1}, a discrete centered maximal operator, and the
//!   pointwise-domination experiment H(potential) ≲ (Mf)^p.
//! * [`experiments`] — Poincaré ratios and sweeps, exhaustion stability,
//!   the exponent table for s-John domains, and the two counterexample
//!   families (mushroom necks and far-field bumps) with closed-form rows.
//!
//! Everything downstream of a seed is deterministic: random fields use a
//! counter-based generator, reductions are ordered, and report CSV bodies
//! are byte-stable for equal configuration.

pub mod error;
pub mod experiments;
pub mod fields;
pub mod geometry;
pub mod numerics;
pub mod orlicz;
pub mod potentials;
pub mod report;

pub use error::{Error, Result};
