//! N-function machinery driven by a boundary-growth function φ.
//!
//! `PhiSpec` holds a φ from one of two families together with the
//! structural constants the rest of the crate relies on (doubling
//! constant, the slope constant of the almost-increasing property of
//! φ(t)/t, and the exponent α⋆ for which t^α⋆/φ(t) is non-decreasing).
//! `PsiFunction` extends φ past its knee at t = 1 by the linear
//! continuation φ(1)·t.  `OrliczH` is the N-function representative
//! built from ψ through the explicit inverse formula, and the remaining
//! items package the dyadic kernel-sum bound and John-domain constants.

mod conjugate;
mod h_function;
mod hedberg;
mod john;
mod phi;

pub use h_function::OrliczH;
pub use hedberg::{hedberg_constant, hedberg_sum_check, HedbergRow, HedbergSplit};
pub use john::{john_constants, JohnConstants};
pub use phi::{default_probe_grid, PhiFamily, PhiSpec, PsiFunction, PROBE_POINTS, PROBE_RANGE};
