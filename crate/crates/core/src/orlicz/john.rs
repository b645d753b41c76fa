//! John-domain constants for the cigar condition built from ψ.
//!
//! A bounded domain carrying ψ-cigars with constant c_J is an
//! (α, β)-John domain with
//!
//! ```text
//!   β = max{ 2, c_J · diam(D) / φ(1) },
//!   α = c_J · φ(1) · β² / ψ( ψ(diam(D)/4) / (2 c_J) ),
//! ```
//!
//! and the ratio of α to the guaranteed center depth dist(x₀, ∂D) ≥
//! ψ(diam/4)/c_J is bounded by c_J²·φ(1)·β² / (ψ(ψ(diam/4)/(2c_J))·ψ(diam/4)),
//! which converges to 32·c_J⁵/φ(1)⁴ as diam(D) → ∞ (once every branch in
//! the formulas is in its linear regime the ratio equals the limit
//! exactly).

use crate::error::{Error, Result};
use crate::orlicz::phi::{PhiSpec, PsiFunction};
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct JohnConstants {
    pub alpha: f64,
    pub beta: f64,
    /// Upper bound for α / dist(x₀, ∂D) at this diameter.
    pub ratio_bound: f64,
    /// The diam → ∞ limit of `ratio_bound`: 32·c_J⁵/φ(1)⁴.
    pub asymptotic_ratio: f64,
}

/// Compute (α, β) John constants from the cigar constant and diameter.
/// Requires c_J ≥ 1 and diam_d > 0, both finite.
pub fn john_constants(phi: &PhiSpec, c_j: f64, diam_d: f64) -> Result<JohnConstants> {
    if !c_j.is_finite() || c_j < 1.0 {
        return Err(Error::Parameter(format!(
            "cigar constant c_J must satisfy c_J >= 1, got {c_j}"
        )));
    }
    if !diam_d.is_finite() || diam_d <= 0.0 {
        return Err(Error::Parameter(format!(
            "diameter must be a positive real, got {diam_d}"
        )));
    }
    let psi = PsiFunction::new(*phi);
    let phi1 = psi.phi_at_one();
    let beta = (c_j * diam_d / phi1).max(2.0);
    let inner = psi.eval_pos(diam_d / 4.0);
    let depth = psi.eval_pos(inner / (2.0 * c_j));
    let alpha = c_j * phi1 * beta * beta / depth;
    let ratio_bound = c_j * c_j * phi1 * beta * beta / (depth * inner);
    let asymptotic_ratio = 32.0 * c_j.powi(5) / phi1.powi(4);
    Ok(JohnConstants {
        alpha,
        beta,
        ratio_bound,
        asymptotic_ratio,
    })
}
