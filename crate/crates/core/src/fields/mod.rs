//! Scalar fields on grid domains and their norms.
//!
//! A field stores one value per inside cell.  Integrals are cell sums
//! weighted by `h^n`.  The Luxemburg norm
//! `inf { λ > 0 : Σ H(|u|/λ) h^n ≤ 1 }` is computed by bisection on
//! `log λ`; the best-shift norm minimizes it over constant shifts by
//! ternary search, which is valid because `b ↦ ‖u − b‖` is convex.

mod field;
mod norms;

pub use field::{gradient_magnitude, integral_average, GradientField, Region, ScalarField};
pub use norms::{best_shift_norm, lp_norm, luxemburg_norm, modular};
