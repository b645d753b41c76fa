//! The modified Riesz potential, the centered maximal operator, and
//! the randomized pointwise-domination experiment that compares them.
//!
//! The potential of a field f at a cell center x is the direct sum
//! `Σ_y |f(y)| h^n / ψ(|x−y|)^{n−1}` over the other inside cells, plus
//! a self-cell proxy: the kernel integrated over the ball of the same
//! measure as one cell.  The maximal operator takes the largest
//! average of |f| over the counted cells of balls `{|y−x| < r}` with
//! radii from a dyadic ladder capped by the domain diameter.

mod maximal;
mod pointwise;
mod riesz;

pub use maximal::{default_radius_ladder, maximal_function};
pub use pointwise::{
    pointwise_estimate_experiment, PointwiseParams, PointwiseReport, ResolutionBlock, TrialRow,
};
pub use riesz::{equal_measure_radius_factor, radial_kernel_integral, riesz_potential, PotentialResult};
