//! Legendre conjugate of H and its inverse.
//!
//! H*(s) = sup_{t ≥ 0} (s·t − H(t)), computed numerically against the
//! representative H (no convexification: the transform itself is blind
//! to non-convexity, so H* equals the conjugate of the convex envelope).
//! The supremum bracket comes from slope comparison — beyond any T with
//! H(T)/T ≥ s the objective is ≤ 0 — and a coarse scan inside the
//! bracket guards the golden-section refinement against the slope kink
//! at the knot.
//!
//! The inverse pair satisfies t ≤ H⁻¹(t)·(H*)⁻¹(t) ≤ 2t for convex H;
//! for the representative the window can widen by the (bounded) factor
//! between H and its envelope, which is why consumers assert the exact
//! window only for pure powers and a relaxed [t/4, 4t] otherwise.

use crate::error::{Error, Result};
use crate::numerics::golden_max;
use crate::orlicz::h_function::OrliczH;

/// Scan points inside the bracket before golden refinement.
const SCAN_POINTS: usize = 256;
/// Golden-section iterations; 0.618^70 ≈ 4e-15 of the bracket.
const GOLDEN_ITERS: usize = 70;

impl OrliczH {
    /// H*(s) = sup_{t≥0} (s·t − H(t)).  Errors on negative or non-finite
    /// s; H*(0) = 0.
    pub fn conjugate(&self, s: f64) -> Result<f64> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::Domain(format!(
                "the conjugate is defined on [0, inf); got s = {s}"
            )));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        // Slope-comparison bracket: find T with H(T)/T ≥ s.
        let mut t_hi = 1.0f64;
        loop {
            match self.eval_h(t_hi) {
                Ok(h) if h / t_hi >= s => break,
                Ok(_) => {
                    t_hi *= 4.0;
                    if t_hi > 1e300 {
                        return Err(Error::Overflow(format!(
                            "conjugate bracket for s = {s:e} exceeds 1e300"
                        )));
                    }
                }
                // H overflowing at t_hi means H(t_hi)/t_hi is certainly ≥ s.
                Err(Error::Overflow(_)) => break,
                Err(e) => return Err(e),
            }
        }
        // H may overflow inside the scan range; treat that as -inf
        // (those t are far beyond the maximizer).
        let objective = |t: f64| -> f64 {
            if t <= 0.0 {
                return 0.0;
            }
            match self.eval_h(t) {
                Ok(h) => s * t - h,
                Err(_) => f64::NEG_INFINITY,
            }
        };
        // Coarse scan, then golden refinement on the winning interval.
        let mut best_i = 0usize;
        let mut best = 0.0f64;
        let step = t_hi / SCAN_POINTS as f64;
        for i in 1..=SCAN_POINTS {
            let v = objective(i as f64 * step);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let lo = step * (best_i.saturating_sub(1)) as f64;
        let hi = step * ((best_i + 1).min(SCAN_POINTS)) as f64;
        let (_, peak) = golden_max(objective, lo, hi, GOLDEN_ITERS);
        // sup over t ≥ 0 is at least the value at t = 0, which is 0.
        Ok(peak.max(best).max(0.0))
    }

    /// (H*)⁻¹(t) by logarithmic bisection; H* is increasing on [0, ∞).
    pub fn conjugate_inv(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::Domain(format!(
                "the inverse conjugate is defined on [0, inf); got t = {t}"
            )));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        // Expand to a bracket [lo, hi] with H*(lo) ≤ t ≤ H*(hi).
        let mut hi = 1.0f64;
        while self.conjugate(hi)? < t {
            hi *= 4.0;
            if hi > 1e300 {
                return Err(Error::Overflow(format!(
                    "inverse-conjugate bracket for t = {t:e} exceeds 1e300"
                )));
            }
        }
        let mut lo = hi / 4.0;
        while self.conjugate(lo)? > t {
            lo /= 4.0;
            if lo < 1e-300 {
                return Err(Error::Overflow(format!(
                    "inverse-conjugate bracket for t = {t:e} fell below 1e-300"
                )));
            }
        }
        let (mut llo, mut lhi) = (lo.ln(), hi.ln());
        for _ in 0..60 {
            let lmid = 0.5 * (llo + lhi);
            if self.conjugate(lmid.exp())? < t {
                llo = lmid;
            } else {
                lhi = lmid;
            }
        }
        Ok((0.5 * (llo + lhi)).exp())
    }
}
