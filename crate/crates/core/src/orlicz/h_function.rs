//! The N-function representative H built from ψ.
//!
//! H is specified through its inverse,
//!
//! ```text
//!   F⁻¹(t) = scale · t^{1/p − 1} / ψ(t^{−1/n})^{n−1},   t > 0,   F⁻¹(0) = 0,
//! ```
//!
//! and H = F is recovered by inverting F⁻¹.  F⁻¹ is strictly increasing
//! with two power regimes separated by the knot t = 1 (where ψ switches
//! branch): below the knot F⁻¹(t) = φ(1)^{1−n}·scale·t^{(n−p)/(np)}
//! exactly for *every* φ family, and above it the pure-power family stays
//! an exact power with exponent (n − np + s·p(n−1))/(np).  Inversion uses
//! those closed forms where they are exact and a 60-step logarithmic
//! bisection on [1, 1e300] for the power-log family above the knot; a
//! value beyond the representable bracket is an overflow error rather
//! than an infinity.
//!
//! H is used directly as the representative of its equivalence class —
//! it may fail convexity near the knot by a bounded factor, and every
//! consumer (norms, conjugates, experiments) is written against the
//! representative, not a convexified envelope.

use crate::error::{Error, Result};
use crate::numerics::log_spaced;
use crate::orlicz::phi::{PhiFamily, PsiFunction};
use serde::Serialize;

/// Upper end of the representable bracket for inversions.
const T_MAX: f64 = 1e300;
/// Bisection steps for the power-log branch: ln(1e300)/2^60 ≈ 6e-16,
/// comfortably below the 1e-12 relative target.
const BISECT_STEPS: usize = 60;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrliczH {
    psi: PsiFunction,
    n: u32,
    p: f64,
    scale: f64,
    /// F⁻¹(1) = scale · φ(1)^{1−n}; the image of the knot.
    knot_value: f64,
    /// Exponent of F⁻¹ below the knot: (n−p)/(np).
    small_exp: f64,
    /// Exponent of F⁻¹ above the knot when φ is a pure power.
    large_exp: Option<f64>,
}

impl OrliczH {
    /// Build H for dimension `n` ≥ 2 and exponent `p` ∈ [1, n), scale 1.
    pub fn new(psi: PsiFunction, n: u32, p: f64) -> Result<Self> {
        Self::with_scale(psi, n, p, 1.0)
    }

    /// As [`OrliczH::new`] with an explicit multiplicative scale on F⁻¹.
    /// The scale is carried verbatim — no normalization happens anywhere
    /// downstream, so norms and conjugates see exactly this H.
    pub fn with_scale(psi: PsiFunction, n: u32, p: f64, scale: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!(
                "dimension n must be an integer >= 2, got {n}"
            )));
        }
        if !p.is_finite() || p < 1.0 || p >= n as f64 {
            return Err(Error::Parameter(format!(
                "exponent p must lie in [1, n) = [1, {n}), got {p}"
            )));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::Parameter(format!(
                "scale must be a positive real, got {scale}"
            )));
        }
        let nf = n as f64;
        let phi1 = psi.phi_at_one();
        let knot_value = scale * phi1.powi(1 - n as i32);
        let small_exp = (nf - p) / (nf * p);
        let large_exp = match psi.phi().family() {
            PhiFamily::Power { s } => Some((nf - nf * p + s * p * (nf - 1.0)) / (nf * p)),
            PhiFamily::PowerLog { alpha, beta } => {
                if beta == 0.0 {
                    // PowerLog(α, 0) degenerates to the pure power t^α.
                    Some((nf - nf * p + alpha * p * (nf - 1.0)) / (nf * p))
                } else {
                    None
                }
            }
        };
        Ok(OrliczH {
            psi,
            n,
            p,
            scale,
            knot_value,
            small_exp,
            large_exp,
        })
    }

    pub fn psi(&self) -> &PsiFunction {
        &self.psi
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Exponent of F⁻¹ on (0, 1]: (n−p)/(np).  Exact for every family.
    pub fn small_t_exponent(&self) -> f64 {
        self.small_exp
    }

    /// Exponent of F⁻¹ on [1, ∞) when φ is a pure power:
    /// (n − np + s·p(n−1))/(np).  `None` for genuine power-log φ.
    pub fn large_t_exponent(&self) -> Option<f64> {
        self.large_exp
    }

    /// A doubling constant for H itself: H(2u) ≤ 2^{np/(n−p)} · H(u),
    /// witnessed through F⁻¹(c·t) ≥ 2·F⁻¹(t) with c = 2^{np/(n−p)}.
    pub fn doubling_constant(&self) -> f64 {
        let nf = self.n as f64;
        2f64.powf(nf * self.p / (nf - self.p))
    }

    /// F⁻¹(t). Errors on negative or non-finite t; F⁻¹(0) = 0.
    pub fn eval_f_inv(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::Domain(format!(
                "F^-1 is defined on [0, inf); got t = {t}"
            )));
        }
        Ok(self.f_inv_pos(t))
    }

    #[inline]
    fn f_inv_pos(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let nf = self.n as f64;
        let u = t.powf(-1.0 / nf);
        let denom = self.psi.eval_pos(u).powi(self.n as i32 - 1);
        self.scale * t.powf(1.0 / self.p - 1.0) / denom
    }

    /// H(u) = F(u), the inverse of [`OrliczH::eval_f_inv`].
    ///
    /// Errors on negative or non-finite u, and reports an overflow error
    /// when the preimage would exceed 1e300 (equivalently, when u lies
    /// beyond F⁻¹(1e300)).
    pub fn eval_h(&self, u: f64) -> Result<f64> {
        if !u.is_finite() || u < 0.0 {
            return Err(Error::Domain(format!(
                "H is defined on [0, inf); got u = {u}"
            )));
        }
        if u == 0.0 {
            return Ok(0.0);
        }
        if u <= self.knot_value {
            // Below the knot F⁻¹ is the exact power knot_value · t^{small_exp}.
            return Ok((u / self.knot_value).powf(1.0 / self.small_exp));
        }
        if let Some(q) = self.large_exp {
            // Pure power above the knot: F⁻¹(t) = scale · t^q (φ(1) = 1).
            let t = (u / self.scale).powf(1.0 / q);
            if t > T_MAX {
                return Err(Error::Overflow(format!(
                    "H({u:e}) exceeds the representable bracket [0, 1e300]"
                )));
            }
            return Ok(t);
        }
        // Power-log above the knot: logarithmic bisection on [1, 1e300].
        if self.f_inv_pos(T_MAX) < u {
            return Err(Error::Overflow(format!(
                "H({u:e}) exceeds the representable bracket [0, 1e300]"
            )));
        }
        let (mut llo, mut lhi) = (0.0f64, T_MAX.ln());
        for _ in 0..BISECT_STEPS {
            let lmid = 0.5 * (llo + lhi);
            if self.f_inv_pos(lmid.exp()) < u {
                llo = lmid;
            } else {
                lhi = lmid;
            }
        }
        Ok((0.5 * (llo + lhi)).exp())
    }

    /// Convenience: H evaluated on a log grid (used by slope fits and the
    /// exponent table).
    pub fn eval_h_grid(&self, lo: f64, hi: f64, count: usize) -> Result<Vec<(f64, f64)>> {
        log_spaced(lo, hi, count)
            .into_iter()
            .map(|u| self.eval_h(u).map(|h| (u, h)))
            .collect()
    }

    /// True when H is an exact power (convex), i.e. the two branch
    /// exponents coincide.  Controls the search strategy in best-shift
    /// minimization.
    pub fn is_pure_power(&self) -> bool {
        match self.large_exp {
            Some(q) => (q - self.small_exp).abs() < 1e-14,
            None => false,
        }
    }
}
