//! Dyadic kernel-sum bound and the two-piece kernel split.
//!
//! For α ∈ [1, n/(n−1)) the constant
//!
//! ```text
//!   C(n, α) = 2^{α(n−1)} / (2^n − 2^{α(n−1)})
//! ```
//!
//! dominates the dyadic sum Σ_{k≥1} (2^{−k}t)^n / ψ(2^{−k}t)^{n−1} by
//! C(n, α)·t^n/ψ(t)^{n−1} whenever t^α/ψ(t) is non-decreasing (each term
//! is then ≤ 2^{−k(n−α(n−1))} times the bound's numerator, and the
//! geometric series sums to C(n, α)).  Equality holds exactly when
//! t^α/ψ(t) is constant, e.g. ψ(t) = t with α = 1.
//!
//! The split pairs the kernel tail h(t) = C(n,α)·t^n/ψ(t)^{n−1} with the
//! cut radius map δ(t) = t^{−p/n} used by the pointwise domination
//! argument.

use crate::error::{Error, Result};
use crate::orlicz::phi::PsiFunction;
use serde::Serialize;

/// C(n, α) = 2^{α(n−1)} / (2^n − 2^{α(n−1)}).
/// Requires n ≥ 2 and α ∈ [1, n/(n−1)) so the denominator is positive.
pub fn hedberg_constant(n: u32, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Parameter(format!(
            "dimension n must be an integer >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    let limit = nf / (nf - 1.0);
    if !alpha.is_finite() || alpha < 1.0 || alpha >= limit {
        return Err(Error::Parameter(format!(
            "alpha must lie in [1, n/(n-1)) = [1, {limit}), got {alpha}"
        )));
    }
    let num = 2f64.powf(alpha * (nf - 1.0));
    Ok(num / (2f64.powi(n as i32) - num))
}

/// One row of the dyadic sum check at a fixed t.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HedbergRow {
    pub t: f64,
    /// Σ_{k=1}^{K} (2^{−k}t)^n / ψ(2^{−k}t)^{n−1}.
    pub partial_sum: f64,
    /// C(n, α) · t^n / ψ(t)^{n−1}.
    pub bound: f64,
    /// partial_sum ≤ bound up to roundoff slack.
    pub ok: bool,
}

/// Evaluate the truncated dyadic sum against its bound on a grid of t.
///
/// `k_terms` is the truncation depth K ≥ 1.  The bound is guaranteed
/// when α is at least the α⋆ of ψ's φ (so that t^α/ψ(t) is
/// non-decreasing); the function evaluates faithfully either way and the
/// `ok` flags report what happened.
pub fn hedberg_sum_check(
    psi: &PsiFunction,
    n: u32,
    alpha: f64,
    t_grid: &[f64],
    k_terms: u32,
) -> Result<Vec<HedbergRow>> {
    let c = hedberg_constant(n, alpha)?;
    if k_terms < 1 {
        return Err(Error::Parameter("k_terms must be >= 1".into()));
    }
    if t_grid.is_empty() {
        return Err(Error::Parameter("t grid must be non-empty".into()));
    }
    let m = n as i32 - 1;
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::Domain(format!(
                "dyadic sum needs t > 0 finite, got {t}"
            )));
        }
        let mut sum = 0.0;
        let mut tk = t;
        for _ in 0..k_terms {
            tk *= 0.5;
            sum += tk.powi(n as i32) / psi.eval_pos(tk).powi(m);
        }
        let bound = c * t.powi(n as i32) / psi.eval_pos(t).powi(m);
        rows.push(HedbergRow {
            t,
            partial_sum: sum,
            bound,
            ok: sum <= bound * (1.0 + 1e-12),
        });
    }
    Ok(rows)
}

/// The two components of the kernel split: the dyadic tail bound
/// h(t) = C(n,α)·t^n/ψ(t)^{n−1} and the cut radius δ(t) = t^{−p/n}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HedbergSplit {
    psi: PsiFunction,
    n: u32,
    p: f64,
    alpha: f64,
    constant: f64,
}

impl HedbergSplit {
    pub fn new(psi: PsiFunction, n: u32, p: f64, alpha: f64) -> Result<Self> {
        let constant = hedberg_constant(n, alpha)?;
        if !p.is_finite() || p < 1.0 || p >= n as f64 {
            return Err(Error::Parameter(format!(
                "exponent p must lie in [1, n) = [1, {n}), got {p}"
            )));
        }
        Ok(HedbergSplit {
            psi,
            n,
            p,
            alpha,
            constant,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// C(n, α).
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// h(t) = C(n, α) · t^n / ψ(t)^{n−1} for t > 0.
    pub fn tail(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::Domain(format!("tail needs t > 0, got {t}")));
        }
        Ok(self.constant * t.powi(self.n as i32) / self.psi.eval_pos(t).powi(self.n as i32 - 1))
    }

    /// δ(t) = t^{−p/n} for t > 0.
    pub fn cut_radius(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::Domain(format!("cut_radius needs t > 0, got {t}")));
        }
        Ok(t.powf(-self.p / self.n as f64))
    }
}
