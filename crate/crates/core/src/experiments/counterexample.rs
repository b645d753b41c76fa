//! Witness families that break a claimed norm bound.
//!
//! Both families keep the p-energy of the gradient pinned at 1 while a
//! lower bound for the target norm grows without bound — evaluated in
//! closed form on continuous geometry, not on grids, so the conclusion
//! is free of discretization error.
//!
//! * Mushroom necks: on the domain's m-th decoration, a field that is 0
//!   on the quarter box, climbs linearly across the neck of length r
//!   and width profile φ(r), and plateaus on the cap.  The plateau
//!   height that normalizes the gradient energy is
//!   `F(r) = (r^{p−1} / (2^{n−1} φ(r)^{n−1}))^{1/p}`, and the cap alone
//!   contributes `rⁿ F(r)^q` (up to a fixed dimensional constant) to
//!   the q-th power of the target norm.  As r halves, that contribution
//!   multiplies by `2^{q(s(n−1)+1−p)/p − n}` for φ(t) = t^s.
//! * Far-field bumps: on all of space, a plateau of height A(s) on the
//!   ball of radius s ramping to 0 at radius 2s.  With A chosen so the
//!   gradient energy is exactly 1, the plateau ball contributes
//!   `s^{n − q(n−p)/p}` (times a constant) — growing in s exactly when
//!   q exceeds np/(n−p).

use crate::error::{Error, Result};
use crate::geometry::MushroomSpec;
use crate::numerics::loglog_slope;
use crate::orlicz::PhiFamily;
use crate::report::{fmt, CsvDoc};

/// Growth factors within this of 1 count as "bounded" (the borderline
/// exponent gives exactly 1 for pure powers).
const GROWTH_TOL: f64 = 1e-9;

/// One decoration level of the mushroom witness.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MushroomRow {
    /// Dyadic level m (radius 2^{−m}).
    pub level: u32,
    pub radius: f64,
    /// Plateau height F(r) on the cap.
    pub cap_value: f64,
    /// ∫ |∇u|^p over the neck — exactly 1 by the choice of F.
    pub grad_norm_p: f64,
    /// rⁿ F(r)^q, the cap's contribution to ‖u‖_q^q up to a fixed
    /// dimensional constant.
    pub lower_bound: f64,
}

/// The mushroom witness family across all decoration levels.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MushroomCounterexample {
    pub n: usize,
    pub phi: String,
    pub p: f64,
    pub q: f64,
    pub rows: Vec<MushroomRow>,
    /// lower_bound[i+1] / lower_bound[i].
    pub growth_factors: Vec<f64>,
    /// For φ(t) = t^s: the q at which the growth factor is exactly 1,
    /// np/(s(n−1)+1−p).  None for logarithmic corrections.
    pub threshold_q: Option<f64>,
    /// True when every growth factor exceeds 1: bounded gradient
    /// energy with unbounded target norm.
    pub diverges: bool,
    /// Structural fact about φ: t ↦ φ(t)/t is unbounded as t → 0 —
    /// the regime where the decorations outrun a Lipschitz boundary.
    pub slope_ratio_diverges: bool,
}

/// Evaluate the mushroom witness on a decorated domain's levels.
/// The `MushroomSpec` must carry at least two levels so growth is
/// observable.
pub fn mushroom_counterexample(
    spec: &MushroomSpec,
    p: f64,
    q: f64,
) -> Result<MushroomCounterexample> {
    let n = spec.n();
    let nf = n as f64;
    if !p.is_finite() || p < 1.0 || p >= nf {
        return Err(Error::Parameter(format!("p must lie in [1, {n}), got {p}")));
    }
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::Parameter(format!("q must be positive, got {q}")));
    }
    if spec.radii().len() < 2 {
        return Err(Error::Parameter(
            "need at least two decoration levels to measure growth".into(),
        ));
    }
    let phi = spec.phi();

    let mut rows = Vec::with_capacity(spec.radii().len());
    for (i, &r) in spec.radii().iter().enumerate() {
        let phi_r = phi.eval(r)?;
        let cap_value =
            (r.powf(p - 1.0) / (2.0f64.powi(n as i32 - 1) * phi_r.powf(nf - 1.0))).powf(1.0 / p);
        // Neck: length r, cross-section (2φ(r))^{n−1}, slope F/r.
        let neck_volume = r * (2.0 * phi_r).powf(nf - 1.0);
        let grad_norm_p = (cap_value / r).powf(p) * neck_volume;
        let lower_bound = r.powi(n as i32) * cap_value.powf(q);
        rows.push(MushroomRow {
            level: spec.level_label(i),
            radius: r,
            cap_value,
            grad_norm_p,
            lower_bound,
        });
    }

    let growth_factors: Vec<f64> =
        rows.windows(2).map(|w| w[1].lower_bound / w[0].lower_bound).collect();
    let diverges = growth_factors.iter().all(|g| *g > 1.0 + GROWTH_TOL);
    let threshold_q = match phi.family() {
        PhiFamily::Power { s } => Some(nf * p / (s * (nf - 1.0) + 1.0 - p)),
        PhiFamily::PowerLog { .. } => None,
    };

    Ok(MushroomCounterexample {
        n,
        phi: phi.label(),
        p,
        q,
        rows,
        growth_factors,
        threshold_q,
        diverges,
        slope_ratio_diverges: phi.slope_ratio_diverges(),
    })
}

impl MushroomCounterexample {
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::new(["level", "radius", "cap_value", "grad_norm_p", "lower_bound"]);
        doc.push_meta("n", self.n);
        doc.push_meta("phi", &self.phi);
        doc.push_meta("p", self.p);
        doc.push_meta("q", self.q);
        if let Some(t) = self.threshold_q {
            doc.push_meta("threshold_q", fmt(t));
        }
        doc.push_meta("diverges", self.diverges);
        doc.push_meta("slope_ratio_diverges", self.slope_ratio_diverges);
        let factors: Vec<String> = self.growth_factors.iter().map(|g| fmt(*g)).collect();
        doc.push_meta("growth_factors", factors.join(" "));
        for r in &self.rows {
            doc.push_row([
                r.level.to_string(),
                fmt(r.radius),
                fmt(r.cap_value),
                fmt(r.grad_norm_p),
                fmt(r.lower_bound),
            ]);
        }
        doc
    }
}

/// One scale of the far-field witness.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FarFieldRow {
    pub scale: f64,
    /// Plateau height A(s), chosen so the gradient energy is 1.
    pub plateau_value: f64,
    /// ∫ |∇u|^p over the transition annulus, evaluated by midpoint
    /// quadrature in the radial variable (analytically it is exactly 1).
    pub grad_norm_p: f64,
    /// ω_n sⁿ A(s)^q — the plateau ball's contribution to ‖u‖_q^q.
    pub lower_bound: f64,
}

/// The far-field witness family across scales.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FarFieldCounterexample {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub rows: Vec<FarFieldRow>,
    /// Closed-form exponent of the lower bound: n − q(n−p)/p.
    pub exponent: f64,
    /// Log-log slope fitted through the rows — must match `exponent`.
    pub fitted_exponent: f64,
    /// np/(n−p): the q at which the exponent crosses zero.
    pub threshold_q: f64,
    /// True when the exponent is positive, i.e. the lower bound grows.
    pub diverges: bool,
}

const QUADRATURE_STEPS: usize = 512;

/// Evaluate the far-field witness at the given scales (≥ 2, strictly
/// increasing, positive).
pub fn farfield_bump_counterexample(
    n: usize,
    p: f64,
    q: f64,
    scales: &[f64],
) -> Result<FarFieldCounterexample> {
    if !(n == 2 || n == 3) {
        return Err(Error::Parameter(format!("dimension must be 2 or 3, got {n}")));
    }
    let nf = n as f64;
    if !p.is_finite() || p < 1.0 || p >= nf {
        return Err(Error::Parameter(format!("p must lie in [1, {n}), got {p}")));
    }
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::Parameter(format!("q must be positive, got {q}")));
    }
    if scales.len() < 2 {
        return Err(Error::Parameter("need at least two scales to fit a slope".into()));
    }
    if scales.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(Error::Parameter(format!("scales must be positive, got {scales:?}")));
    }
    if scales.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter(format!(
            "scales must be strictly increasing, got {scales:?}"
        )));
    }

    // Unit-ball volume ω_n and sphere-area coefficient σ_n (|∂B_r| = σ_n r^{n−1}).
    let (omega, sigma) = match n {
        2 => (std::f64::consts::PI, 2.0 * std::f64::consts::PI),
        _ => (4.0 * std::f64::consts::PI / 3.0, 4.0 * std::f64::consts::PI),
    };
    let annulus_factor = omega * (2.0f64.powi(n as i32) - 1.0);

    let mut rows = Vec::with_capacity(scales.len());
    for &s in scales {
        // A = [ω_n(2ⁿ−1)]^{−1/p} s^{(p−n)/p} makes (A/s)^p·|annulus| = 1.
        let plateau_value = annulus_factor.powf(-1.0 / p) * s.powf((p - nf) / p);
        let slope_p = (plateau_value / s).powf(p);
        let dr = s / QUADRATURE_STEPS as f64;
        let mut grad_norm_p = 0.0;
        for k in 0..QUADRATURE_STEPS {
            let r = s + (k as f64 + 0.5) * dr;
            grad_norm_p += slope_p * sigma * r.powi(n as i32 - 1) * dr;
        }
        let lower_bound = omega * s.powi(n as i32) * plateau_value.powf(q);
        rows.push(FarFieldRow { scale: s, plateau_value, grad_norm_p, lower_bound });
    }

    let exponent = nf - q * (nf - p) / p;
    let xs: Vec<f64> = rows.iter().map(|r| r.scale).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.lower_bound).collect();
    let fitted_exponent = loglog_slope(&xs, &ys);

    Ok(FarFieldCounterexample {
        n,
        p,
        q,
        rows,
        exponent,
        fitted_exponent,
        threshold_q: nf * p / (nf - p),
        diverges: exponent > 1e-12,
    })
}

impl FarFieldCounterexample {
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::new(["scale", "plateau_value", "grad_norm_p", "lower_bound"]);
        doc.push_meta("n", self.n);
        doc.push_meta("p", self.p);
        doc.push_meta("q", self.q);
        doc.push_meta("exponent", fmt(self.exponent));
        doc.push_meta("fitted_exponent", fmt(self.fitted_exponent));
        doc.push_meta("threshold_q", fmt(self.threshold_q));
        doc.push_meta("diverges", self.diverges);
        for r in &self.rows {
            doc.push_row([
                fmt(r.scale),
                fmt(r.plateau_value),
                fmt(r.grad_norm_p),
                fmt(r.lower_bound),
            ]);
        }
        doc
    }
}
