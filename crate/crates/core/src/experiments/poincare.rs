//! Poincaré-type ratio: shift-reduced Luxemburg norm over gradient norm.
//!
//! For a field u on a grid domain, the quotient
//!
//! ```text
//!   ratio(u) = ‖u − avg(u)‖_H / ‖ |∇u| ‖_p
//! ```
//!
//! is the quantity whose uniform boundedness over a class of fields is
//! the inequality under test.  The sweep evaluates it for a catalog of
//! test functions across a ladder of resolutions, so grid artifacts are
//! visible as drift between rows with equal `function`.

use crate::error::{Error, Result};
use crate::fields::{gradient_magnitude, integral_average, lp_norm, luxemburg_norm, Region, ScalarField};
use crate::orlicz::{OrliczH, PhiSpec, PsiFunction};
use crate::report::{fmt, CsvDoc};

use super::domains::DomainSpec;
use super::testfns::TestFamily;

/// Gradient norms below this are treated as "constant field" and make
/// the quotient undefined rather than huge.
const DEGENERATE_GRADIENT: f64 = 1e-14;

/// One evaluated quotient with its parts.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PoincareRatio {
    /// Average subtracted from the field before taking the norm.
    pub average: f64,
    /// ‖u − avg‖_H.
    pub numerator: f64,
    /// ‖ |∇u| ‖_p.
    pub denominator: f64,
    /// numerator / denominator.
    pub ratio: f64,
    /// (cell, axis) pairs with no inside neighbor along the axis —
    /// nonzero counts mean the gradient is underestimated there.
    pub isolated_axis_cells: usize,
}

/// Evaluate the quotient for one field.  The norm H is rebuilt from φ
/// and the field's own dimension, so callers cannot pair a 3-D norm
/// with a 2-D field.
pub fn poincare_ratio(u: &ScalarField, phi: &PhiSpec, p: f64) -> Result<PoincareRatio> {
    let n = u.domain().n() as u32;
    let h_fn = OrliczH::new(PsiFunction::new(*phi), n, p)?;
    let average = integral_average(u, Region::Whole)?;
    let numerator = luxemburg_norm(&u.shifted(average)?, &h_fn)?;
    let grad = gradient_magnitude(u)?;
    let denominator = lp_norm(&grad.magnitude, p)?;
    if denominator <= DEGENERATE_GRADIENT {
        return Err(Error::Degenerate(format!(
            "gradient norm {denominator} is below {DEGENERATE_GRADIENT}; the quotient is undefined for constant fields"
        )));
    }
    Ok(PoincareRatio {
        average,
        numerator,
        denominator,
        ratio: numerator / denominator,
        isolated_axis_cells: grad.isolated_axis_cells,
    })
}

/// One row of a sweep: a (resolution, test function) pair.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PoincareRow {
    pub h: f64,
    pub function: String,
    pub ratio: f64,
    pub numerator: f64,
    pub denominator: f64,
}

/// A full sweep over a resolution ladder and a test-function catalog.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PoincareRun {
    pub domain: String,
    pub phi: String,
    pub p: f64,
    pub family: String,
    pub rows: Vec<PoincareRow>,
    /// (h, max ratio at that h), in ladder order.
    pub per_resolution_max: Vec<(f64, f64)>,
    /// Max ratio at the finest resolution — the sweep's headline number.
    pub finest_max: f64,
    /// Structural conditions on φ that the boundedness claim relies on;
    /// present means satisfied.
    pub hypothesis_flags: Vec<String>,
}

/// Evaluate the quotient for every function in the catalog at every
/// resolution.  `resolutions` must be positive, finite, and strictly
/// decreasing (coarse to fine).
pub fn poincare_sweep(
    domain: &DomainSpec,
    phi: &PhiSpec,
    p: f64,
    family: TestFamily,
    resolutions: &[f64],
) -> Result<PoincareRun> {
    if resolutions.is_empty() {
        return Err(Error::Parameter("at least one resolution is required".into()));
    }
    if resolutions.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
        return Err(Error::Parameter(format!(
            "resolutions must be positive, got {resolutions:?}"
        )));
    }
    if resolutions.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter(format!(
            "resolutions must be strictly decreasing, got {resolutions:?}"
        )));
    }

    let mut rows = Vec::new();
    let mut per_resolution_max = Vec::new();
    for &h in resolutions {
        let grid = domain.build(phi, h)?;
        let mut level_max = f64::NEG_INFINITY;
        for (name, u) in family.functions(&grid)? {
            let r = poincare_ratio(&u, phi, p)?;
            level_max = level_max.max(r.ratio);
            rows.push(PoincareRow {
                h,
                function: name,
                ratio: r.ratio,
                numerator: r.numerator,
                denominator: r.denominator,
            });
        }
        per_resolution_max.push((h, level_max));
    }
    let finest_max = per_resolution_max.last().map(|&(_, m)| m).unwrap_or(f64::NAN);

    let mut hypothesis_flags = Vec::new();
    if phi.c_phi() > 1.0 {
        hypothesis_flags.push(format!("near-linearity constant is {} > 1", phi.c_phi()));
    }
    let n = domain.n() as f64;
    if phi.alpha_star() >= n / (n - 1.0) {
        hypothesis_flags.push(format!(
            "growth order {} is at or above the kernel-summability bound {}",
            phi.alpha_star(),
            n / (n - 1.0)
        ));
    }

    Ok(PoincareRun {
        domain: domain.label(),
        phi: phi.label(),
        p,
        family: family.label().to_string(),
        rows,
        per_resolution_max,
        finest_max,
        hypothesis_flags,
    })
}

impl PoincareRun {
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::new(["h", "function", "ratio", "numerator", "denominator"]);
        doc.push_meta("domain", &self.domain);
        doc.push_meta("phi", &self.phi);
        doc.push_meta("p", self.p);
        doc.push_meta("family", &self.family);
        for (h, m) in &self.per_resolution_max {
            doc.push_meta(&format!("max_ratio[h={h}]"), fmt(*m));
        }
        doc.push_meta("finest_max", fmt(self.finest_max));
        for flag in &self.hypothesis_flags {
            doc.push_meta("hypothesis", flag);
        }
        for row in &self.rows {
            doc.push_row([
                fmt(row.h),
                row.function.replace(',', ";"),
                fmt(row.ratio),
                fmt(row.numerator),
                fmt(row.denominator),
            ]);
        }
        doc
    }
}
