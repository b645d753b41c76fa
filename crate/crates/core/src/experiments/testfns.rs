//! Catalogs of test functions for the ratio experiments.
//!
//! The Poincaré sweep evaluates its quotient over a whole family at
//! once; the exhaustion experiment uses a single named field.  Every
//! function is defined in continuous coordinates and sampled at cell
//! centers, so refining the grid changes the samples but not the
//! function.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::geometry::GridDomain;

/// A named catalog of test functions for [`poincare_sweep`].
///
/// [`poincare_sweep`]: super::poincare_sweep
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFamily {
    /// Low-degree monomials: coordinates, a mixed product, a square,
    /// and the centered squared radius.
    Polynomials,
    /// Smooth radial profiles: a centered Gaussian, an offset
    /// Gaussian, and a compactly supported bump.
    RadialBumps,
    /// Powers `x_n^γ`, γ ∈ {0.5, 1, 2, 3}, of the axis coordinate —
    /// profiles adapted to cusps that degenerate toward the tip.
    CuspProfiles,
}

impl TestFamily {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "polynomials" => Ok(TestFamily::Polynomials),
            "radial-bumps" => Ok(TestFamily::RadialBumps),
            "cusp-profiles" => Ok(TestFamily::CuspProfiles),
            other => Err(Error::Parse(format!(
                "unknown test family `{other}` (expected polynomials, radial-bumps, or cusp-profiles)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TestFamily::Polynomials => "polynomials",
            TestFamily::RadialBumps => "radial-bumps",
            TestFamily::CuspProfiles => "cusp-profiles",
        }
    }

    /// Sample the catalog on a domain.  Geometry-derived lengths (the
    /// bounding-box center, the diameter) parameterize the radial
    /// family so it scales with the domain.
    pub fn functions(&self, domain: &Arc<GridDomain>) -> Result<Vec<(String, ScalarField)>> {
        let n = domain.n();
        let mut out: Vec<(String, ScalarField)> = Vec::new();
        match self {
            TestFamily::Polynomials => {
                let center = bounding_center(domain);
                out.push(("x0".into(), ScalarField::from_fn(domain.clone(), |x| x[0])?));
                out.push(("x1".into(), ScalarField::from_fn(domain.clone(), |x| x[1])?));
                if n == 3 {
                    out.push(("x2".into(), ScalarField::from_fn(domain.clone(), |x| x[2])?));
                }
                out.push((
                    "x0*x1".into(),
                    ScalarField::from_fn(domain.clone(), |x| x[0] * x[1])?,
                ));
                out.push(("x0^2".into(), ScalarField::from_fn(domain.clone(), |x| x[0] * x[0])?));
                out.push((
                    "radius2".into(),
                    ScalarField::from_fn(domain.clone(), move |x| {
                        let mut r2 = 0.0;
                        for a in 0..n {
                            let d = x[a] - center[a];
                            r2 += d * d;
                        }
                        r2
                    })?,
                ));
            }
            TestFamily::RadialBumps => {
                let center = bounding_center(domain);
                let diam = domain.diameter();
                let gauss = move |x: &[f64; 3], c: [f64; 3], w: f64| {
                    let mut r2 = 0.0;
                    for a in 0..n {
                        let d = x[a] - c[a];
                        r2 += d * d;
                    }
                    (-r2 / (2.0 * w * w)).exp()
                };
                let w1 = diam / 6.0;
                out.push((
                    "gauss-center".into(),
                    ScalarField::from_fn(domain.clone(), move |x| gauss(x, center, w1))?,
                ));
                let mut off = center;
                for c in off.iter_mut().take(n) {
                    *c += diam / 8.0;
                }
                let w2 = diam / 10.0;
                out.push((
                    "gauss-offset".into(),
                    ScalarField::from_fn(domain.clone(), move |x| gauss(x, off, w2))?,
                ));
                let w3 = diam / 3.0;
                out.push((
                    "bump-compact".into(),
                    ScalarField::from_fn(domain.clone(), move |x| {
                        let mut r2 = 0.0;
                        for a in 0..n {
                            let d = x[a] - center[a];
                            r2 += d * d;
                        }
                        let t = 1.0 - r2 / (w3 * w3);
                        if t > 0.0 { t * t } else { 0.0 }
                    })?,
                ));
            }
            TestFamily::CuspProfiles => {
                let axis = n - 1;
                for gamma in [0.5, 1.0, 2.0, 3.0] {
                    out.push((
                        format!("axis^{gamma}"),
                        ScalarField::from_fn(domain.clone(), move |x| {
                            x[axis].max(0.0).powf(gamma)
                        })?,
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// Center of the bounding box of the inside cells.
fn bounding_center(domain: &GridDomain) -> [f64; 3] {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for &lin in domain.inside_cells() {
        let c = domain.center_of_linear(lin);
        for a in 0..domain.n() {
            lo[a] = lo[a].min(c[a]);
            hi[a] = hi[a].max(c[a]);
        }
    }
    let mut mid = [0.0; 3];
    for a in 0..domain.n() {
        mid[a] = 0.5 * (lo[a] + hi[a]);
    }
    mid
}

/// A single named field for the exhaustion experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExhaustionField {
    /// Compact bump `(1 − (|x|/width)²)₊²` anchored at the coordinate
    /// origin, where the prototype domains are rooted.  Its mass is
    /// fixed, so averages over growing domains decay.
    BumpAtOrigin { width: f64 },
    /// `x_n^γ` on the axis coordinate; grows with the domain.
    AxisPower { gamma: f64 },
}

impl ExhaustionField {
    /// Parse `bump:WIDTH` or `axis-pow:GAMMA`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("field `{text}` is missing `:`")))?;
        let value: f64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("field `{text}`: `{arg}` is not a number")))?;
        match kind {
            "bump" => {
                if !(value.is_finite() && value > 0.0) {
                    return Err(Error::Parameter(format!("bump width must be positive, got {value}")));
                }
                Ok(ExhaustionField::BumpAtOrigin { width: value })
            }
            "axis-pow" => {
                if !(value.is_finite() && value > 0.0) {
                    return Err(Error::Parameter(format!("axis power must be positive, got {value}")));
                }
                Ok(ExhaustionField::AxisPower { gamma: value })
            }
            other => Err(Error::Parse(format!("unknown field kind `{other}`"))),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ExhaustionField::BumpAtOrigin { width } => format!("bump:{width}"),
            ExhaustionField::AxisPower { gamma } => format!("axis-pow:{gamma}"),
        }
    }

    pub fn build(&self, domain: &Arc<GridDomain>) -> Result<ScalarField> {
        let n = domain.n();
        match self {
            ExhaustionField::BumpAtOrigin { width } => {
                let w = *width;
                ScalarField::from_fn(domain.clone(), move |x| {
                    let mut r2 = 0.0;
                    for a in 0..n {
                        r2 += x[a] * x[a];
                    }
                    let t = 1.0 - r2 / (w * w);
                    if t > 0.0 { t * t } else { 0.0 }
                })
            }
            ExhaustionField::AxisPower { gamma } => {
                let g = *gamma;
                let axis = n - 1;
                ScalarField::from_fn(domain.clone(), move |x| x[axis].max(0.0).powf(g))
            }
        }
    }
}
