//! Named domain constructions shared by the experiment drivers.
//!
//! A [`DomainSpec`] is the text-level description of a domain — what a
//! CLI flag or a config line carries — and `build` turns it into a grid
//! at a requested resolution.  Cusps and mushroom walls derive their
//! boundary profile from the same φ used for the norm, so one flag
//! controls both sides of an experiment.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{make_box, make_cusp, make_mushroom_domain, GridDomain, MushroomSpec};
use crate::orlicz::{PhiSpec, PsiFunction};

/// A buildable domain description.
#[derive(Debug, Clone)]
pub enum DomainSpec {
    /// Axis-aligned box `(0, sides[0]) × … × (0, sides[n−1])`.
    Box { sides: Vec<f64> },
    /// Zero-boundary cusp `{0 < x_n < height, |x'| < ψ(x_n)}` in
    /// dimension `n`; ψ comes from the φ passed to `build`.
    Cusp { n: usize, height: f64 },
    /// Quarter box with dyadic mushroom decorations on two walls,
    /// levels `2 ≤ m ≤ m_max`; the cap/neck profile comes from the φ
    /// passed to `build`.
    Mushrooms { n: usize, m_max: u32 },
}

impl DomainSpec {
    /// Spatial dimension of the domain.
    pub fn n(&self) -> usize {
        match self {
            DomainSpec::Box { sides } => sides.len(),
            DomainSpec::Cusp { n, .. } => *n,
            DomainSpec::Mushrooms { n, .. } => *n,
        }
    }

    /// Stable text form, inverse of [`DomainSpec::parse`].
    pub fn label(&self) -> String {
        match self {
            DomainSpec::Box { sides } => {
                let parts: Vec<String> = sides.iter().map(|s| format!("{s}")).collect();
                format!("box:{}", parts.join(","))
            }
            DomainSpec::Cusp { height, .. } => format!("cusp:{height}"),
            DomainSpec::Mushrooms { m_max, .. } => format!("mushrooms:{m_max}"),
        }
    }

    /// Parse `box:S0,S1[,S2]`, `cusp:HEIGHT`, or `mushrooms:M_MAX`.
    /// `n` fixes the dimension for the cusp and mushroom forms (a box
    /// carries its own dimension in the side list).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("domain `{text}` is missing `:`")))?;
        let bad = |what: &str| Error::Parse(format!("domain `{text}`: {what}"));
        match kind {
            "box" => {
                let sides: Vec<f64> = args
                    .split(',')
                    .map(|a| a.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("sides must be numbers"))?;
                if !(sides.len() == 2 || sides.len() == 3) {
                    return Err(bad("a box needs 2 or 3 sides"));
                }
                if sides.len() != n {
                    return Err(bad(&format!(
                        "box has {} sides but the requested dimension is {n}",
                        sides.len()
                    )));
                }
                Ok(DomainSpec::Box { sides })
            }
            "cusp" => {
                let height: f64 =
                    args.trim().parse().map_err(|_| bad("height must be a number"))?;
                Ok(DomainSpec::Cusp { n, height })
            }
            "mushrooms" => {
                let m_max: u32 =
                    args.trim().parse().map_err(|_| bad("m_max must be an integer"))?;
                Ok(DomainSpec::Mushrooms { n, m_max })
            }
            other => Err(bad(&format!("unknown kind `{other}`"))),
        }
    }

    /// Build the grid at resolution `h`.  φ enters through the cusp
    /// profile and the mushroom decorations; boxes ignore it.
    pub fn build(&self, phi: &PhiSpec, h: f64) -> Result<Arc<GridDomain>> {
        let domain = match self {
            DomainSpec::Box { sides } => {
                let corner = vec![0.0; sides.len()];
                make_box(sides.len(), &corner, sides, h)?
            }
            DomainSpec::Cusp { n, height } => {
                make_cusp(*n, &PsiFunction::new(*phi), *height, h)?
            }
            DomainSpec::Mushrooms { n, m_max } => {
                let spec = MushroomSpec::dyadic(*n, *phi, *m_max)?;
                make_mushroom_domain(&spec, h)?
            }
        };
        Ok(Arc::new(domain))
    }
}
