//! Nested truncations of unbounded prototype domains.
//!
//! All members of an exhaustion share one lattice (the one that covers
//! the largest scale), so their masks are directly comparable and
//! fields can be restricted from the largest member to any smaller one
//! without interpolation.

use crate::error::{Error, Result};
use crate::orlicz::PsiFunction;

use super::cusp::{cusp_contains, cusp_lattice};
use super::grid::GridDomain;
use super::mushroom::{mushroom_lattice, MushroomSpec};

/// An unbounded domain family, truncated at a scale parameter.
#[derive(Debug, Clone)]
pub enum Prototype {
    /// `{0 < x_n, |x'| < ψ(x_n)}`; the scale truncates the height.
    Cusp { n: usize, psi: PsiFunction },
    /// Quarter space with mushroom decorations near the corner; the
    /// scale truncates every positive axis.  The `MushroomSpec`'s own
    /// bounding box is ignored here.
    MushroomQuarter { spec: MushroomSpec },
}

impl Prototype {
    pub fn n(&self) -> usize {
        match self {
            Prototype::Cusp { n, .. } => *n,
            Prototype::MushroomQuarter { spec } => spec.n(),
        }
    }
}

/// Build the members `D_i = prototype ∩ {scale ≤ scales[i]}` on a
/// common lattice.  Scales must be strictly increasing; mushroom
/// prototypes additionally need every scale past the wall decorations
/// (≥ 4) so no truncation ever cuts a cap or neck.
pub fn make_exhaustion(
    proto: &Prototype,
    scales: &[f64],
    h: f64,
) -> Result<Vec<GridDomain>> {
    if scales.is_empty() {
        return Err(Error::Parameter("at least one scale is required".into()));
    }
    if scales.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(Error::Parameter(format!("scales must be positive, got {scales:?}")));
    }
    if scales.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter(format!("scales must be strictly increasing, got {scales:?}")));
    }
    let top = *scales.last().unwrap();

    let mut members = Vec::with_capacity(scales.len());
    match proto {
        Prototype::Cusp { n, psi } => {
            let (origin, shape) = cusp_lattice(*n, psi, top, h)?;
            for &scale in scales {
                members.push(GridDomain::from_predicate(*n, origin, shape, h, |p| {
                    cusp_contains(*n, psi, scale, p)
                })?);
            }
        }
        Prototype::MushroomQuarter { spec } => {
            if scales[0] < 4.0 {
                return Err(Error::DomainSpec(format!(
                    "mushroom exhaustion scales must be >= 4 so truncation clears the wall \
                     decorations, got {}",
                    scales[0]
                )));
            }
            let (kept, _) = spec.resolvable(h);
            let (origin, shape) = mushroom_lattice(spec, &kept, h, top)?;
            for &scale in scales {
                members.push(GridDomain::from_predicate(spec.n(), origin, shape, h, |p| {
                    spec.contains(&kept, p, scale)
                })?);
            }
        }
    }

    for (i, d) in members.iter().enumerate() {
        if d.inside_count() == 0 {
            return Err(Error::Resolution {
                what: format!("exhaustion member at scale {} has no cells", scales[i]),
                max_h: 2.0 * scales[i],
            });
        }
        if !d.is_connected() {
            return Err(Error::Degenerate(format!(
                "exhaustion member at scale {} is disconnected at h = {h}",
                scales[i]
            )));
        }
    }
    for pair in members.windows(2) {
        if !pair[0].subset_of(&pair[1]) {
            return Err(Error::Degenerate(
                "exhaustion members are not nested; truncation predicate is not monotone".into(),
            ));
        }
    }
    Ok(members)
}
