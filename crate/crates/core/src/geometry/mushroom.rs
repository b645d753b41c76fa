//! Quarter-space domains decorated with mushroom-shaped attachments.
//!
//! The bulk is the box `(0, T)^n`.  Along the walls `{x_1 = 0}` and
//! `{x_2 = 0}` (in mirrored pairs) sit square caps of half-width `r`
//! connected to the box through thin necks of half-width `φ(r) ≤ r`:
//!
//! ```text
//!      cap           neck       box
//!  depth -3r..-r   depth -r..0  depth > 0
//!  width 2r        width 2φ(r)
//! ```
//!
//! Cap footprints live where the wall is 1 to 4 away from the origin,
//! so the decorations are uniformly separated from the corner and from
//! each other.  In 3-D the footprint is centered on the third
//! coordinate at 2.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orlicz::PhiSpec;

use super::cigar::CoreCurve;
use super::grid::GridDomain;

const WALL_BAND_LO: f64 = 1.0;
const WALL_BAND_HI: f64 = 4.0;
const SLACK: f64 = 1e-12;

/// Geometric description of a mushroom-decorated quarter domain.
/// Validated on construction; building a grid needs only a cell size.
#[derive(Debug, Clone, Serialize)]
pub struct MushroomSpec {
    n: usize,
    phi: PhiSpec,
    radii: Vec<f64>,
    /// Lower wall-footprint coordinate of each cap (the cap occupies
    /// `[attach, attach + 2r]` along the wall).
    attach: Vec<f64>,
    truncation: f64,
    /// Set when built by [`dyadic`](Self::dyadic): the power-of-two
    /// index of the first radius, for labeling rows in reports.
    dyadic_start: Option<u32>,
}

impl MushroomSpec {
    /// Validate and pack a spec.  When `attach` is omitted the caps are
    /// packed left to right starting at 1 with gaps of `r/2`.
    pub fn new(
        n: usize,
        phi: PhiSpec,
        radii: Vec<f64>,
        attach: Option<Vec<f64>>,
        truncation: Option<f64>,
    ) -> Result<Self> {
        if n != 2 && n != 3 {
            return Err(Error::Parameter(format!("dimension must be 2 or 3, got {n}")));
        }
        if radii.is_empty() {
            return Err(Error::DomainSpec("at least one mushroom is required".into()));
        }
        for &r in &radii {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::DomainSpec(format!("cap radius must be positive, got {r}")));
            }
        }
        if radii.windows(2).any(|w| w[1] > w[0] + SLACK) {
            return Err(Error::DomainSpec("cap radii must be non-increasing".into()));
        }
        for &r in &radii {
            let w = phi.eval(r)?;
            if w > r + SLACK {
                return Err(Error::DomainSpec(format!(
                    "neck half-width {w} exceeds cap radius {r}; necks must be thinner than caps"
                )));
            }
        }
        let attach = match attach {
            Some(a) => {
                if a.len() != radii.len() {
                    return Err(Error::DomainSpec(format!(
                        "{} attachment positions for {} radii",
                        a.len(),
                        radii.len()
                    )));
                }
                if a.iter().any(|v| !v.is_finite()) {
                    return Err(Error::DomainSpec("non-finite attachment position".into()));
                }
                a
            }
            None => {
                let mut a = Vec::with_capacity(radii.len());
                let mut cursor = WALL_BAND_LO;
                for &r in &radii {
                    a.push(cursor);
                    cursor += 2.0 * r + r / 2.0;
                }
                a
            }
        };
        // Footprints must be disjoint and stay in the wall band.
        let mut order: Vec<usize> = (0..radii.len()).collect();
        order.sort_by(|&i, &j| attach[i].total_cmp(&attach[j]));
        for pair in order.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            if attach[i] + 2.0 * radii[i] > attach[j] + SLACK {
                return Err(Error::DomainSpec(format!(
                    "cap footprints [{}, {}] and [{}, {}] overlap",
                    attach[i],
                    attach[i] + 2.0 * radii[i],
                    attach[j],
                    attach[j] + 2.0 * radii[j]
                )));
            }
        }
        for (&a, &r) in attach.iter().zip(&radii) {
            let (near, far) = match n {
                2 => (a, a + 2.0 * r),
                _ => ((a).hypot(2.0 - r), (a + 2.0 * r).hypot(2.0 + r)),
            };
            if near < WALL_BAND_LO - SLACK || far > WALL_BAND_HI + SLACK {
                return Err(Error::DomainSpec(format!(
                    "cap footprint at {a} (radius {r}) leaves the wall band [{WALL_BAND_LO}, {WALL_BAND_HI}] \
                     (extent {near} to {far})"
                )));
            }
        }
        let truncation = truncation.unwrap_or(5.0);
        if !(truncation.is_finite() && truncation >= WALL_BAND_HI) {
            return Err(Error::DomainSpec(format!(
                "box truncation must be at least {WALL_BAND_HI}, got {truncation}"
            )));
        }
        Ok(Self { n, phi, radii, attach, truncation, dyadic_start: None })
    }

    /// Caps with radii `2^-m` for `m = 2 ..= m_max`, packed along the
    /// wall band.  The packing total stays below the band's upper end
    /// for every `m_max`.
    pub fn dyadic(n: usize, phi: PhiSpec, m_max: u32) -> Result<Self> {
        if m_max < 2 {
            return Err(Error::Parameter(format!(
                "dyadic family needs m_max >= 2, got {m_max}"
            )));
        }
        let radii: Vec<f64> = (2..=m_max).map(|m| 2f64.powi(-(m as i32))).collect();
        let mut spec = Self::new(n, phi, radii, None, None)?;
        spec.dyadic_start = Some(2);
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> &PhiSpec {
        &self.phi
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn attach(&self) -> &[f64] {
        &self.attach
    }

    pub fn truncation(&self) -> f64 {
        self.truncation
    }

    /// Power-of-two index of the first radius when dyadically built.
    pub fn dyadic_start(&self) -> Option<u32> {
        self.dyadic_start
    }

    /// Report label for mushroom `i`: its dyadic index when available,
    /// else the 1-based position.
    pub fn level_label(&self, i: usize) -> u32 {
        match self.dyadic_start {
            Some(s) => s + i as u32,
            None => i as u32 + 1,
        }
    }

    pub fn neck_half_width(&self, i: usize) -> f64 {
        self.phi.eval_pos(self.radii[i])
    }

    /// Split mushroom indices into (resolved, dropped) at cell size `h`:
    /// a neck thinner than two cells cannot carry a connected strip of
    /// cell centers reliably, so such mushrooms are omitted from grids.
    pub fn resolvable(&self, h: f64) -> (Vec<usize>, Vec<usize>) {
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for i in 0..self.radii.len() {
            if self.neck_half_width(i) >= 2.0 * h {
                kept.push(i);
            } else {
                dropped.push(i);
            }
        }
        (kept, dropped)
    }

    /// Probe curve through mushroom `i`: from the center of its cap,
    /// through the neck, to depth 1 inside the box.
    pub fn neck_probe_curve(&self, i: usize) -> Result<CoreCurve> {
        if i >= self.radii.len() {
            return Err(Error::Parameter(format!(
                "mushroom index {i} out of range (have {})",
                self.radii.len()
            )));
        }
        let r = self.radii[i];
        let c = self.attach[i] + r;
        let third = if self.n == 3 { 2.0 } else { 0.0 };
        CoreCurve::segment(self.n, [-2.0 * r, c, third], [1.0, c, third])
    }

    /// Membership at a point, with the box truncated at `upper` on all
    /// positive axes and only the mushrooms in `kept` present.
    pub(crate) fn contains(&self, kept: &[usize], p: &[f64; 3], upper: f64) -> bool {
        if (0..self.n).all(|a| p[a] > 0.0 && p[a] < upper) {
            return true;
        }
        kept.iter().any(|&i| self.in_mushroom(i, p))
    }

    fn in_mushroom(&self, i: usize, p: &[f64; 3]) -> bool {
        let r = self.radii[i];
        let c = self.attach[i] + r;
        let w = self.neck_half_width(i);
        // (depth axis, lateral axis): the wall {x_1 = 0} and its mirror.
        for (da, la) in [(0usize, 1usize), (1, 0)] {
            let d = p[da];
            let l = p[la];
            if d >= 0.0 {
                continue;
            }
            let third_ok =
                |half: f64| self.n == 2 || (p[2] - 2.0).abs() < half;
            let hit = if d >= -r {
                (l - c).abs() < w && third_ok(w)
            } else if d > -3.0 * r {
                (l - c).abs() < r && third_ok(r)
            } else {
                false
            };
            if hit {
                return true;
            }
        }
        false
    }
}

/// Lattice covering the truncated box plus the mushrooms in `kept`.
pub(crate) fn mushroom_lattice(
    spec: &MushroomSpec,
    kept: &[usize],
    h: f64,
    upper: f64,
) -> Result<([f64; 3], [usize; 3])> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Parameter(format!("cell size must be positive, got {h}")));
    }
    let depth = kept.iter().map(|&i| 3.0 * spec.radii[i]).fold(0.0f64, f64::max);
    let lo = -(depth / h).ceil() * h;
    let mut origin = [0.0f64; 3];
    let mut shape = [1usize; 3];
    for a in 0..2 {
        origin[a] = lo;
        shape[a] = ((upper - lo) / h).round() as usize;
    }
    if spec.n == 3 {
        origin[2] = 0.0;
        shape[2] = (upper / h).round() as usize;
    }
    if shape.iter().take(spec.n).any(|&s| s == 0) {
        return Err(Error::Resolution {
            what: "mushroom domain box has no cells".into(),
            max_h: upper / 2.0,
        });
    }
    Ok((origin, shape))
}

/// Build the grid domain for a mushroom spec.  Mushrooms whose necks
/// are thinner than two cells are dropped (query
/// [`MushroomSpec::resolvable`] to report them); the box itself is
/// always present.
pub fn make_mushroom_domain(spec: &MushroomSpec, h: f64) -> Result<GridDomain> {
    let (kept, _) = spec.resolvable(h);
    let upper = spec.truncation();
    let (origin, shape) = mushroom_lattice(spec, &kept, h, upper)?;
    let domain = GridDomain::from_predicate(spec.n, origin, shape, h, |p| {
        spec.contains(&kept, p, upper)
    })?;
    if !domain.is_connected() {
        return Err(Error::Degenerate(format!(
            "mushroom domain split into disconnected cells at h = {h}"
        )));
    }
    Ok(domain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter_with_one_cap() -> MushroomSpec {
        // Single cap of radius 1/4 with a quadratic neck profile:
        // neck half-width phi(1/4) = 1/16.
        MushroomSpec::new(
            2,
            PhiSpec::power(2.0).unwrap(),
            vec![0.25],
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn single_cap_measure_is_exact_on_aligned_grid() {
        // Box 25, plus per wall: cap 0.5 x 0.5 = 0.25 and neck
        // 0.25 x 0.125 = 0.03125.  h = 1/32 divides every extent.
        let d = make_mushroom_domain(&quarter_with_one_cap(), 1.0 / 32.0).unwrap();
        let exact = 25.0 + 2.0 * (0.25 + 0.03125);
        assert!(
            (d.measure() - exact).abs() < 1e-9,
            "measure {} vs exact {exact}",
            d.measure()
        );
        assert!(d.is_connected());
        // Spot checks: cap interior, neck interior, mirrored cap.
        assert!(d.contains_point(&[-0.5, 1.25, 0.0]));
        assert!(d.contains_point(&[-0.1, 1.25, 0.0]));
        assert!(d.contains_point(&[1.25, -0.5, 0.0]));
        // Beside the neck, between cap and box: outside.
        assert!(!d.contains_point(&[-0.1, 1.4, 0.0]));
    }

    #[test]
    fn unresolved_necks_drop_their_mushrooms() {
        // phi(1/4) = 1/16 < 2h at h = 1/16, so the cap is dropped and
        // only the box remains.
        let spec = quarter_with_one_cap();
        let (kept, dropped) = spec.resolvable(1.0 / 16.0);
        assert!(kept.is_empty() && dropped == vec![0]);
        let d = make_mushroom_domain(&spec, 1.0 / 16.0).unwrap();
        assert!((d.measure() - 25.0).abs() < 1e-9, "box-only measure {}", d.measure());
    }

    #[test]
    fn dyadic_packing_is_valid_for_many_levels() {
        let spec = MushroomSpec::dyadic(2, PhiSpec::power(2.0).unwrap(), 10).unwrap();
        assert_eq!(spec.radii().len(), 9);
        assert_eq!(spec.level_label(0), 2);
        assert!((spec.radii()[0] - 0.25).abs() < 1e-15);
        // All footprints inside the wall band.
        let last = spec.radii().len() - 1;
        assert!(spec.attach()[last] + 2.0 * spec.radii()[last] <= 4.0);
        // 3-D variant also packs validly.
        MushroomSpec::dyadic(3, PhiSpec::power(1.5).unwrap(), 6).unwrap();
    }

    #[test]
    fn three_dimensional_domain_has_caps_on_both_walls() {
        let spec = MushroomSpec::new(
            3,
            PhiSpec::power(2.0).unwrap(),
            vec![0.25],
            None,
            None,
        )
        .unwrap();
        let d = make_mushroom_domain(&spec, 1.0 / 16.0).unwrap();
        // phi(1/4) = 1/16 < 2h: dropped, box only.
        assert!((d.measure() - 125.0).abs() < 1e-6);
        let d = make_mushroom_domain(&spec, 1.0 / 32.0).unwrap();
        let cap = 0.5f64.powi(3);
        let neck = 0.25 * 0.125 * 0.125;
        let exact = 125.0 + 2.0 * (cap + neck);
        assert!(
            (d.measure() - exact).abs() < 1e-9,
            "measure {} vs exact {exact}",
            d.measure()
        );
        assert!(d.contains_point(&[-0.5, 1.25, 2.0]));
        assert!(d.contains_point(&[1.25, -0.5, 2.0]));
        assert!(!d.contains_point(&[-0.5, 1.25, 2.3]));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let phi = PhiSpec::power(2.0).unwrap();
        // Radius 2: neck half-width phi(2) = 4 exceeds the cap radius.
        assert!(MushroomSpec::new(2, phi, vec![2.0], None, None).is_err());
        // Overlapping footprints.
        assert!(MushroomSpec::new(2, phi, vec![0.25, 0.25], Some(vec![1.0, 1.2]), None).is_err());
        // Attachment outside the wall band.
        assert!(MushroomSpec::new(2, phi, vec![0.25], Some(vec![0.2]), None).is_err());
        assert!(MushroomSpec::new(2, phi, vec![0.25], Some(vec![3.8]), None).is_err());
        // Increasing radii.
        assert!(MushroomSpec::new(2, phi, vec![0.125, 0.25], None, None).is_err());
        // Truncation below the wall band.
        assert!(MushroomSpec::new(2, phi, vec![0.25], None, Some(3.0)).is_err());
        // 3-D band check is stricter: a wide cap near the far end fails.
        assert!(MushroomSpec::new(3, phi, vec![0.5], Some(vec![2.9]), None).is_err());
    }

    #[test]
    fn probe_curve_runs_from_cap_to_box() {
        let spec = quarter_with_one_cap();
        let curve = spec.neck_probe_curve(0).unwrap();
        assert!((curve.total_length() - 1.5).abs() < 1e-12);
        let start = curve.point_at(0.0);
        assert_eq!(start[0], -0.5);
        assert_eq!(start[1], 1.25);
        assert!(spec.neck_probe_curve(3).is_err());
    }
}
