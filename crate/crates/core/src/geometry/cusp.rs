//! Cusp domains `{x : 0 < x_n ≤ height, |x'| < ψ(x_n)}`.
//!
//! The transverse column layout is symmetric about `x' = 0` with a
//! column of centers exactly on the axis, so every height row keeps its
//! center cell and the domain is face-connected by construction even
//! where the cusp is narrower than one cell.

use crate::error::{Error, Result};
use crate::orlicz::PsiFunction;

use super::grid::GridDomain;

/// Lattice that covers the cusp of the given height: transverse axes
/// get `2m+1` columns with centers at integer multiples of `h`
/// (so `x' = 0` is a column of centers), the height axis gets
/// `round(height/h)` rows starting at 0.
pub(crate) fn cusp_lattice(
    n: usize,
    psi: &PsiFunction,
    height: f64,
    h: f64,
) -> Result<([f64; 3], [usize; 3])> {
    if n != 2 && n != 3 {
        return Err(Error::Parameter(format!("dimension must be 2 or 3, got {n}")));
    }
    if !(height.is_finite() && height > 0.0) {
        return Err(Error::Parameter(format!("cusp height must be positive, got {height}")));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Parameter(format!("cell size must be positive, got {h}")));
    }
    let width = psi.eval_pos(height);
    let m = (width / h).ceil() as usize;
    let rows = ((height / h).round() as usize).max(1);
    let mut shape = [1usize; 3];
    let mut origin = [0.0f64; 3];
    for a in 0..n - 1 {
        shape[a] = 2 * m + 1;
        origin[a] = -(m as f64 + 0.5) * h;
    }
    shape[n - 1] = rows;
    origin[n - 1] = 0.0;
    Ok((origin, shape))
}

/// Membership test at a point: positive height coordinate at most
/// `height`, transverse distance strictly below `ψ` of the height.
pub(crate) fn cusp_contains(n: usize, psi: &PsiFunction, height: f64, p: &[f64; 3]) -> bool {
    let t = p[n - 1];
    if !(t > 0.0 && t <= height) {
        return false;
    }
    let transverse = if n == 2 { p[0].abs() } else { p[0].hypot(p[1]) };
    transverse < psi.eval_pos(t)
}

/// Build the cusp domain of the given height.  Fails with a resolution
/// error when no cell center lands inside (the first axis row must
/// reach below the top: `h ≤ 2·height`).
pub fn make_cusp(n: usize, psi: &PsiFunction, height: f64, h: f64) -> Result<GridDomain> {
    let (origin, shape) = cusp_lattice(n, psi, height, h)?;
    let domain =
        GridDomain::from_predicate(n, origin, shape, h, |p| cusp_contains(n, psi, height, p))?;
    if domain.inside_count() == 0 {
        return Err(Error::Resolution {
            what: format!("cusp of height {height} has no resolved cells"),
            max_h: 2.0 * height,
        });
    }
    if !domain.is_connected() {
        return Err(Error::Degenerate(format!(
            "cusp of height {height} split into disconnected cells at h = {h}"
        )));
    }
    Ok(domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rel_err;
    use crate::orlicz::PhiSpec;

    fn psi_power(s: f64) -> PsiFunction {
        PsiFunction::new(PhiSpec::power(s).unwrap())
    }

    #[test]
    fn quadratic_cusp_area_matches_integral() {
        // Area of {0 < t <= 1, |x| < t^2} is 2/3.
        let d = make_cusp(2, &psi_power(2.0), 1.0, 1e-3).unwrap();
        let exact = 2.0 / 3.0;
        assert!(
            rel_err(d.measure(), exact) < 0.01,
            "area {} vs exact {}",
            d.measure(),
            exact
        );
        assert!(d.is_connected());
    }

    #[test]
    fn linear_cone_volume_matches_integral() {
        // Volume of {0 < t <= 1, |x'| < t} in 3-D is pi/3.
        let d = make_cusp(3, &psi_power(1.0), 1.0, 1.0 / 64.0).unwrap();
        let exact = std::f64::consts::PI / 3.0;
        assert!(
            rel_err(d.measure(), exact) < 0.05,
            "volume {} vs exact {}",
            d.measure(),
            exact
        );
    }

    #[test]
    fn narrow_tip_keeps_axis_column() {
        // At h = 1/8 the quadratic cusp is narrower than a cell for
        // t < sqrt(h); the axis column must still be present and the
        // domain connected.
        let d = make_cusp(2, &psi_power(2.0), 1.0, 0.125).unwrap();
        assert!(d.inside_count() > 0);
        assert!(d.contains_point(&[0.0, 0.0625, 0.0]), "tip row center missing");
        assert!(d.is_connected());
    }

    #[test]
    fn heights_above_one_use_the_linear_branch() {
        // psi(t) = t for t >= 1 with phi = power, so the widest row of a
        // height-2 cusp reaches |x| just under 2.
        let d = make_cusp(2, &psi_power(1.5), 2.0, 0.25).unwrap();
        let top_row_y = 2.0 - 0.125;
        assert!(d.contains_point(&[1.625, top_row_y, 0.0]));
        assert!(!d.contains_point(&[2.1, top_row_y, 0.0]));
    }

    #[test]
    fn unresolved_cusp_reports_required_resolution() {
        let err = make_cusp(2, &psi_power(2.0), 0.1, 0.5).unwrap_err();
        match err {
            crate::Error::Resolution { max_h, .. } => {
                assert!((max_h - 0.2).abs() < 1e-12, "usable cell size bound: {max_h}")
            }
            other => panic!("expected a resolution error, got {other:?}"),
        }
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(make_cusp(4, &psi_power(1.0), 1.0, 0.1).is_err());
        assert!(make_cusp(2, &psi_power(1.0), -1.0, 0.1).is_err());
        assert!(make_cusp(2, &psi_power(1.0), 1.0, f64::NAN).is_err());
    }
}
