//! Integral norms of scalar fields: L^p, the modular, the Luxemburg
//! norm, and its minimum over constant shifts.

use crate::error::{Error, Result};
use crate::orlicz::OrliczH;

use super::field::ScalarField;

/// Relative width at which the Luxemburg bisection stops.
const LUXEMBURG_REL_TOL: f64 = 1e-8;
/// Ternary-search iterations for the best constant shift.
const SHIFT_ITERS: usize = 120;

fn check_dimensions(u: &ScalarField, h_fn: &OrliczH) -> Result<()> {
    if u.domain().n() != h_fn.n() as usize {
        return Err(Error::Parameter(format!(
            "field dimension {} does not match the function's dimension {}",
            u.domain().n(),
            h_fn.n()
        )));
    }
    Ok(())
}

/// `(Σ |u|^p h^n)^(1/p)` over inside cells, `p ≥ 1`.
pub fn lp_norm(u: &ScalarField, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::Parameter(format!("exponent must be >= 1, got {p}")));
    }
    let cell = u.domain().h().powi(u.domain().n() as i32);
    let mut sum = 0.0;
    for &v in u.values() {
        sum += v.abs().powf(p);
    }
    Ok((sum * cell).powf(1.0 / p))
}

/// `Σ H(|u| / λ) h^n` over inside cells.
pub fn modular(u: &ScalarField, h_fn: &OrliczH, lambda: f64) -> Result<f64> {
    check_dimensions(u, h_fn)?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::Parameter(format!("scaling must be positive, got {lambda}")));
    }
    match modular_or_inf(u, h_fn, lambda) {
        v if v.is_finite() => Ok(v),
        _ => Err(Error::Overflow(format!(
            "modular overflows at scaling {lambda}; the arguments exceed the evaluable range"
        ))),
    }
}

/// Modular sum, with +inf standing in for arguments past the evaluable
/// range (used by the bisection: such a λ is simply too small).
fn modular_or_inf(u: &ScalarField, h_fn: &OrliczH, lambda: f64) -> f64 {
    let cell = u.domain().h().powi(u.domain().n() as i32);
    let mut sum = 0.0;
    for &v in u.values() {
        match h_fn.eval_h(v.abs() / lambda) {
            Ok(t) => sum += t,
            Err(_) => return f64::INFINITY,
        }
    }
    sum * cell
}

/// Luxemburg norm `inf { λ > 0 : modular(u, λ) ≤ 1 }` by bisection on
/// `log λ`.  The zero field has norm 0.  Returns the upper bisection
/// end, so the modular at the result is ≤ 1.
pub fn luxemburg_norm(u: &ScalarField, h_fn: &OrliczH) -> Result<f64> {
    check_dimensions(u, h_fn)?;
    let peak = u.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }

    // Expand until the modular straddles 1.
    let mut hi = peak;
    let mut guard = 0;
    while modular_or_inf(u, h_fn, hi) > 1.0 {
        hi *= 4.0;
        guard += 1;
        if guard > 600 {
            return Err(Error::Numeric("Luxemburg norm upper bracket diverged".into()));
        }
    }
    let mut lo = hi / 4.0;
    while modular_or_inf(u, h_fn, lo) <= 1.0 {
        lo /= 4.0;
        guard += 1;
        if guard > 1200 {
            // The modular never rises above 1: numerically the norm
            // is indistinguishable from 0 for this field.
            return Ok(0.0);
        }
    }
    // Invariant: modular(lo) > 1 >= modular(hi).
    while hi / lo - 1.0 > LUXEMBURG_REL_TOL {
        let mid = (lo * hi).sqrt();
        if modular_or_inf(u, h_fn, mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Minimize `b ↦ ‖u − b‖_H` over constant shifts by ternary search on
/// `[min u, max u]` (the map is convex, and the minimizer lies in the
/// value range).  Returns `(best_shift, norm_at_best_shift)`.
pub fn best_shift_norm(u: &ScalarField, h_fn: &OrliczH) -> Result<(f64, f64)> {
    check_dimensions(u, h_fn)?;
    let mut lo = u.min_value();
    let mut hi = u.max_value();
    if lo == hi {
        return Ok((lo, 0.0));
    }
    let eval = |b: f64| -> Result<f64> { luxemburg_norm(&u.shifted(b)?, h_fn) };
    for _ in 0..SHIFT_ITERS {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if eval(m1)? <= eval(m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let b = 0.5 * (lo + hi);
    Ok((b, eval(b)?))
}
