//! Direct summation of the modified Riesz potential.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::ScalarField;
use crate::orlicz::PsiFunction;

/// Radius factor ω_n such that a ball of radius `ω_n · h` has the same
/// measure as one grid cell: `π^{-1/2}` in 2-D, `(3/(4π))^{1/3}` in 3-D.
pub fn equal_measure_radius_factor(n: usize) -> f64 {
    match n {
        2 => 1.0 / std::f64::consts::PI.sqrt(),
        _ => (3.0 / (4.0 * std::f64::consts::PI)).cbrt(),
    }
}

/// `∫_{B(0,R)} ψ(|z|)^{1-n} dz`, by piecewise power-law quadrature on
/// 64 log-spaced intervals of `[R·1e-12, R]` plus the power-law tail
/// at 0 fitted from the first interval.  The radial integrand
/// `g(r) = (r/ψ(r))^{n-1}` is an exact power on each branch of ψ, so
/// fitting an exponent through the interval endpoints integrates those
/// stretches exactly.  Errors out when the local exponent says the
/// integral diverges (ψ grows too fast near 0 for the kernel to be
/// summable).
pub fn radial_kernel_integral(psi: &PsiFunction, n: usize, radius: f64) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Parameter(format!("kernel radius must be positive, got {radius}")));
    }
    let surface = match n {
        2 => 2.0 * std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI,
        _ => return Err(Error::Parameter(format!("dimension must be 2 or 3, got {n}"))),
    };
    let g = |r: f64| (r / psi.eval_pos(r)).powi(n as i32 - 1);
    let steps = 64usize;
    let a = radius * 1e-12;
    let (lo, hi) = (a.ln(), radius.ln());
    let dl = (hi - lo) / steps as f64;
    let edges: Vec<f64> = (0..=steps).map(|k| (lo + k as f64 * dl).exp()).collect();
    let g_edges: Vec<f64> = edges.iter().map(|&r| g(r)).collect();

    let exponent = |k: usize| (g_edges[k + 1] / g_edges[k]).ln() / (edges[k + 1] / edges[k]).ln();
    let gamma0 = exponent(0);
    if !(gamma0 > -1.0 + 1e-6) {
        return Err(Error::Numeric(format!(
            "kernel (r/ψ(r))^{{n-1}} has local exponent {gamma0:.4} at 0; the potential \
             integral diverges"
        )));
    }

    // ∫_0^a g0 (r/a)^γ dr with the exponent of the first interval.
    let mut integral = g_edges[0] * edges[0] / (gamma0 + 1.0);
    for k in 0..steps {
        let gamma = exponent(k);
        let ratio = edges[k + 1] / edges[k];
        let piece = if (gamma + 1.0).abs() < 1e-9 {
            g_edges[k] * edges[k] * ratio.ln()
        } else {
            g_edges[k] * edges[k] * (ratio.powf(gamma + 1.0) - 1.0) / (gamma + 1.0)
        };
        integral += piece;
    }
    Ok(surface * integral)
}

/// Result of a potential evaluation.
#[derive(Debug, Clone)]
pub struct PotentialResult {
    /// Potential values at the evaluated cells; non-evaluated inside
    /// cells hold 0.
    pub field: ScalarField,
    /// Linear indices of the cells that were evaluated.
    pub evaluated: Vec<u32>,
    /// Evaluation points that were outside the domain and skipped
    /// (only when `allow_outside` is set).
    pub skipped_outside: usize,
    /// Radius of the equal-measure ball used for the self-cell term.
    pub self_term_radius: f64,
    /// Kernel integral over that ball; each cell contributes `|f(x)|`
    /// times this to its own potential.
    pub self_term_unit: f64,
}

/// Evaluate the modified Riesz potential of `f` at the given cells
/// (all inside cells when `eval` is None).  Evaluation points outside
/// the domain are an error unless `allow_outside` is set, in which
/// case they are skipped and counted.
pub fn riesz_potential(
    f: &ScalarField,
    psi: &PsiFunction,
    eval: Option<&[u32]>,
    allow_outside: bool,
) -> Result<PotentialResult> {
    let domain = f.domain();
    let n = domain.n();
    let h = domain.h();
    let cell = h.powi(n as i32);

    let mut skipped_outside = 0usize;
    let eval_positions: Vec<(usize, u32)> = match eval {
        None => domain.inside_cells().iter().enumerate().map(|(pos, &lin)| (pos, lin)).collect(),
        Some(cells) => {
            let mut out = Vec::with_capacity(cells.len());
            for &lin in cells {
                match domain.inside_index(lin) {
                    Some(pos) => out.push((pos, lin)),
                    None if allow_outside => skipped_outside += 1,
                    None => {
                        return Err(Error::Domain(format!(
                            "evaluation cell {lin} is outside the domain"
                        )))
                    }
                }
            }
            out
        }
    };

    let self_term_radius = equal_measure_radius_factor(n) * h;
    let self_term_unit = radial_kernel_integral(psi, n, self_term_radius)?;

    // Source table: centers and |f| weights, in inside-cell order.
    let centers: Vec<[f64; 3]> =
        domain.inside_cells().iter().map(|&lin| domain.center_of_linear(lin)).collect();
    let weights: Vec<f64> = f.values().iter().map(|v| v.abs() * cell).collect();

    let values: Vec<f64> = eval_positions
        .par_iter()
        .map(|&(pos, _)| {
            let x = centers[pos];
            let mut sum = 0.0;
            for (src, w) in weights.iter().enumerate() {
                if src == pos || *w == 0.0 {
                    continue;
                }
                let c = centers[src];
                let d2 = (c[0] - x[0]).powi(2) + (c[1] - x[1]).powi(2) + (c[2] - x[2]).powi(2);
                let d = d2.sqrt();
                sum += w / psi.eval_pos(d).powi(n as i32 - 1);
            }
            sum + f.values()[pos].abs() * self_term_unit
        })
        .collect();

    let mut field_values = vec![0.0f64; domain.inside_count()];
    for (&(pos, _), &v) in eval_positions.iter().zip(values.iter()) {
        field_values[pos] = v;
    }
    Ok(PotentialResult {
        field: ScalarField::from_values(domain.clone(), field_values)?,
        evaluated: eval_positions.iter().map(|&(_, lin)| lin).collect(),
        skipped_outside,
        self_term_radius,
        self_term_unit,
    })
}
