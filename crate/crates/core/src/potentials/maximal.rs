//! Discrete centered maximal operator with row prefix sums.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::ScalarField;

/// Dyadic radii `h, 2h, 4h, …` strictly below `diam`, followed by
/// `diam` itself as the final rung.
pub fn default_radius_ladder(h: f64, diam: f64) -> Vec<f64> {
    let mut radii = Vec::new();
    let mut r = h;
    while r < diam {
        radii.push(r);
        r *= 2.0;
    }
    radii.push(diam);
    radii
}

/// Largest non-negative integer d with `d^2 < rem`, or -1 when none.
/// Integer adjustment after the float sqrt keeps the strict comparison
/// exact even when sqrt rounds across the boundary.
fn max_strict(rem: f64) -> i64 {
    if rem <= 0.0 {
        return -1;
    }
    let mut d = rem.sqrt() as i64;
    while (((d + 1) * (d + 1)) as f64) < rem {
        d += 1;
    }
    while d >= 0 && ((d * d) as f64) >= rem {
        d -= 1;
    }
    d
}

/// Centered maximal function: at each inside cell, the maximum over
/// the radius ladder of the average of |f| over the inside cells with
/// center distance strictly below the radius.  The average divides by
/// the number of counted cells, so balls clipped by the boundary stay
/// unbiased.  `radii` defaults to [`default_radius_ladder`].
pub fn maximal_function(f: &ScalarField, radii: Option<&[f64]>) -> Result<ScalarField> {
    let domain = f.domain();
    let h = domain.h();
    let ladder: Vec<f64> = match radii {
        Some(r) => {
            if r.is_empty() {
                return Err(Error::Parameter("radius ladder must not be empty".into()));
            }
            if r.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Error::Parameter(format!("radii must be positive, got {r:?}")));
            }
            if r.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Parameter(format!(
                    "radii must be strictly increasing, got {r:?}"
                )));
            }
            r.to_vec()
        }
        None => default_radius_ladder(h, domain.diameter()),
    };

    // Row-wise prefix sums of |f| and of the inside-cell indicator.
    let shape = domain.shape();
    let rows = shape[1] * shape[2];
    let stride = shape[0] + 1;
    let mut pref_val = vec![0.0f64; rows * stride];
    let mut pref_cnt = vec![0.0f64; rows * stride];
    for row in 0..rows {
        let (j, k) = (row % shape[1], row / shape[1]);
        for i in 0..shape[0] {
            let lin = domain.linear_of([i, j, k]);
            let (v, c) = match domain.inside_index(lin) {
                Some(pos) => (f.values()[pos].abs(), 1.0),
                None => (0.0, 0.0),
            };
            pref_val[row * stride + i + 1] = pref_val[row * stride + i] + v;
            pref_cnt[row * stride + i + 1] = pref_cnt[row * stride + i] + c;
        }
    }

    let n = domain.n();
    let values: Vec<f64> = domain
        .inside_cells()
        .par_iter()
        .map(|&lin| {
            let idx = domain.idx_of_linear(lin);
            let mut best = 0.0f64;
            for &r in &ladder {
                let rr = (r / h) * (r / h);
                let mut sum = 0.0;
                let mut cnt = 0.0;
                let dk_max = if n == 3 { max_strict(rr) } else { 0 };
                for dk in -dk_max..=dk_max {
                    let kk = idx[2] as i64 + dk;
                    if kk < 0 || kk as usize >= shape[2] {
                        continue;
                    }
                    let rem_k = rr - (dk * dk) as f64;
                    let dj_max = max_strict(rem_k);
                    for dj in -dj_max..=dj_max {
                        let jj = idx[1] as i64 + dj;
                        if jj < 0 || jj as usize >= shape[1] {
                            continue;
                        }
                        let di_max = max_strict(rem_k - (dj * dj) as f64);
                        let lo = (idx[0] as i64 - di_max).max(0) as usize;
                        let hi = (idx[0] as i64 + di_max).min(shape[0] as i64 - 1) as usize;
                        if lo > hi {
                            continue;
                        }
                        let row = kk as usize * shape[1] + jj as usize;
                        sum += pref_val[row * stride + hi + 1] - pref_val[row * stride + lo];
                        cnt += pref_cnt[row * stride + hi + 1] - pref_cnt[row * stride + lo];
                    }
                }
                if cnt > 0.0 {
                    best = best.max(sum / cnt);
                }
            }
            best
        })
        .collect();

    ScalarField::from_values(domain.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_box;
    use std::sync::Arc;

    use proptest::prelude::*;

    /// Independent oracle: direct double loop over cells and rungs.
    fn brute_force_maximal(f: &ScalarField, ladder: &[f64]) -> Vec<f64> {
        let domain = f.domain();
        let h = domain.h();
        domain
            .inside_cells()
            .iter()
            .map(|&lin| {
                let x = domain.center_of_linear(lin);
                let mut best = 0.0f64;
                for &r in ladder {
                    let mut sum = 0.0;
                    let mut cnt = 0usize;
                    for (pos2, &lin2) in domain.inside_cells().iter().enumerate() {
                        let y = domain.center_of_linear(lin2);
                        let d = ((x[0] - y[0]).powi(2)
                            + (x[1] - y[1]).powi(2)
                            + (x[2] - y[2]).powi(2))
                        .sqrt();
                        if d < r - 1e-12 * h {
                            sum += f.values()[pos2].abs();
                            cnt += 1;
                        }
                    }
                    if cnt > 0 {
                        best = best.max(sum / cnt as f64);
                    }
                }
                best
            })
            .collect()
    }

    #[test]
    fn constant_fields_are_fixed_points() {
        let d = Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 1.0], 0.125).unwrap());
        let f = ScalarField::constant(d, 0.7).unwrap();
        let m = maximal_function(&f, None).unwrap();
        for &v in m.values() {
            assert!(
                (v - 0.7).abs() < 1e-14,
                "averages of a constant are the constant, got {v}"
            );
        }
    }

    #[test]
    fn ball_membership_is_strict() {
        // A point mass and the single-rung ladder [h]: the ball around
        // a neighbor at center distance exactly h contains only the
        // neighbor itself, so the mass does not leak.
        let d = Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 1.0], 0.25).unwrap());
        let mut values = vec![0.0; d.inside_count()];
        let mass_lin = d.linear_of([1, 1, 0]);
        values[d.inside_index(mass_lin).unwrap()] = 8.0;
        let f = ScalarField::from_values(d.clone(), values).unwrap();
        let m = maximal_function(&f, Some(&[0.25])).unwrap();
        assert_eq!(m.values()[d.inside_index(mass_lin).unwrap()], 8.0);
        let neighbor = d.inside_index(d.linear_of([2, 1, 0])).unwrap();
        assert_eq!(
            m.values()[neighbor], 0.0,
            "strict radius must exclude the mass at distance exactly h"
        );
    }

    #[test]
    fn point_mass_decay_matches_brute_force_and_area_heuristic() {
        let h = 1.0 / 32.0;
        let d = Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 1.0], h).unwrap());
        let mut values = vec![0.0; d.inside_count()];
        let center_idx = [16usize, 16, 0];
        values[d.inside_index(d.linear_of(center_idx)).unwrap()] = 1.0;
        let f = ScalarField::from_values(d.clone(), values).unwrap();
        let ladder = default_radius_ladder(h, d.diameter());
        let fast = maximal_function(&f, Some(&ladder)).unwrap();
        let slow = brute_force_maximal(&f, &ladder);
        for (pos, (&a, &b)) in fast.values().iter().zip(slow.iter()).enumerate() {
            assert!(
                (a - b).abs() <= 1e-15 * b.abs().max(1.0),
                "cell {pos}: prefix sums gave {a}, brute force {b}"
            );
        }
        // Interior decay: at distance d the best ball has area ~ π d^2,
        // so Mf ≈ h^2/(π d^2) up to the dyadic rung gap.
        for offset in [4usize, 6, 8] {
            let lin = d.linear_of([16 + offset, 16, 0]);
            let dist = offset as f64 * h;
            let predicted = h * h / (std::f64::consts::PI * dist * dist);
            let got = fast.values()[d.inside_index(lin).unwrap()];
            assert!(
                got > predicted / 5.0 && got < predicted * 5.0,
                "distance {dist}: maximal value {got} vs heuristic {predicted}"
            );
        }
    }

    #[test]
    fn masked_domains_average_over_counted_cells_only() {
        // An L-shaped mask: balls overlapping the hole must divide by
        // the number of inside cells they actually contain.
        let full = make_box(2, &[0.0, 0.0], &[1.0, 1.0], 0.125).unwrap();
        let l_shape =
            Arc::new(full.shrink_by(|p| p[0] < 0.5 || p[1] < 0.5).unwrap());
        let f = ScalarField::from_fn(l_shape.clone(), |p| p[0] + 2.0 * p[1]).unwrap();
        let ladder = [0.125, 0.375];
        let fast = maximal_function(&f, Some(&ladder)).unwrap();
        let slow = brute_force_maximal(&f, &ladder);
        for (&a, &b) in fast.values().iter().zip(slow.iter()) {
            assert!((a - b).abs() < 1e-13, "prefix {a} vs brute force {b}");
        }
    }

    #[test]
    fn three_dimensional_balls_match_brute_force() {
        let d = Arc::new(make_box(3, &[0.0; 3], &[0.5, 0.5, 0.5], 0.125).unwrap());
        let f = ScalarField::from_fn(d.clone(), |p| p[0] * p[1] + p[2]).unwrap();
        let ladder = default_radius_ladder(0.125, d.diameter());
        let fast = maximal_function(&f, Some(&ladder)).unwrap();
        let slow = brute_force_maximal(&f, &ladder);
        for (&a, &b) in fast.values().iter().zip(slow.iter()) {
            assert!((a - b).abs() < 1e-13, "prefix {a} vs brute force {b}");
        }
    }

    #[test]
    fn ladder_validation() {
        let d = Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 1.0], 0.25).unwrap());
        let f = ScalarField::constant(d, 1.0).unwrap();
        assert!(maximal_function(&f, Some(&[])).is_err());
        assert!(maximal_function(&f, Some(&[0.5, 0.5])).is_err());
        assert!(maximal_function(&f, Some(&[-0.5])).is_err());
        let ladder = default_radius_ladder(0.25, 2f64.sqrt());
        assert_eq!(ladder.len(), 4, "h, 2h, 4h then the diameter: {ladder:?}");
        assert_eq!(*ladder.last().unwrap(), 2f64.sqrt());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// The maximal function dominates |f| (the first rung's ball
        /// always contains at least the cell itself).
        #[test]
        fn dominates_the_field(values in proptest::collection::vec(-3.0f64..3.0, 16)) {
            let d = Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 1.0], 0.25).unwrap());
            let f = ScalarField::from_values(d, values).unwrap();
            let m = maximal_function(&f, None).unwrap();
            for (&mv, &fv) in m.values().iter().zip(f.values().iter()) {
                prop_assert!(mv >= fv.abs() - 1e-14, "M f = {} below |f| = {}", mv, fv.abs());
            }
        }
    }
}
