//! Predicted vs. measured large-argument exponent of H for power growth.
//!
//! For φ(t) = t^s the function H is an exact power above its knot, and
//! the embedding target exponent
//!
//! ```text
//!   q(s, p, n) = np / (n − np + s·p(n−1))
//! ```
//!
//! must equal the log-log slope of H on any large-argument window.  The
//! table cross-checks the closed-form branch arithmetic against a
//! least-squares slope fit — a disagreement would mean the two encodings
//! of the same exponent drifted apart.

use crate::error::{Error, Result};
use crate::numerics::loglog_slope;
use crate::orlicz::{OrliczH, PhiSpec, PsiFunction};
use crate::report::{fmt, CsvDoc};

/// Window for the slope fit: H is past its knot here for every scale
/// and power in range, and stays far below overflow.
const FIT_LO: f64 = 1e3;
const FIT_HI: f64 = 1e6;
const FIT_POINTS: usize = 16;

/// One (s, p) combination.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SJohnRow {
    pub s: f64,
    pub p: f64,
    pub q_predicted: f64,
    pub q_measured: f64,
    pub rel_gap: f64,
}

/// The full cross-product table for one dimension.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SJohnTable {
    pub n: usize,
    pub rows: Vec<SJohnRow>,
}

/// Predicted target exponent for boundary growth `t^s` in dimension n.
pub fn predicted_exponent(n: usize, s: f64, p: f64) -> f64 {
    let nf = n as f64;
    nf * p / (nf - nf * p + s * p * (nf - 1.0))
}

/// Build the table over all (s, p) pairs.  Every s must be ≥ 1 and
/// every p in [1, n); the denominator of the prediction is then
/// automatically positive.
pub fn sjohn_exponent_table(n: usize, s_list: &[f64], p_list: &[f64]) -> Result<SJohnTable> {
    if s_list.is_empty() || p_list.is_empty() {
        return Err(Error::Parameter("s and p lists must be non-empty".into()));
    }
    let mut rows = Vec::with_capacity(s_list.len() * p_list.len());
    for &s in s_list {
        let phi = PhiSpec::power(s)?;
        for &p in p_list {
            let h_fn = OrliczH::new(PsiFunction::new(phi), n as u32, p)?;
            let grid = h_fn.eval_h_grid(FIT_LO, FIT_HI, FIT_POINTS)?;
            let (us, hs): (Vec<f64>, Vec<f64>) = grid.into_iter().unzip();
            let q_measured = loglog_slope(&us, &hs);
            let q_predicted = predicted_exponent(n, s, p);
            rows.push(SJohnRow {
                s,
                p,
                q_predicted,
                q_measured,
                rel_gap: (q_measured - q_predicted).abs() / q_predicted,
            });
        }
    }
    Ok(SJohnTable { n, rows })
}

impl SJohnTable {
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::new(["s", "p", "q_predicted", "q_measured", "rel_gap"]);
        doc.push_meta("n", self.n);
        for r in &self.rows {
            doc.push_row([
                fmt(r.s),
                fmt(r.p),
                fmt(r.q_predicted),
                fmt(r.q_measured),
                fmt(r.rel_gap),
            ]);
        }
        doc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_case_recovers_sobolev_exponent() {
        // s = 1 collapses the prediction to np/(n−p).
        let t2 = sjohn_exponent_table(2, &[1.0], &[1.0]).unwrap();
        assert!((t2.rows[0].q_predicted - 2.0).abs() < 1e-12, "n=2, p=1 gives q = 2");
        let t3 = sjohn_exponent_table(3, &[1.0], &[2.0]).unwrap();
        assert!((t3.rows[0].q_predicted - 6.0).abs() < 1e-12, "n=3, p=2 gives q = 6");
    }

    #[test]
    fn measured_slope_matches_prediction_to_fit_precision() {
        let table =
            sjohn_exponent_table(2, &[1.0, 1.5, 2.0, 3.0], &[1.0, 1.2, 1.5]).unwrap();
        assert_eq!(table.rows.len(), 12);
        for r in &table.rows {
            assert!(
                r.rel_gap < 1e-9,
                "s={}, p={}: measured {} vs predicted {} (gap {})",
                r.s,
                r.p,
                r.q_measured,
                r.q_predicted,
                r.rel_gap
            );
        }
    }

    #[test]
    fn stronger_boundary_growth_lowers_the_exponent() {
        let table = sjohn_exponent_table(2, &[1.0, 2.0, 3.0], &[1.0]).unwrap();
        let qs: Vec<f64> = table.rows.iter().map(|r| r.q_predicted).collect();
        assert!(
            qs.windows(2).all(|w| w[1] < w[0]),
            "q must fall as s rises, got {qs:?}"
        );
    }

    #[test]
    fn rejects_empty_lists_and_bad_exponents() {
        assert!(sjohn_exponent_table(2, &[], &[1.0]).is_err());
        assert!(sjohn_exponent_table(2, &[1.0], &[]).is_err());
        assert!(sjohn_exponent_table(2, &[0.5], &[1.0]).is_err(), "s < 1 is not a valid growth");
        assert!(sjohn_exponent_table(2, &[1.0], &[2.0]).is_err(), "p must stay below n");
    }
}
