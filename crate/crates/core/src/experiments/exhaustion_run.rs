//! Ratio stability along a nested exhaustion of an unbounded prototype.
//!
//! The members D₁ ⊂ D₂ ⊂ … live on one lattice; a single field is
//! sampled on the largest member and restricted inward, so every row of
//! the report sees literally the same cell values.  Watched quantities:
//! the per-member average (for a fixed-mass bump it must decay as the
//! measure grows) and the shift-reduced ratio (its stabilization is the
//! evidence that the inequality survives the passage to the unbounded
//! limit).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{gradient_magnitude, integral_average, lp_norm, luxemburg_norm, Region};
use crate::geometry::{make_exhaustion, Prototype};
use crate::orlicz::{OrliczH, PhiSpec, PsiFunction};
use crate::report::{fmt, CsvDoc};

use super::testfns::ExhaustionField;

/// One member of the exhaustion.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExhaustionRow {
    pub scale: f64,
    pub measure: f64,
    pub average: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

/// Full report over the member ladder.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExhaustionReport {
    pub prototype: String,
    pub field: String,
    pub phi: String,
    pub p: f64,
    pub h: f64,
    pub rows: Vec<ExhaustionRow>,
    /// True when |average| is non-increasing along the ladder (up to
    /// 1e-12 slack) — expected for fixed-mass fields on growing domains.
    pub averages_decay: bool,
    /// max ratio / min ratio across the rows.
    pub ratio_spread: f64,
}

fn prototype_label(proto: &Prototype) -> &'static str {
    match proto {
        Prototype::Cusp { .. } => "cusp",
        Prototype::MushroomQuarter { .. } => "mushrooms",
    }
}

/// Evaluate the shift-reduced ratio on every member of the exhaustion.
/// φ must be the same growth function the prototype geometry was built
/// from, so the norm and the domain degenerate together.
pub fn exhaustion_experiment(
    proto: &Prototype,
    scales: &[f64],
    h: f64,
    phi: &PhiSpec,
    p: f64,
    field: &ExhaustionField,
) -> Result<ExhaustionReport> {
    let members = make_exhaustion(proto, scales, h)?;
    let members: Vec<Arc<_>> = members.into_iter().map(Arc::new).collect();
    let n = proto.n() as u32;
    let h_fn = OrliczH::new(PsiFunction::new(*phi), n, p)?;

    let largest = members.last().expect("make_exhaustion returns ≥ 1 member");
    let u = field.build(largest)?;

    let mut rows = Vec::with_capacity(members.len());
    for (member, &scale) in members.iter().zip(scales) {
        let u_i = u.restrict_to(member)?;
        let average = integral_average(&u_i, Region::Whole)?;
        let numerator = luxemburg_norm(&u_i.shifted(average)?, &h_fn)?;
        let denominator = lp_norm(&gradient_magnitude(&u_i)?.magnitude, p)?;
        if denominator <= 1e-14 {
            return Err(Error::Degenerate(format!(
                "gradient norm {denominator} vanishes on the member at scale {scale}"
            )));
        }
        rows.push(ExhaustionRow {
            scale,
            measure: member.measure(),
            average,
            numerator,
            denominator,
            ratio: numerator / denominator,
        });
    }

    let averages_decay = rows
        .windows(2)
        .all(|w| w[1].average.abs() <= w[0].average.abs() + 1e-12);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in &rows {
        lo = lo.min(r.ratio);
        hi = hi.max(r.ratio);
    }
    let ratio_spread = hi / lo;

    Ok(ExhaustionReport {
        prototype: prototype_label(proto).to_string(),
        field: field.label(),
        phi: phi.label(),
        p,
        h,
        rows,
        averages_decay,
        ratio_spread,
    })
}

impl ExhaustionReport {
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc =
            CsvDoc::new(["scale", "measure", "average", "numerator", "denominator", "ratio"]);
        doc.push_meta("prototype", &self.prototype);
        doc.push_meta("field", &self.field);
        doc.push_meta("phi", &self.phi);
        doc.push_meta("p", self.p);
        doc.push_meta("h", self.h);
        doc.push_meta("averages_decay", self.averages_decay);
        doc.push_meta("ratio_spread", fmt(self.ratio_spread));
        for r in &self.rows {
            doc.push_row([
                fmt(r.scale),
                fmt(r.measure),
                fmt(r.average),
                fmt(r.numerator),
                fmt(r.denominator),
                fmt(r.ratio),
            ]);
        }
        doc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_on_growing_cusp_has_decaying_averages_and_stable_ratio() {
        let phi = PhiSpec::power(2.0).unwrap();
        let proto = Prototype::Cusp { n: 2, psi: PsiFunction::new(phi) };
        let report = exhaustion_experiment(
            &proto,
            &[1.0, 2.0, 4.0, 8.0],
            1.0 / 16.0,
            &phi,
            1.0,
            &ExhaustionField::BumpAtOrigin { width: 0.5 },
        )
        .unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.averages_decay, "fixed-mass bump averages must decay: {:?}",
            report.rows.iter().map(|r| r.average).collect::<Vec<_>>());
        assert!(
            report.rows.windows(2).all(|w| w[1].measure > w[0].measure),
            "member measures must grow"
        );
        // The bump's support sits inside the smallest member, so the
        // denominator is literally identical across rows.
        let d0 = report.rows[0].denominator;
        for r in &report.rows {
            assert!(
                (r.denominator - d0).abs() < 1e-12 * d0,
                "gradient norm should not change once the support is covered"
            );
        }
        let last = report.rows.last().unwrap().ratio;
        let prev = report.rows[report.rows.len() - 2].ratio;
        assert!(
            (last - prev).abs() / last < 0.05,
            "ratio should stabilize at the large scales: {prev} vs {last}"
        );
    }

    #[test]
    fn growing_axis_field_does_not_get_the_decay_flag() {
        let phi = PhiSpec::power(1.0).unwrap();
        let proto = Prototype::Cusp { n: 2, psi: PsiFunction::new(phi) };
        let report = exhaustion_experiment(
            &proto,
            &[1.0, 2.0, 4.0],
            1.0 / 8.0,
            &phi,
            1.0,
            &ExhaustionField::AxisPower { gamma: 1.0 },
        )
        .unwrap();
        assert!(
            !report.averages_decay,
            "averages of a growing field must not decay: {:?}",
            report.rows.iter().map(|r| r.average).collect::<Vec<_>>()
        );
    }

    #[test]
    fn mushroom_prototype_members_grow_by_exact_area() {
        let phi = PhiSpec::power(2.0).unwrap();
        let spec = crate::geometry::MushroomSpec::dyadic(2, phi, 4).unwrap();
        let proto = Prototype::MushroomQuarter { spec };
        let report = exhaustion_experiment(
            &proto,
            &[5.0, 6.0],
            0.25,
            &phi,
            1.0,
            &ExhaustionField::BumpAtOrigin { width: 1.0 },
        )
        .unwrap();
        // Both scales already contain every decoration, so the measures
        // differ by exactly the quarter-box increment 6² − 5² = 11.
        let dm = report.rows[1].measure - report.rows[0].measure;
        assert!((dm - 11.0).abs() < 1e-9, "expected area increment 11, got {dm}");
    }

    #[test]
    fn csv_is_deterministic() {
        let phi = PhiSpec::power(2.0).unwrap();
        let proto = Prototype::Cusp { n: 2, psi: PsiFunction::new(phi) };
        let run = || {
            exhaustion_experiment(
                &proto,
                &[1.0, 2.0],
                0.125,
                &phi,
                1.0,
                &ExhaustionField::BumpAtOrigin { width: 0.5 },
            )
            .unwrap()
            .to_csv()
            .render()
        };
        assert_eq!(run(), run(), "equal inputs must render byte-identical CSV");
    }
}
