//! Field storage, finite differences, averages, and CSV export.

use std::io::Write;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::GridDomain;

/// One finite value per inside cell of a shared grid domain, aligned
/// with `domain.inside_cells()`.
#[derive(Debug, Clone, Serialize)]
pub struct ScalarField {
    #[serde(skip)]
    domain: Arc<GridDomain>,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn from_values(domain: Arc<GridDomain>, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.inside_count() {
            return Err(Error::Parameter(format!(
                "{} values for {} inside cells",
                values.len(),
                domain.inside_count()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!(
                "non-finite field value {} at inside cell {bad}",
                values[bad]
            )));
        }
        Ok(Self { domain, values })
    }

    /// Sample `f` at every inside cell center.
    pub fn from_fn(domain: Arc<GridDomain>, f: impl Fn(&[f64; 3]) -> f64) -> Result<Self> {
        let values = domain
            .inside_cells()
            .iter()
            .map(|&lin| f(&domain.center_of_linear(lin)))
            .collect();
        Self::from_values(domain, values)
    }

    pub fn constant(domain: Arc<GridDomain>, c: f64) -> Result<Self> {
        let count = domain.inside_count();
        Self::from_values(domain, vec![c; count])
    }

    pub fn domain(&self) -> &Arc<GridDomain> {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Pointwise map; the results must stay finite.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_values(self.domain.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    /// `u - b` as a new field.
    pub fn shifted(&self, b: f64) -> Result<Self> {
        self.map(|v| v - b)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Restriction to a domain on the same lattice whose inside cells
    /// are a subset of this field's domain.
    pub fn restrict_to(&self, sub: &Arc<GridDomain>) -> Result<Self> {
        if !sub.subset_of(self.domain.as_ref()) {
            return Err(Error::Parameter(
                "restriction target is not a sub-domain on the same lattice".into(),
            ));
        }
        let values = sub
            .inside_cells()
            .iter()
            .map(|&lin| {
                let pos = self
                    .domain
                    .inside_index(lin)
                    .expect("subset cells are inside the parent");
                self.values[pos]
            })
            .collect();
        Self::from_values(sub.clone(), values)
    }

    /// Write `index,x0,x1[,x2],value` rows, one per inside cell, in
    /// inside-cell order.  Floats use the shortest round-trip decimal
    /// form, so equal runs produce byte-identical output.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        let n = self.domain.n();
        if n == 3 {
            writeln!(w, "index,x0,x1,x2,value")?;
        } else {
            writeln!(w, "index,x0,x1,value")?;
        }
        for (pos, &lin) in self.domain.inside_cells().iter().enumerate() {
            let c = self.domain.center_of_linear(lin);
            if n == 3 {
                writeln!(w, "{lin},{},{},{},{}", c[0], c[1], c[2], self.values[pos])?;
            } else {
                writeln!(w, "{lin},{},{},{}", c[0], c[1], self.values[pos])?;
            }
        }
        Ok(())
    }
}

/// Magnitude of the finite-difference gradient, with a count of how
/// many (cell, axis) pairs had no inside neighbor on that axis (their
/// component is taken as 0).
#[derive(Debug, Clone, Serialize)]
pub struct GradientField {
    pub magnitude: ScalarField,
    pub isolated_axis_cells: usize,
}

/// Finite-difference gradient magnitude: central differences where
/// both axis neighbors are inside, one-sided at domain boundaries,
/// zero where a cell has no inside neighbor along an axis.
pub fn gradient_magnitude(u: &ScalarField) -> Result<GradientField> {
    let domain = u.domain();
    let h = domain.h();
    let n = domain.n();
    let mut isolated = 0usize;
    let mut mags = Vec::with_capacity(domain.inside_count());
    for (pos, &lin) in domain.inside_cells().iter().enumerate() {
        let idx = domain.idx_of_linear(lin);
        let mut sq = 0.0;
        for a in 0..n {
            let minus = if idx[a] > 0 {
                let mut nb = idx;
                nb[a] -= 1;
                domain.inside_index(domain.linear_of(nb))
            } else {
                None
            };
            let plus = if idx[a] + 1 < domain.shape()[a] {
                let mut nb = idx;
                nb[a] += 1;
                domain.inside_index(domain.linear_of(nb))
            } else {
                None
            };
            let component = match (minus, plus) {
                (Some(m), Some(p)) => (u.values()[p] - u.values()[m]) / (2.0 * h),
                (None, Some(p)) => (u.values()[p] - u.values()[pos]) / h,
                (Some(m), None) => (u.values()[pos] - u.values()[m]) / h,
                (None, None) => {
                    isolated += 1;
                    0.0
                }
            };
            sq += component * component;
        }
        mags.push(sq.sqrt());
    }
    Ok(GradientField {
        magnitude: ScalarField::from_values(domain.clone(), mags)?,
        isolated_axis_cells: isolated,
    })
}

/// Averaging region for [`integral_average`].
pub enum Region<'a> {
    /// The whole domain of the field.
    Whole,
    /// Cells whose centers lie within `radius` of `center`.
    Ball { center: [f64; 3], radius: f64 },
    /// A sub-domain on the same lattice.
    Sub(&'a GridDomain),
}

/// Mean of the field over the region (integral divided by region
/// measure).  Empty regions are an error.
pub fn integral_average(u: &ScalarField, region: Region<'_>) -> Result<f64> {
    let domain = u.domain();
    let mut sum = 0.0;
    let mut count = 0usize;
    match region {
        Region::Whole => {
            for &v in u.values() {
                sum += v;
            }
            count = u.values().len();
        }
        Region::Ball { center, radius } => {
            if !(radius.is_finite() && radius > 0.0) {
                return Err(Error::Parameter(format!("ball radius must be positive, got {radius}")));
            }
            let r2 = radius * radius;
            for (pos, &lin) in domain.inside_cells().iter().enumerate() {
                let c = domain.center_of_linear(lin);
                let mut d2 = 0.0;
                for a in 0..domain.n() {
                    d2 += (c[a] - center[a]) * (c[a] - center[a]);
                }
                if d2 <= r2 {
                    sum += u.values()[pos];
                    count += 1;
                }
            }
        }
        Region::Sub(sub) => {
            if !sub.subset_of(domain.as_ref()) {
                return Err(Error::Parameter(
                    "averaging region is not a sub-domain on the same lattice".into(),
                ));
            }
            for &lin in sub.inside_cells() {
                let pos = domain.inside_index(lin).expect("subset cells are inside the parent");
                sum += u.values()[pos];
                count += 1;
            }
        }
    }
    if count == 0 {
        return Err(Error::EmptyRegion("averaging region contains no cells".into()));
    }
    Ok(sum / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_box;

    fn unit_square(h: f64) -> Arc<GridDomain> {
        Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 1.0], h).unwrap())
    }

    #[test]
    fn linear_fields_have_exact_gradients() {
        let d = unit_square(0.125);
        let u = ScalarField::from_fn(d, |p| p[0] + 2.0 * p[1]).unwrap();
        let g = gradient_magnitude(&u).unwrap();
        let expected = 5f64.sqrt();
        for &m in g.magnitude.values() {
            assert!(
                (m - expected).abs() < 1e-12,
                "gradient magnitude {m} vs exact {expected} (one-sided differences are exact on linear fields)"
            );
        }
        assert_eq!(g.isolated_axis_cells, 0);
    }

    #[test]
    fn constant_fields_have_zero_gradient() {
        let d = unit_square(0.25);
        let u = ScalarField::constant(d, 7.5).unwrap();
        let g = gradient_magnitude(&u).unwrap();
        assert!(g.magnitude.values().iter().all(|&m| m == 0.0));
    }

    #[test]
    fn single_row_counts_isolated_axes() {
        let d = Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 0.25], 0.25).unwrap());
        assert_eq!(d.shape(), [4, 1, 1]);
        let u = ScalarField::from_fn(d, |p| 3.0 * p[0]).unwrap();
        let g = gradient_magnitude(&u).unwrap();
        assert_eq!(g.isolated_axis_cells, 4, "each cell lacks both neighbors on axis 1");
        for &m in g.magnitude.values() {
            assert!((m - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn averages_over_regions() {
        let d = unit_square(0.25);
        let u = ScalarField::from_fn(d.clone(), |p| p[0]).unwrap();
        let whole = integral_average(&u, Region::Whole).unwrap();
        assert!((whole - 0.5).abs() < 1e-12);
        // Symmetric ball around the center keeps the average at 1/2.
        let ball = integral_average(
            &u,
            Region::Ball { center: [0.5, 0.5, 0.0], radius: 0.3 },
        )
        .unwrap();
        assert!((ball - 0.5).abs() < 1e-12);
        // A ball that catches no cell center is empty.
        let err = integral_average(
            &u,
            Region::Ball { center: [0.126, 0.5, 0.0], radius: 1e-4 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyRegion(_)), "got {err:?}");
    }

    #[test]
    fn restriction_and_sub_average() {
        let d = unit_square(0.25);
        let left = Arc::new(d.shrink_by(|p| p[0] < 0.5).unwrap());
        let u = ScalarField::from_fn(d.clone(), |p| p[0]).unwrap();
        let v = u.restrict_to(&left).unwrap();
        assert_eq!(v.values().len(), 8);
        let avg = integral_average(&u, Region::Sub(left.as_ref())).unwrap();
        assert!((avg - 0.25).abs() < 1e-12);
        // A foreign lattice is rejected.
        let other = unit_square(0.125);
        assert!(u.restrict_to(&other).is_err());
    }

    #[test]
    fn non_finite_values_are_rejected() {
        let d = unit_square(0.5);
        let err = ScalarField::from_values(d.clone(), vec![1.0, f64::NAN, 0.0, 2.0]).unwrap_err();
        assert!(matches!(err, Error::Numeric(_)));
        assert!(ScalarField::from_values(d, vec![1.0; 3]).is_err(), "length mismatch");
    }

    #[test]
    fn csv_export_is_deterministic() {
        let d = Arc::new(make_box(2, &[0.0, 0.0], &[1.0, 0.5], 0.5).unwrap());
        let u = ScalarField::from_fn(d, |p| p[0] + p[1]).unwrap();
        let mut buf = Vec::new();
        u.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "index,x0,x1,value\n0,0.25,0.25,0.5\n1,0.75,0.25,1\n");
    }
}
