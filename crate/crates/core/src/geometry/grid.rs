//! Uniform-lattice cell domains with mask IO, refinement, connectivity,
//! and an exact Euclidean distance transform to the complement.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// A bounded axis-aligned lattice of cubic cells of side `h`, together
/// with a boolean mask selecting the cells whose centers lie in the
/// domain.  Works in 2-D and 3-D; in 2-D the third axis has extent 1
/// and every third coordinate is 0.
///
/// Storage is row-major with the first axis fastest:
/// `linear = (k * shape[1] + j) * shape[0] + i`.
#[derive(Debug, Clone, Serialize)]
pub struct GridDomain {
    n: usize,
    shape: [usize; 3],
    origin: [f64; 3],
    h: f64,
    #[serde(skip)]
    mask: Vec<bool>,
    /// Linear indices of inside cells, ascending.
    #[serde(skip)]
    inside: Vec<u32>,
    /// Map linear index -> position in `inside`, or -1 for outside cells.
    #[serde(skip)]
    inside_of: Vec<i32>,
}

impl GridDomain {
    /// Assemble a domain from an explicit mask.  Validates dimensions and
    /// builds the inside-cell index tables.  An all-outside mask is
    /// permitted here; constructors that promise a usable domain check
    /// non-emptiness themselves.
    pub fn from_parts(
        n: usize,
        origin: [f64; 3],
        shape: [usize; 3],
        h: f64,
        mask: Vec<bool>,
    ) -> Result<Self> {
        if n != 2 && n != 3 {
            return Err(Error::Parameter(format!("dimension must be 2 or 3, got {n}")));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Parameter(format!("cell size must be positive, got {h}")));
        }
        if shape[0] == 0 || shape[1] == 0 || shape[2] == 0 {
            return Err(Error::Parameter(format!("degenerate grid shape {shape:?}")));
        }
        if n == 2 && shape[2] != 1 {
            return Err(Error::Parameter(format!(
                "2-D grids must have shape[2] == 1, got {}",
                shape[2]
            )));
        }
        if origin.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parameter(format!("non-finite grid origin {origin:?}")));
        }
        let total = shape[0]
            .checked_mul(shape[1])
            .and_then(|v| v.checked_mul(shape[2]))
            .ok_or_else(|| Error::Parameter(format!("grid shape {shape:?} overflows")))?;
        if mask.len() != total {
            return Err(Error::Parameter(format!(
                "mask length {} does not match shape {:?} (= {} cells)",
                mask.len(),
                shape,
                total
            )));
        }
        if total > u32::MAX as usize {
            return Err(Error::Parameter(format!("grid of {total} cells exceeds index range")));
        }
        let mut inside = Vec::new();
        let mut inside_of = vec![-1i32; total];
        for (lin, &m) in mask.iter().enumerate() {
            if m {
                inside_of[lin] = inside.len() as i32;
                inside.push(lin as u32);
            }
        }
        Ok(Self { n, shape, origin, h, mask, inside, inside_of })
    }

    /// Build a domain by sampling `pred` at every cell center of the
    /// lattice described by `origin`/`shape`/`h`.
    pub fn from_predicate(
        n: usize,
        origin: [f64; 3],
        shape: [usize; 3],
        h: f64,
        pred: impl Fn(&[f64; 3]) -> bool,
    ) -> Result<Self> {
        let probe = Self::from_parts(n, origin, shape, h, vec![false; shape[0] * shape[1] * shape[2]])?;
        let mut mask = vec![false; probe.mask.len()];
        for lin in 0..mask.len() {
            mask[lin] = pred(&probe.center_of_linear(lin as u32));
        }
        Self::from_parts(n, origin, shape, h, mask)
    }

    /// New domain on the identical lattice whose mask is this mask
    /// intersected with `pred` at cell centers.
    pub fn shrink_by(&self, pred: impl Fn(&[f64; 3]) -> bool) -> Result<Self> {
        let mut mask = self.mask.clone();
        for (lin, m) in mask.iter_mut().enumerate() {
            if *m {
                *m = pred(&self.center_of_linear(lin as u32));
            }
        }
        Self::from_parts(self.n, self.origin, self.shape, self.h, mask)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    /// Linear indices of the inside cells, ascending.
    pub fn inside_cells(&self) -> &[u32] {
        &self.inside
    }

    pub fn inside_count(&self) -> usize {
        self.inside.len()
    }

    /// Lebesgue measure represented by the mask: `#inside * h^n`.
    pub fn measure(&self) -> f64 {
        self.inside.len() as f64 * self.h.powi(self.n as i32)
    }

    /// Position of `linear` in the inside-cell ordering, if inside.
    pub fn inside_index(&self, linear: u32) -> Option<usize> {
        let v = *self.inside_of.get(linear as usize)?;
        (v >= 0).then_some(v as usize)
    }

    pub fn is_inside_linear(&self, linear: u32) -> bool {
        self.mask.get(linear as usize).copied().unwrap_or(false)
    }

    pub fn linear_of(&self, idx: [usize; 3]) -> u32 {
        ((idx[2] * self.shape[1] + idx[1]) * self.shape[0] + idx[0]) as u32
    }

    pub fn idx_of_linear(&self, linear: u32) -> [usize; 3] {
        let lin = linear as usize;
        let i = lin % self.shape[0];
        let rest = lin / self.shape[0];
        [i, rest % self.shape[1], rest / self.shape[1]]
    }

    /// Center coordinates of the cell with integer index `idx`.
    pub fn center(&self, idx: [usize; 3]) -> [f64; 3] {
        let mut c = [0.0; 3];
        for a in 0..self.n {
            c[a] = self.origin[a] + (idx[a] as f64 + 0.5) * self.h;
        }
        c
    }

    pub fn center_of_linear(&self, linear: u32) -> [f64; 3] {
        self.center(self.idx_of_linear(linear))
    }

    /// Integer index of the cell containing `p`, or None outside the
    /// lattice bounds.  Points exactly on the upper lattice boundary
    /// fall outside.
    pub fn cell_at(&self, p: &[f64; 3]) -> Option<[usize; 3]> {
        let mut idx = [0usize; 3];
        for a in 0..self.n {
            let t = (p[a] - self.origin[a]) / self.h;
            if !(t >= 0.0) {
                return None;
            }
            let i = t.floor() as usize;
            if i >= self.shape[a] {
                return None;
            }
            idx[a] = i;
        }
        Some(idx)
    }

    /// Whether `p` lies in a cell whose center is inside the domain.
    pub fn contains_point(&self, p: &[f64; 3]) -> bool {
        match self.cell_at(p) {
            Some(idx) => self.mask[self.linear_of(idx) as usize],
            None => false,
        }
    }

    /// Same lattice: dimension, shape, origin, and cell size all agree.
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.n == other.n
            && self.shape == other.shape
            && self.h == other.h
            && (0..self.n).all(|a| (self.origin[a] - other.origin[a]).abs() <= 1e-12 * self.h)
    }

    /// Whether every inside cell of `self` is inside `other` (requires
    /// the same lattice).
    pub fn subset_of(&self, other: &Self) -> bool {
        self.same_lattice(other) && self.inside.iter().all(|&lin| other.mask[lin as usize])
    }

    /// Diagonal of the bounding box of inside cells, measured over the
    /// full cell extents (centers padded by h/2 on each side).  Zero
    /// inside cells give 0.
    pub fn diameter(&self) -> f64 {
        if self.inside.is_empty() {
            return 0.0;
        }
        let mut lo = [usize::MAX; 3];
        let mut hi = [0usize; 3];
        for &lin in &self.inside {
            let idx = self.idx_of_linear(lin);
            for a in 0..self.n {
                lo[a] = lo[a].min(idx[a]);
                hi[a] = hi[a].max(idx[a]);
            }
        }
        let mut sq = 0.0;
        for a in 0..self.n {
            let side = (hi[a] - lo[a] + 1) as f64 * self.h;
            sq += side * side;
        }
        sq.sqrt()
    }

    /// Whether the inside cells form one face-connected component.
    /// Vacuously true when empty.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.inside.first() else {
            return true;
        };
        let mut seen = vec![false; self.mask.len()];
        let mut queue = VecDeque::new();
        seen[start as usize] = true;
        queue.push_back(start);
        let mut visited = 1usize;
        while let Some(lin) = queue.pop_front() {
            let idx = self.idx_of_linear(lin);
            for a in 0..self.n {
                for step in [-1isize, 1] {
                    let v = idx[a] as isize + step;
                    if v < 0 || v as usize >= self.shape[a] {
                        continue;
                    }
                    let mut nb = idx;
                    nb[a] = v as usize;
                    let nlin = self.linear_of(nb) as usize;
                    if self.mask[nlin] && !seen[nlin] {
                        seen[nlin] = true;
                        visited += 1;
                        queue.push_back(nlin as u32);
                    }
                }
            }
        }
        visited == self.inside.len()
    }

    /// Exact Euclidean distance from each inside cell center to the
    /// complement of the domain, in physical units.  The complement
    /// includes outside-mask cells and everything beyond the lattice
    /// bounds (a virtual ring of outside cells), so cells hugging the
    /// bounding box report ~h rather than infinity.  Returns one value
    /// per inside cell, aligned with `inside_cells()`.
    ///
    /// Uses the exact lower-envelope-of-parabolas transform applied
    /// separately along each axis on a padded copy of the mask.
    pub fn distance_to_complement(&self) -> Vec<f64> {
        // Large finite stand-in for "no source yet"; any real squared
        // distance on the padded lattice is far below this.
        const FAR: f64 = 1e18;
        let ps = [
            self.shape[0] + 2,
            self.shape[1] + 2,
            if self.n == 3 { self.shape[2] + 2 } else { 1 },
        ];
        let p_lin = |i: usize, j: usize, k: usize| (k * ps[1] + j) * ps[0] + i;
        let mut d = vec![0.0f64; ps[0] * ps[1] * ps[2]];
        for k in 0..ps[2] {
            for j in 0..ps[1] {
                for i in 0..ps[0] {
                    let interior = i >= 1
                        && i <= self.shape[0]
                        && j >= 1
                        && j <= self.shape[1]
                        && (self.n == 2 || (k >= 1 && k <= self.shape[2]));
                    let inside = interior && {
                        let kk = if self.n == 3 { k - 1 } else { 0 };
                        self.mask[self.linear_of([i - 1, j - 1, kk]) as usize]
                    };
                    d[p_lin(i, j, k)] = if inside { FAR } else { 0.0 };
                }
            }
        }

        let mut f = vec![0.0f64; ps.iter().copied().max().unwrap()];
        let mut out = vec![0.0f64; f.len()];
        let mut v = vec![0usize; f.len()];
        let mut z = vec![0.0f64; f.len() + 1];

        // Axis passes: each replaces d with min over shifts along that
        // axis of (shift^2 + previous d).
        for axis in 0..self.n {
            let len = ps[axis];
            let (outer1, outer2) = match axis {
                0 => (ps[1], ps[2]),
                1 => (ps[0], ps[2]),
                _ => (ps[0], ps[1]),
            };
            for b in 0..outer2 {
                for a in 0..outer1 {
                    for t in 0..len {
                        let lin = match axis {
                            0 => p_lin(t, a, b),
                            1 => p_lin(a, t, b),
                            _ => p_lin(a, b, t),
                        };
                        f[t] = d[lin];
                    }
                    envelope_pass(&f[..len], &mut out[..len], &mut v, &mut z);
                    for t in 0..len {
                        let lin = match axis {
                            0 => p_lin(t, a, b),
                            1 => p_lin(a, t, b),
                            _ => p_lin(a, b, t),
                        };
                        d[lin] = out[t];
                    }
                }
            }
        }

        self.inside
            .iter()
            .map(|&lin| {
                let idx = self.idx_of_linear(lin);
                let k = if self.n == 3 { idx[2] + 1 } else { 0 };
                self.h * d[p_lin(idx[0] + 1, idx[1] + 1, k)].sqrt()
            })
            .collect()
    }

    /// Halve the cell size.  Each parent cell splits into 2^n children
    /// that inherit the parent's mask value, so the represented measure
    /// is preserved exactly and masks of refinements stay comparable.
    pub fn refine(&self) -> Self {
        let mut shape = [1usize; 3];
        for a in 0..self.n {
            shape[a] = self.shape[a] * 2;
        }
        let total = shape[0] * shape[1] * shape[2];
        let mut mask = vec![false; total];
        for k in 0..shape[2] {
            for j in 0..shape[1] {
                for i in 0..shape[0] {
                    let parent = self.linear_of([i / 2, j / 2, if self.n == 3 { k / 2 } else { 0 }]);
                    mask[(k * shape[1] + j) * shape[0] + i] = self.mask[parent as usize];
                }
            }
        }
        Self::from_parts(self.n, self.origin, shape, self.h / 2.0, mask)
            .expect("refinement of a valid grid is valid")
    }

    /// Serialize the lattice and mask as a small line-oriented text
    /// format (header lines, then one 0/1 row per lattice row).
    pub fn write_mask_text(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "gridmask")?;
        writeln!(w, "n {}", self.n)?;
        writeln!(w, "shape {} {} {}", self.shape[0], self.shape[1], self.shape[2])?;
        writeln!(w, "origin {} {} {}", self.origin[0], self.origin[1], self.origin[2])?;
        writeln!(w, "h {}", self.h)?;
        for k in 0..self.shape[2] {
            for j in 0..self.shape[1] {
                let mut line = String::with_capacity(self.shape[0]);
                for i in 0..self.shape[0] {
                    line.push(if self.mask[self.linear_of([i, j, k]) as usize] { '1' } else { '0' });
                }
                writeln!(w, "{line}")?;
            }
        }
        Ok(())
    }

    /// Parse the format written by [`write_mask_text`](Self::write_mask_text).
    pub fn read_mask_text(r: &mut impl BufRead) -> Result<Self> {
        let mut lines = r.lines();
        let mut next = |what: &str| -> Result<String> {
            lines
                .next()
                .transpose()?
                .ok_or_else(|| Error::Parse(format!("mask file ended before {what}")))
        };
        let magic = next("header")?;
        if magic.trim() != "gridmask" {
            return Err(Error::Parse(format!("not a gridmask file (got {magic:?})")));
        }
        let n: usize = parse_kv(&next("n")?, "n")?
            .parse()
            .map_err(|e| Error::Parse(format!("bad dimension line: {e}")))?;
        let shape_raw = next("shape")?;
        let shape_line = parse_kv(&shape_raw, "shape")?;
        let shape_vals: Vec<usize> = shape_line
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::Parse(format!("bad shape entry {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if shape_vals.len() != 3 {
            return Err(Error::Parse(format!("shape needs 3 entries, got {}", shape_vals.len())));
        }
        let origin_raw = next("origin")?;
        let origin_line = parse_kv(&origin_raw, "origin")?;
        let origin_vals: Vec<f64> = origin_line
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::Parse(format!("bad origin entry {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if origin_vals.len() != 3 {
            return Err(Error::Parse(format!("origin needs 3 entries, got {}", origin_vals.len())));
        }
        let h: f64 = parse_kv(&next("h")?, "h")?
            .parse()
            .map_err(|e| Error::Parse(format!("bad cell size line: {e}")))?;
        let shape = [shape_vals[0], shape_vals[1], shape_vals[2]];
        let origin = [origin_vals[0], origin_vals[1], origin_vals[2]];
        let mut mask = vec![false; shape[0] * shape[1] * shape[2]];
        for k in 0..shape[2] {
            for j in 0..shape[1] {
                let row = next(&format!("mask row j={j} k={k}"))?;
                let row = row.trim();
                if row.len() != shape[0] {
                    return Err(Error::Parse(format!(
                        "mask row j={j} k={k} has {} cells, expected {}",
                        row.len(),
                        shape[0]
                    )));
                }
                for (i, ch) in row.chars().enumerate() {
                    mask[(k * shape[1] + j) * shape[0] + i] = match ch {
                        '1' => true,
                        '0' => false,
                        other => {
                            return Err(Error::Parse(format!("mask cell must be 0/1, got {other:?}")))
                        }
                    };
                }
            }
        }
        Self::from_parts(n, origin, shape, h, mask)
    }
}

fn parse_kv<'a>(line: &'a str, key: &str) -> Result<&'a str> {
    let trimmed = line.trim();
    trimmed
        .strip_prefix(key)
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("expected {key:?} line, got {trimmed:?}")))
}

/// One 1-D pass of the exact squared-distance transform: given sampled
/// costs `f`, writes `out[q] = min_p ((q-p)^2 + f[p])` via the lower
/// envelope of parabolas.
fn envelope_pass(f: &[f64], out: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        let mut s;
        loop {
            let p = v[k];
            s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        out[q] = (q as f64 - p as f64).powi(2) + f[p];
    }
}

/// Axis-aligned box `[corner, corner + sides]` snapped to whole cells:
/// each side is rounded to the nearest positive cell count, and every
/// cell of the resulting lattice is inside.
pub fn make_box(n: usize, corner: &[f64], sides: &[f64], h: f64) -> Result<GridDomain> {
    if n != 2 && n != 3 {
        return Err(Error::Parameter(format!("dimension must be 2 or 3, got {n}")));
    }
    if corner.len() != n || sides.len() != n {
        return Err(Error::Parameter(format!(
            "box needs {n} corner and side entries, got {} and {}",
            corner.len(),
            sides.len()
        )));
    }
    if sides.iter().any(|&s| !(s.is_finite() && s > 0.0)) {
        return Err(Error::Parameter(format!("box sides must be positive, got {sides:?}")));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Parameter(format!("cell size must be positive, got {h}")));
    }
    let mut shape = [1usize; 3];
    let mut origin = [0.0f64; 3];
    for a in 0..n {
        shape[a] = ((sides[a] / h).round() as usize).max(1);
        origin[a] = corner[a];
    }
    let total = shape[0] * shape[1] * shape[2];
    GridDomain::from_parts(n, origin, shape, h, vec![true; total])
}
