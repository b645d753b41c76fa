//! Small shared numeric helpers: log-spaced grids, relative error,
//! log–log slope fits, and a golden-section maximizer.

/// Relative discrepancy |a − b| / max(|a|, |b|), zero when both vanish.
/// Symmetric, safe at zero, and monotone in the gap — the form every
/// tolerance check in the test suites uses.
pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// `count` points geometrically spaced over [lo, hi], endpoints included.
///
/// Panics if the range is not positive-ordered or `count < 2`; grids are
/// internal machinery and misuse is a programming error, not a run error.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(
        lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite(),
        "log_spaced needs 0 < lo < hi, got [{lo}, {hi}]"
    );
    assert!(count >= 2, "log_spaced needs at least 2 points");
    let (la, lb) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            // Pin the endpoints so callers see exactly [lo, hi].
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                let f = i as f64 / (count - 1) as f64;
                (la + f * (lb - la)).exp()
            }
        })
        .collect()
}

/// `count` points linearly spaced over [lo, hi], endpoints included.
pub fn lin_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "lin_spaced needs at least 2 points");
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Least-squares slope of ln y against ln x.
///
/// All inputs must be strictly positive; the caller guarantees that
/// (slope fits are only ever run on values of strictly increasing
/// positive functions).
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "slope fit needs at least two points");
    let n = xs.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        debug_assert!(x > 0.0 && y > 0.0, "loglog_slope needs positive data");
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// Returns (argmax, max). `iters` shrinks the bracket by 0.618 per step.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
