//! Acceptance checklist for the workspace: twelve numbered criteria,
//! one test each.  Every test prints a single line
//!
//! ```text
//! [criterion NN] PASS: <what was measured, against what tolerance>
//! ```
//!
//! (visible with `cargo test --test acceptance -- --nocapture`); on
//! failure the same line lands in the panic message.  Tolerances are
//! pinned next to the checks they guard, not shared through constants,
//! so each criterion reads as a self-contained contract.

use std::process::Command;
use std::sync::Arc;

use orlicz_lab::experiments::{
    exhaustion_experiment, farfield_bump_counterexample, mushroom_counterexample, poincare_ratio,
    ExhaustionField,
};
use orlicz_lab::fields::{luxemburg_norm, ScalarField};
use orlicz_lab::geometry::{make_box, MushroomSpec, Prototype};
use orlicz_lab::numerics::{log_spaced, loglog_slope, rel_err};
use orlicz_lab::orlicz::{default_probe_grid, hedberg_sum_check, OrliczH, PhiSpec, PsiFunction};
use orlicz_lab::potentials::{pointwise_estimate_experiment, riesz_potential, PointwiseParams};

fn verdict(criterion: u32, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let line = format!("[criterion {criterion:02}] {tag}: {detail}");
    println!("{line}");
    assert!(ok, "{line}");
}

fn power_h(n: u32, p: f64, s: f64) -> OrliczH {
    OrliczH::new(PsiFunction::new(PhiSpec::power(s).expect("valid power profile")), n, p)
        .expect("valid H instance")
}

/// The four (n, p, s) parameter sets shared by the branch-exponent and
/// doubling checks.
const BRANCH_SETS: [(u32, f64, f64); 4] =
    [(2, 1.0, 1.2), (2, 1.0, 1.4), (3, 1.0, 1.3), (3, 2.0, 1.2)];

#[test]
fn criterion_01_quadratic_closed_form() {
    // n = 2, p = 1, φ(t) = t collapses H to exactly t².
    let h = power_h(2, 1.0, 1.0);
    let mut worst = 0.0f64;
    for t in log_spaced(1e-4, 1e4, 50) {
        worst = worst.max(rel_err(h.eval_h(t).expect("finite"), t * t));
    }
    verdict(
        1,
        worst <= 1e-10,
        &format!(
            "H(t) = t² for (n, p, φ) = (2, 1, t): max rel err {worst:.3e} ≤ 1e-10 \
             over 50 log-spaced t in [1e-4, 1e4]"
        ),
    );
}

#[test]
fn criterion_02_branch_exponents_match_closed_forms() {
    // Measured log-log slopes of F⁻¹ on each side of the knot must
    // match (n−p)/(np) below and (n − np + sp(n−1))/(np) above.
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for &(n, p, s) in &BRANCH_SETS {
        let h = power_h(n, p, s);
        let nf = f64::from(n);
        let small = (nf - p) / (nf * p);
        let large = (nf - nf * p + s * p * (nf - 1.0)) / (nf * p);
        for (lo, hi, expect) in [(1e-6, 1e-3, small), (1e3, 1e6, large)] {
            let ts = log_spaced(lo, hi, 16);
            let ys: Vec<f64> =
                ts.iter().map(|&t| h.eval_f_inv(t).expect("finite")).collect();
            let slope = loglog_slope(&ts, &ys);
            worst = worst.max((slope - expect).abs());
            checked += 1;
        }
    }
    verdict(
        2,
        worst <= 1e-3,
        &format!(
            "log-log slopes of F⁻¹ match both branch exponents on 4 (n, p, s) sets \
             ({checked} windows): worst |slope − exact| = {worst:.3e} ≤ 1e-3"
        ),
    );
}

#[test]
fn criterion_03_doubling_with_explicit_constant() {
    // H(2t) ≤ 2^{np/(n−p)} H(t) everywhere; only roundoff slack is
    // allowed because the piecewise exponents never exceed np/(n−p).
    let mut violations = 0usize;
    let mut checked = 0usize;
    for &(n, p, s) in &BRANCH_SETS {
        let h = power_h(n, p, s);
        let nf = f64::from(n);
        let c = 2.0f64.powf(nf * p / (nf - p));
        for &t in &default_probe_grid() {
            checked += 1;
            let lhs = h.eval_h(2.0 * t).expect("finite");
            let rhs = c * h.eval_h(t).expect("finite");
            if lhs > rhs * (1.0 + 1e-12) {
                violations += 1;
            }
        }
    }
    verdict(
        3,
        violations == 0,
        &format!(
            "H(2t) ≤ 2^{{np/(n−p)}}·H(t) at {checked} probe points across 4 instances \
             (roundoff slack 1e-12): {violations} violations"
        ),
    );
}

#[test]
fn criterion_04_dyadic_sums_stay_below_the_bound() {
    // Truncated sums Σ_{k≤60} (2^{−k}t)ⁿ/ψ(2^{−k}t)^{n−1} against
    // C(n, α)·tⁿ/ψ(t)^{n−1}, n = 2, ψ(t) = t, five α values.
    let psi = PsiFunction::new(PhiSpec::power(1.0).expect("valid"));
    let ts = log_spaced(1e-3, 1e3, 20);
    let mut bad = 0usize;
    let mut pairs = 0usize;
    let mut linear_gap = 0.0f64;
    for alpha in [1.0, 1.2, 1.4, 1.6, 1.8] {
        let rows = hedberg_sum_check(&psi, 2, alpha, &ts, 60).expect("valid parameters");
        pairs += rows.len();
        bad += rows.iter().filter(|r| !r.ok).count();
        if alpha == 1.0 {
            // Here the sum telescopes to t(1 − 2⁻⁶⁰) and the bound is
            // exactly t, so the two must agree to roundoff.
            for r in &rows {
                linear_gap = linear_gap.max((r.partial_sum - r.bound).abs() / r.bound);
            }
        }
    }
    verdict(
        4,
        bad == 0 && linear_gap <= 1e-12,
        &format!(
            "truncated dyadic sums (K = 60) ≤ C(n, α)·tⁿ/ψ(t)^{{n−1}} at {pairs} (t, α) \
             pairs: {bad} violations; ψ(t) = t saturates its bound within \
             {linear_gap:.2e} ≤ 1e-12"
        ),
    );
}

#[test]
fn criterion_05_unit_function_norm_identity() {
    // ‖1‖_{L^H(D)} · H⁻¹(1/|D|) = 1 on boxes of measure 1/4, 1, 4 for
    // three different H.
    let h = 1.0 / 16.0;
    let instances = [
        power_h(2, 1.0, 1.0),
        power_h(2, 1.3, 1.5),
        OrliczH::new(
            PsiFunction::new(PhiSpec::power_log(1.0, 1.0).expect("valid profile")),
            2,
            1.5,
        )
        .expect("valid H instance"),
    ];
    let mut worst = 0.0f64;
    for side in [0.5, 1.0, 2.0] {
        let domain =
            Arc::new(make_box(2, &[0.0, 0.0], &[side, side], h).expect("valid box"));
        let one = ScalarField::constant(domain.clone(), 1.0).expect("constant field");
        for inst in &instances {
            let lam = luxemburg_norm(&one, inst).expect("norm converges");
            let product =
                lam * inst.eval_f_inv(1.0 / domain.measure()).expect("finite");
            worst = worst.max((product - 1.0).abs());
        }
    }
    verdict(
        5,
        worst <= 1e-6,
        &format!(
            "‖1‖·H⁻¹(1/|D|) = 1 on measures 1/4, 1, 4 for three H instances: \
             worst |product − 1| = {worst:.2e} ≤ 1e-6"
        ),
    );
}

#[test]
fn criterion_06_conjugate_product_brackets() {
    // F⁻¹(t)·(H*)⁻¹(t)/t sits in [1, 2] for any N-function; the pure
    // quadratic must show it within 1e-3, log-corrected profiles are
    // held to the looser [1/4, 4] window.
    let ts = [0.1, 1.0, 10.0];
    let pure = power_h(2, 1.0, 1.0);
    let mut pure_ok = true;
    let mut pure_products = Vec::new();
    for &t in &ts {
        let product = pure.eval_f_inv(t).expect("finite")
            * pure.conjugate_inv(t).expect("finite")
            / t;
        pure_products.push(format!("{product:.6}"));
        if !(1.0 - 1e-3..=2.0 + 1e-3).contains(&product) {
            pure_ok = false;
        }
    }
    let corrected = [
        OrliczH::new(
            PsiFunction::new(PhiSpec::power_log(1.0, 1.0).expect("valid profile")),
            2,
            1.0,
        )
        .expect("valid H instance"),
        OrliczH::new(
            PsiFunction::new(PhiSpec::power_log(1.5, 2.0).expect("valid profile")),
            3,
            1.2,
        )
        .expect("valid H instance"),
    ];
    let mut corrected_ok = true;
    for inst in &corrected {
        for &t in &ts {
            let product = inst.eval_f_inv(t).expect("finite")
                * inst.conjugate_inv(t).expect("finite")
                / t;
            if !(0.25..=4.0).contains(&product) {
                corrected_ok = false;
            }
        }
    }
    verdict(
        6,
        pure_ok && corrected_ok,
        &format!(
            "F⁻¹(t)·(H*)⁻¹(t)/t ∈ [1, 2] (±1e-3) for the pure quadratic at t ∈ \
             {{0.1, 1, 10}} (got {}), and ∈ [1/4, 4] for two log-corrected instances",
            pure_products.join(", ")
        ),
    );
}

#[test]
fn criterion_07_ball_indicator_potential_converges() {
    // f = 1_{B(0, 1/2)}, ψ(r) = r: the potential at the center is
    // exactly 2πR = π.  Odd cell counts put the center on a cell
    // center; the error must shrink from ≤ 2% at h = R/64 to ≤ 1% at
    // h = R/128.
    let psi = PsiFunction::new(PhiSpec::power(1.0).expect("valid"));
    let radius = 0.5f64;
    let exact = 2.0 * std::f64::consts::PI * radius;
    let mut all_ok = true;
    let mut parts = Vec::new();
    for (half_cells, tol) in [(64usize, 0.02f64), (128, 0.01)] {
        let h = radius / half_cells as f64;
        let side = (2 * half_cells + 1) as f64 * h;
        let corner = -side / 2.0;
        let domain = Arc::new(
            make_box(2, &[corner, corner], &[side, side], h).expect("valid box"),
        );
        let f = ScalarField::from_fn(domain.clone(), |x| {
            if x[0].hypot(x[1]) <= radius {
                1.0
            } else {
                0.0
            }
        })
        .expect("indicator field");
        let center = domain.cell_at(&[0.0, 0.0, 0.0]).expect("center cell");
        let lin = domain.linear_of(center);
        let result =
            riesz_potential(&f, &psi, Some(&[lin]), false).expect("potential evaluates");
        let value = result.field.values()[domain.inside_index(lin).expect("inside")];
        let err = rel_err(value, exact);
        if err > tol {
            all_ok = false;
        }
        parts.push(format!("h = R/{half_cells}: rel err {err:.4} ≤ {tol}"));
    }
    verdict(
        7,
        all_ok,
        &format!("I(center) vs 2πR = {exact:.6}: {}", parts.join("; ")),
    );
}

#[test]
fn criterion_08_random_field_constant_is_stable() {
    // 50 seeded random fields on the unit square, h = 1/64: the
    // empirical constant must be finite and move by at most a factor
    // of 2 under one refinement.
    let domain = Arc::new(
        make_box(2, &[0.0, 0.0], &[1.0, 1.0], 1.0 / 64.0).expect("valid box"),
    );
    let h_fn = power_h(2, 1.0, 1.0);
    let params = PointwiseParams { trials: 50, seed: 42, refine: true };
    let report =
        pointwise_estimate_experiment(&domain, &h_fn, &params).expect("experiment runs");
    let c = report.base.c_emp;
    let ratio = report.refinement_ratio.expect("refined block present");
    verdict(
        8,
        c.is_finite() && c > 0.0 && (0.5..=2.0).contains(&ratio),
        &format!(
            "50 seeded fields at h = 1/64: c_emp = {c:.4} (finite, positive), \
             c_emp(h/2)/c_emp(h) = {ratio:.4} ∈ [1/2, 2]"
        ),
    );
}

#[test]
fn criterion_09_linear_function_ratio() {
    // u = x₀ on the unit square with H(t) = t², p = 1: the
    // norm-to-gradient ratio equals (1/12)^{1/2}.
    let domain = Arc::new(
        make_box(2, &[0.0, 0.0], &[1.0, 1.0], 1.0 / 128.0).expect("valid box"),
    );
    let u = ScalarField::from_fn(domain, |x| x[0]).expect("coordinate field");
    let result = poincare_ratio(&u, &PhiSpec::power(1.0).expect("valid"), 1.0)
        .expect("ratio defined");
    let expect = (1.0f64 / 12.0).sqrt();
    let err = (result.ratio - expect).abs();
    verdict(
        9,
        err <= 1e-2,
        &format!(
            "u = x₀, H(t) = t², p = 1 at h = 1/128: ratio {:.6} vs (1/12)^{{1/2}} = \
             {expect:.6}, |Δ| = {err:.2e} ≤ 1e-2",
            result.ratio
        ),
    );
}

#[test]
fn criterion_10_counterexample_growth_rates() {
    // Steep necks (φ(t) = t²) make the witness's target norm grow ×4
    // per halving at q = 2 while its gradient energy stays at 1; the
    // far-field witness diverges for q < np/(n−p) with the exact
    // closed-form exponent.  Linear necks (φ(t) = t) and q at the
    // threshold must stay bounded.
    let steep = MushroomSpec::dyadic(2, PhiSpec::power(2.0).expect("valid"), 12)
        .expect("valid decoration ladder");
    let steep_run = mushroom_counterexample(&steep, 1.0, 2.0).expect("witness evaluates");
    let growth_ok =
        steep_run.growth_factors.iter().all(|g| (g - 4.0).abs() <= 4.0 * 1e-12);
    let two_step_ok = steep_run
        .rows
        .windows(3)
        .all(|w| w[2].lower_bound / w[0].lower_bound >= 10.0);
    let grad_ok = steep_run.rows.iter().all(|r| (r.grad_norm_p - 1.0).abs() <= 1e-12);

    let flat = MushroomSpec::dyadic(2, PhiSpec::power(1.0).expect("valid"), 12)
        .expect("valid decoration ladder");
    let flat_run = mushroom_counterexample(&flat, 1.0, 2.0).expect("witness evaluates");
    let flat_ok = !flat_run.diverges
        && flat_run.growth_factors.iter().all(|g| (g - 1.0).abs() <= 1e-12);

    let scales = [1.0, 2.0, 4.0, 8.0, 16.0];
    let far = farfield_bump_counterexample(2, 1.0, 1.9, &scales).expect("witness evaluates");
    let far_ok = (far.exponent - 0.1).abs() <= 1e-12
        && far.diverges
        && (far.fitted_exponent - far.exponent).abs() <= 1e-9;
    let edge = farfield_bump_counterexample(2, 1.0, 2.0, &scales).expect("witness evaluates");
    let edge_ok = edge.exponent.abs() <= 1e-12 && !edge.diverges;

    verdict(
        10,
        steep_run.diverges && growth_ok && two_step_ok && grad_ok && flat_ok && far_ok && edge_ok,
        &format!(
            "steep necks: ×{:.1} per halving (≥ ×10 over two steps) at unit gradient \
             energy; linear necks bounded; far field: exponent {:.3} > 0 at q = 1.9 \
             (fitted {:.6}), 0 at the threshold q = 2",
            steep_run.growth_factors[0], far.exponent, far.fitted_exponent
        ),
    );
}

#[test]
fn criterion_11_exhaustion_averages_stabilize() {
    // A fixed compactly-supported bump on a growing cusp family: the
    // domain averages must decay monotonically and the norm-to-gradient
    // ratios must stay within a factor of 2 of each other.
    let phi = PhiSpec::power(2.0).expect("valid");
    let proto = Prototype::Cusp { n: 2, psi: PsiFunction::new(phi) };
    let field = ExhaustionField::parse("bump:0.5").expect("valid field");
    let report =
        exhaustion_experiment(&proto, &[1.0, 2.0, 4.0, 8.0], 1.0 / 16.0, &phi, 1.0, &field)
            .expect("experiment runs");
    verdict(
        11,
        report.averages_decay && report.ratio_spread < 2.0,
        &format!(
            "cusp exhaustion at scales 1, 2, 4, 8: averages decay = {}, ratio spread \
             {:.4} < 2",
            report.averages_decay, report.ratio_spread
        ),
    );
}

#[test]
fn criterion_12_seeded_runs_are_byte_identical() {
    // Two invocations of the binary with the same seed must emit
    // byte-for-byte identical reports.
    let args =
        ["pointwise", "--h", "0.03125", "--trials", "5", "--seed", "42", "--refine"];
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_orlicz-lab"))
            .args(args)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "pointwise run failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    verdict(
        12,
        first == second && !first.is_empty(),
        &format!(
            "two `pointwise --seed 42` invocations agree byte-for-byte \
             ({} bytes of CSV)",
            first.len()
        ),
    );
}
