//! One function per subcommand: resolve settings, run the library,
//! return the report as both a CSV table and a JSON value.

use orlicz_lab::experiments::{
    exhaustion_experiment, farfield_bump_counterexample, mushroom_counterexample,
    poincare_sweep, sjohn_exponent_table, DomainSpec, ExhaustionField, TestFamily,
};
use orlicz_lab::geometry::{MushroomSpec, Prototype};
use orlicz_lab::orlicz::{
    hedberg_constant, hedberg_sum_check, john_constants, OrliczH, PhiSpec, PsiFunction,
};
use orlicz_lab::potentials::{pointwise_estimate_experiment, PointwiseParams, PointwiseReport};
use orlicz_lab::numerics::log_spaced;
use orlicz_lab::report::{fmt, CsvDoc};
use orlicz_lab::{Error, Result};

use crate::config::{parse_f64_list, Resolver};
use crate::{
    CounterexampleArgs, ExhaustionArgs, HFunctionArgs, HedbergArgs, JohnArgs, PointwiseArgs,
    PoincareArgs, SJohnArgs,
};

/// What a subcommand hands back to `main` for rendering.
pub struct CommandOutput {
    /// Resolved (key, value) settings, sorted — echoed into the report.
    pub echo: Vec<(String, String)>,
    pub csv: CsvDoc,
    pub json: serde_json::Value,
}

fn to_json<T: serde::Serialize>(report: &T) -> Result<serde_json::Value> {
    serde_json::to_value(report)
        .map_err(|e| Error::Numeric(format!("report serialization failed: {e}")))
}

#[derive(serde::Serialize)]
struct HFunctionRow {
    t: f64,
    f_inv: f64,
    /// Relative error of H(F⁻¹(t)) against t — a round-trip self-check.
    round_trip_rel_err: f64,
    /// F⁻¹(t)·(H*)⁻¹(t)/t; sandwiched in [1, 2] for an N-function pair.
    conjugate_product: f64,
}

#[derive(serde::Serialize)]
struct HFunctionReport {
    phi: String,
    n: u32,
    p: f64,
    scale: f64,
    knot_value: f64,
    small_t_exponent: f64,
    large_t_exponent: Option<f64>,
    doubling_constant: f64,
    rows: Vec<HFunctionRow>,
}

pub fn h_function(a: HFunctionArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let phi_text = r.get("phi", a.phi, "power:1".to_string())?;
    let n = r.get("dim", a.dim, 2u32)?;
    let p = r.get("p", a.p, 1.0)?;
    let scale = r.get("scale", a.scale, 1.0)?;
    let t_min = r.get("t-min", a.t_min, 1e-3)?;
    let t_max = r.get("t-max", a.t_max, 1e3)?;
    let points = r.get("points", a.points, 25usize)?;

    let phi = PhiSpec::parse(&phi_text)?;
    let h_fn = OrliczH::with_scale(PsiFunction::new(phi), n, p, scale)?;
    if !(t_min.is_finite() && t_min > 0.0 && t_max > t_min) {
        return Err(Error::Parameter(format!(
            "need 0 < t-min < t-max, got {t_min} and {t_max}"
        )));
    }
    if points < 2 {
        return Err(Error::Parameter(format!("need at least 2 points, got {points}")));
    }

    let mut rows = Vec::with_capacity(points);
    for t in log_spaced(t_min, t_max, points) {
        let f_inv = h_fn.eval_f_inv(t)?;
        let back = h_fn.eval_h(f_inv)?;
        let conj_inv = h_fn.conjugate_inv(t)?;
        rows.push(HFunctionRow {
            t,
            f_inv,
            round_trip_rel_err: (back - t).abs() / t,
            conjugate_product: f_inv * conj_inv / t,
        });
    }
    let knot_value = scale * h_fn.psi().phi_at_one().powi(1 - n as i32);
    let report = HFunctionReport {
        phi: phi.label(),
        n,
        p,
        scale,
        knot_value,
        small_t_exponent: h_fn.small_t_exponent(),
        large_t_exponent: h_fn.large_t_exponent(),
        doubling_constant: h_fn.doubling_constant(),
        rows,
    };

    let mut csv = CsvDoc::new(["t", "f_inv", "round_trip_rel_err", "conjugate_product"]);
    csv.push_meta("phi", &report.phi);
    csv.push_meta("n", report.n);
    csv.push_meta("p", report.p);
    csv.push_meta("scale", report.scale);
    csv.push_meta("knot_value", fmt(report.knot_value));
    csv.push_meta("small_t_exponent", fmt(report.small_t_exponent));
    match report.large_t_exponent {
        Some(q) => csv.push_meta("large_t_exponent", fmt(q)),
        None => csv.push_meta("large_t_exponent", "none (log-corrected branch)"),
    }
    csv.push_meta("doubling_constant", fmt(report.doubling_constant));
    for row in &report.rows {
        csv.push_row([
            fmt(row.t),
            fmt(row.f_inv),
            fmt(row.round_trip_rel_err),
            fmt(row.conjugate_product),
        ]);
    }
    Ok(CommandOutput { echo: r.into_echo(), csv, json: to_json(&report)? })
}

#[derive(serde::Serialize)]
struct JohnRow {
    diam: f64,
    alpha: f64,
    beta: f64,
    ratio_bound: f64,
}

#[derive(serde::Serialize)]
struct JohnReport {
    phi: String,
    cigar: f64,
    asymptotic_ratio: f64,
    rows: Vec<JohnRow>,
}

pub fn john(a: JohnArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let phi_text = r.get("phi", a.phi, "power:1".to_string())?;
    let cigar = r.get("cigar", a.cigar, 2.0)?;
    let diams_text = r.get("diams", a.diams, "1".to_string())?;

    let phi = PhiSpec::parse(&phi_text)?;
    let diams = parse_f64_list(&diams_text)?;
    if diams.is_empty() {
        return Err(Error::Parameter("need at least one diameter".into()));
    }
    let mut rows = Vec::with_capacity(diams.len());
    let mut asymptotic = 0.0;
    for &d in &diams {
        let jc = john_constants(&phi, cigar, d)?;
        asymptotic = jc.asymptotic_ratio;
        rows.push(JohnRow { diam: d, alpha: jc.alpha, beta: jc.beta, ratio_bound: jc.ratio_bound });
    }
    let report = JohnReport { phi: phi.label(), cigar, asymptotic_ratio: asymptotic, rows };

    let mut csv = CsvDoc::new(["diam", "alpha", "beta", "ratio_bound"]);
    csv.push_meta("phi", &report.phi);
    csv.push_meta("cigar", report.cigar);
    csv.push_meta("asymptotic_ratio", fmt(report.asymptotic_ratio));
    for row in &report.rows {
        csv.push_row([fmt(row.diam), fmt(row.alpha), fmt(row.beta), fmt(row.ratio_bound)]);
    }
    Ok(CommandOutput { echo: r.into_echo(), csv, json: to_json(&report)? })
}

#[derive(serde::Serialize)]
struct HedbergReport {
    phi: String,
    n: u32,
    alpha: f64,
    constant: f64,
    terms: u32,
    all_ok: bool,
    rows: Vec<orlicz_lab::orlicz::HedbergRow>,
}

pub fn hedberg(a: HedbergArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let phi_text = r.get("phi", a.phi, "power:1".to_string())?;
    let n = r.get("dim", a.dim, 2u32)?;
    let alpha = r.get("alpha", a.alpha, 1.0)?;
    let t_min = r.get("t-min", a.t_min, 1e-2)?;
    let t_max = r.get("t-max", a.t_max, 1e2)?;
    let points = r.get("points", a.points, 13usize)?;
    let terms = r.get("terms", a.terms, 40u32)?;

    let phi = PhiSpec::parse(&phi_text)?;
    if !(t_min.is_finite() && t_min > 0.0 && t_max > t_min) {
        return Err(Error::Parameter(format!(
            "need 0 < t-min < t-max, got {t_min} and {t_max}"
        )));
    }
    if points < 2 {
        return Err(Error::Parameter(format!("need at least 2 points, got {points}")));
    }
    let constant = hedberg_constant(n, alpha)?;
    let grid = log_spaced(t_min, t_max, points);
    let rows = hedberg_sum_check(&PsiFunction::new(phi), n, alpha, &grid, terms)?;
    let all_ok = rows.iter().all(|row| row.ok);
    let report =
        HedbergReport { phi: phi.label(), n, alpha, constant, terms, all_ok, rows };

    let mut csv = CsvDoc::new(["t", "partial_sum", "bound", "ok"]);
    csv.push_meta("phi", &report.phi);
    csv.push_meta("n", report.n);
    csv.push_meta("alpha", report.alpha);
    csv.push_meta("constant", fmt(report.constant));
    csv.push_meta("terms", report.terms);
    csv.push_meta("all_ok", report.all_ok);
    for row in &report.rows {
        csv.push_row([
            fmt(row.t),
            fmt(row.partial_sum),
            fmt(row.bound),
            row.ok.to_string(),
        ]);
    }
    Ok(CommandOutput { echo: r.into_echo(), csv, json: to_json(&report)? })
}

fn pointwise_csv(report: &PointwiseReport) -> CsvDoc {
    let mut csv = CsvDoc::new(["block", "h", "trial", "bumps", "max_ratio", "argmax_cell"]);
    csv.push_meta("c_emp", fmt(report.base.c_emp));
    if let Some(refined) = &report.refined {
        csv.push_meta("c_emp_refined", fmt(refined.c_emp));
    }
    if let Some(ratio) = report.refinement_ratio {
        csv.push_meta("refinement_ratio", fmt(ratio));
    }
    for flag in &report.hypothesis_flags {
        csv.push_meta("hypothesis", flag);
    }
    let mut blocks = vec![("base", &report.base)];
    if let Some(refined) = &report.refined {
        blocks.push(("refined", refined));
    }
    for (name, block) in blocks {
        for row in &block.rows {
            csv.push_row([
                name.to_string(),
                fmt(block.h),
                row.trial.to_string(),
                row.bumps.to_string(),
                fmt(row.max_ratio),
                row.argmax_cell.to_string(),
            ]);
        }
    }
    csv
}

pub fn pointwise(a: PointwiseArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let phi_text = r.get("phi", a.phi, "power:1".to_string())?;
    let n = r.get("dim", a.dim, 2u32)?;
    let p = r.get("p", a.p, 1.0)?;
    let domain_text = r.get("domain", a.domain, "box:1,1".to_string())?;
    let h = r.get("h", a.h, 1.0 / 64.0)?;
    let trials = r.get("trials", a.trials, 20u32)?;
    let seed = r.get("seed", a.seed, 42u64)?;
    let refine = r.get("refine", a.refine, false)?;

    let phi = PhiSpec::parse(&phi_text)?;
    let spec = DomainSpec::parse(&domain_text, n as usize)?;
    let grid = spec.build(&phi, h)?;
    let h_fn = OrliczH::new(PsiFunction::new(phi), n, p)?;
    let report = pointwise_estimate_experiment(
        &grid,
        &h_fn,
        &PointwiseParams { trials, seed, refine },
    )?;

    let mut csv = pointwise_csv(&report);
    csv.prepend_meta(vec![
        ("domain".into(), spec.label()),
        ("phi".into(), phi.label()),
        ("p".into(), p.to_string()),
    ]);
    Ok(CommandOutput { echo: r.into_echo(), csv, json: to_json(&report)? })
}

pub fn poincare(a: PoincareArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let phi_text = r.get("phi", a.phi, "power:1".to_string())?;
    let n = r.get("dim", a.dim, 2u32)?;
    let p = r.get("p", a.p, 1.0)?;
    let domain_text = r.get("domain", a.domain, "box:1,1".to_string())?;
    let family_text = r.get("family", a.family, "polynomials".to_string())?;
    let resolutions_text = r.get("resolutions", a.resolutions, "0.125,0.0625".to_string())?;

    let phi = PhiSpec::parse(&phi_text)?;
    let spec = DomainSpec::parse(&domain_text, n as usize)?;
    let family = TestFamily::parse(&family_text)?;
    let resolutions = parse_f64_list(&resolutions_text)?;
    let report = poincare_sweep(&spec, &phi, p, family, &resolutions)?;
    Ok(CommandOutput { echo: r.into_echo(), csv: report.to_csv(), json: to_json(&report)? })
}

pub fn exhaustion(a: ExhaustionArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let phi_text = r.get("phi", a.phi, "power:2".to_string())?;
    let n = r.get("dim", a.dim, 2u32)?;
    let p = r.get("p", a.p, 1.0)?;
    let proto_text = r.get("prototype", a.prototype, "cusp".to_string())?;
    let scales_text = r.get("scales", a.scales, "1,2,4,8".to_string())?;
    let h = r.get("h", a.h, 1.0 / 16.0)?;
    let field_text = r.get("field", a.field, "bump:0.5".to_string())?;
    let m_max = r.get("m-max", a.m_max, 6u32)?;

    let phi = PhiSpec::parse(&phi_text)?;
    let proto = match proto_text.as_str() {
        "cusp" => Prototype::Cusp { n: n as usize, psi: PsiFunction::new(phi) },
        "mushrooms" => {
            Prototype::MushroomQuarter { spec: MushroomSpec::dyadic(n as usize, phi, m_max)? }
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown prototype `{other}` (expected cusp or mushrooms)"
            )))
        }
    };
    let scales = parse_f64_list(&scales_text)?;
    let field = ExhaustionField::parse(&field_text)?;
    let report = exhaustion_experiment(&proto, &scales, h, &phi, p, &field)?;
    Ok(CommandOutput { echo: r.into_echo(), csv: report.to_csv(), json: to_json(&report)? })
}

pub fn sjohn_table(a: SJohnArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let n = r.get("dim", a.dim, 2u32)?;
    let s_text = r.get("s-list", a.s_list, "1,1.5,2,3".to_string())?;
    let p_text = r.get("p-list", a.p_list, "1,1.2,1.5".to_string())?;

    let s_list = parse_f64_list(&s_text)?;
    let p_list = parse_f64_list(&p_text)?;
    let report = sjohn_exponent_table(n as usize, &s_list, &p_list)?;
    Ok(CommandOutput { echo: r.into_echo(), csv: report.to_csv(), json: to_json(&report)? })
}

pub fn counterexample(a: CounterexampleArgs, mut r: Resolver<'_>) -> Result<CommandOutput> {
    let kind = r.get("kind", a.kind, "mushroom".to_string())?;
    match kind.as_str() {
        "mushroom" => {
            let phi_text = r.get("phi", a.phi, "power:2".to_string())?;
            let n = r.get("dim", a.dim, 2u32)?;
            let p = r.get("p", a.p, 1.0)?;
            let q = r.get("q", a.q, 2.0)?;
            let m_max = r.get("m-max", a.m_max, 6u32)?;
            let phi = PhiSpec::parse(&phi_text)?;
            let spec = MushroomSpec::dyadic(n as usize, phi, m_max)?;
            let report = mushroom_counterexample(&spec, p, q)?;
            Ok(CommandOutput { echo: r.into_echo(), csv: report.to_csv(), json: to_json(&report)? })
        }
        "farfield" => {
            let n = r.get("dim", a.dim, 2u32)?;
            let p = r.get("p", a.p, 1.0)?;
            let q = r.get("q", a.q, 2.0)?;
            let scales_text = r.get("scales", a.scales, "1,2,4,8,16".to_string())?;
            let scales = parse_f64_list(&scales_text)?;
            let report = farfield_bump_counterexample(n as usize, p, q, &scales)?;
            Ok(CommandOutput { echo: r.into_echo(), csv: report.to_csv(), json: to_json(&report)? })
        }
        other => Err(Error::Parse(format!(
            "unknown counterexample kind `{other}` (expected mushroom or farfield)"
        ))),
    }
}
