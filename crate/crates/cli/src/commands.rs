//! Execution of validated requests. Each command yields an [`Artifact`]
//! holding both renderings plus the precision metadata.

use crate::args::{
    BellArgs, Command, InterlaceArgs, KeiperArgs, KeiperRoute, LinkArgs, RhscanArgs, Sequence, SumruleArgs,
    TranslateArgs, ZerosArgs,
};
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use zetarules::bell_expansion::{link3_reports, link_csv, series_from_sigma, sigma_cross_relations, LinkInputs};
use zetarules::datasets::{cached_first_n_zeros, to_csv};
use zetarules::rh_scan::{condition_scan, lagarias_suzuki_y_star, trace_unit_contour, triplet_csv};
use zetarules::special_functions::evaluate;
use zetarules::sum_rules::{
    default_radius, keiper_identity_residuals, sigma_from_derivatives, tau_lambda_from_sigma, tau_lambda_from_zeros,
    taylor_coeffs, verify_sum_rule, zero_source, DEFAULT_RESOLUTION,
};
use zetarules::translations::{interlacing_report, translated_sigma, translation_window_search, xi_halfshift_zeros};
use zetarules::zero_finder::{count_check, scan_zeros_default, with_real_axis_zeros, zero_density, ZeroDataset};
use zetarules::{FunctionId, Result};

pub struct Artifact {
    pub csv: String,
    pub json: Value,
    pub precision: Map<String, Value>,
    /// Set by `zeros`: written with a sidecar manifest when saved to a file.
    pub dataset: Option<ZeroDataset>,
}

impl Artifact {
    fn new(csv: String, json: Value) -> Self {
        Artifact { csv, json, precision: Map::new(), dataset: None }
    }

    fn precision(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.precision.insert(key.to_string(), value.into());
        self
    }
}

pub fn run(cmd: &Command) -> Result<Artifact> {
    match cmd {
        Command::Zeros(a) => zeros(a),
        Command::Sumrule(a) => sumrule(a),
        Command::Keiper(a) => keiper(a),
        Command::Bell(a) => bell(a),
        Command::Link(a) => link(a),
        Command::Translate(a) => translate(a),
        Command::Interlace(a) => interlace(a),
        Command::Rhscan(a) => rhscan(a),
        Command::Ystar => ystar(),
    }
}

/// `d` significant digits: plain decimal for exponents −5..5, otherwise
/// scientific (`1.43019e-7`).
pub fn format_sig(x: f64, d: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..6).contains(&e) {
        let decimals = (d as i32 - 1 - e).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", d - 1)
    }
}

fn c_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// The sum rules and Keiper coefficients run over nontrivial zeros only,
/// so L₋₄ is replaced by its completed form.
fn completed(f: FunctionId) -> FunctionId {
    if f == FunctionId::L4 {
        FunctionId::L4Completed
    } else {
        f
    }
}

fn default_zero_count(f: FunctionId) -> usize {
    match zero_source(f) {
        FunctionId::TPlus | FunctionId::TMinus => 1500,
        _ => 2000,
    }
}

fn zero_set(f: FunctionId, n: usize, real_axis: bool) -> Result<ZeroDataset> {
    let line_source = zero_source(f);
    let ds = cached_first_n_zeros(line_source, n)?;
    if real_axis && line_source == FunctionId::TMinus {
        with_real_axis_zeros(&ds)
    } else {
        Ok(ds)
    }
}

fn zeros(a: &ZerosArgs) -> Result<Artifact> {
    let mut ds = match (a.n, a.range) {
        (Some(n), _) => cached_first_n_zeros(a.function, n as usize)?,
        (None, Some((lo, hi))) => scan_zeros_default(a.function, lo, hi)?,
        (None, None) => unreachable!("clap requires --n or --range"),
    };
    if a.real_axis {
        ds = with_real_axis_zeros(&ds)?;
    }
    let max_residual = ds.records.iter().map(|r| r.residual).fold(0.0, f64::max);
    let (observed, predicted) = count_check(&ds);
    let mut art = Artifact::new(to_csv(&ds), serde_json::to_value(&ds)?)
        .precision("max_residual", max_residual)
        .precision("observed_count", observed)
        .precision("smooth_count", predicted)
        .precision("warnings", ds.warnings.clone());
    art.dataset = Some(ds);
    Ok(art)
}

fn sumrule(a: &SumruleArgs) -> Result<Artifact> {
    let f = completed(a.function);
    let n = a.zeros.map_or(default_zero_count(f), |n| n as usize);
    let ds = zero_set(f, n, !a.no_real_axis)?;
    let rows = verify_sum_rule(f, &ds, a.m.clone())?;
    let d = a.digits as usize;
    let mut csv = String::from("m,lhs,rhs,diff,rhs_tail_corrected\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{:e},{}\n",
            r.m,
            format_sig(r.lhs, d),
            format_sig(r.rhs, d),
            r.diff,
            format_sig(r.rhs_tail_corrected, d)
        ));
    }
    let max_diff = rows.iter().map(|r| r.diff.abs()).fold(0.0, f64::max);
    let max_corrected = rows.iter().map(|r| (r.lhs - r.rhs_tail_corrected).abs()).fold(0.0, f64::max);
    Ok(Artifact::new(
        csv,
        json!({ "function": f, "zeros": ds.records.len(), "t_max": ds.t_max_scanned, "rows": rows }),
    )
    .precision("max_abs_diff", max_diff)
    .precision("max_abs_diff_tail_corrected", max_corrected)
    .precision("zeros_used", ds.records.len()))
}

fn keiper(a: &KeiperArgs) -> Result<Artifact> {
    let k = a.k as usize;
    let f = completed(a.function);
    let sig = sigma_from_derivatives(f, k, default_radius(f))?;
    let (r3, r4, r5) = keiper_identity_residuals(&sig);
    let coeffs = match a.route {
        KeiperRoute::Derivative => tau_lambda_from_sigma(&sig, k)?,
        KeiperRoute::Zeros => {
            let n = a.zeros.map_or(default_zero_count(f), |n| n as usize);
            tau_lambda_from_zeros(&zero_set(f, n, true)?, k, true)?
        }
    };
    let mut csv = String::from("k,tau,lambda\n");
    for i in 0..=k {
        let tau = coeffs.tau.get(i).map_or(String::new(), |t| format!("{:e}", t.re));
        csv.push_str(&format!("{i},{tau},{:e}\n", coeffs.lambda[i].re));
    }
    let tau_max = coeffs.tau.iter().map(|t| t.re.abs()).fold(0.0, f64::max);
    Ok(Artifact::new(
        csv,
        json!({
            "function": f,
            "tau": coeffs.tau.iter().map(|t| t.re).collect::<Vec<_>>(),
            "lambda": coeffs.lambda.iter().map(|l| l.re).collect::<Vec<_>>(),
        }),
    )
    .precision("identity_residuals", json!([r3, r4, r5]))
    .precision("max_abs_tau", tau_max)
    .precision("max_imag", coeffs.lambda.iter().chain(&coeffs.tau).map(|z| z.im.abs()).fold(0.0, f64::max)))
}

fn bell(a: &BellArgs) -> Result<Artifact> {
    let k = a.order as usize;
    let f = a.function;
    let origin = Complex64::new(0.0, 0.0);
    let sig = sigma_from_derivatives(f, k, default_radius(f))?;
    let from_bell = series_from_sigma(evaluate(f, origin)?, &sig, k);
    let direct = taylor_coeffs(f, origin, k, default_radius(f), DEFAULT_RESOLUTION)?;
    let mut csv = String::from("k,bell,direct,diff\n");
    let mut worst = 0.0f64;
    for i in 0..=k {
        let (b, d) = (from_bell.coeffs[i].re, direct.coeffs[i].re);
        worst = worst.max((b - d).abs() / d.abs().max(1e-300));
        csv.push_str(&format!("{i},{b:e},{d:e},{:e}\n", b - d));
    }
    Ok(Artifact::new(
        csv,
        json!({
            "function": f,
            "bell": from_bell.coeffs.iter().map(|c| c.re).collect::<Vec<_>>(),
            "direct": direct.coeffs.iter().map(|c| c.re).collect::<Vec<_>>(),
        }),
    )
    .precision("max_relative_diff", worst))
}

fn link(a: &LinkArgs) -> Result<Artifact> {
    let order = a.order as usize;
    let inputs = LinkInputs::compute(order.max(2))?;
    let rows = link3_reports(&inputs, order)?;
    let cross = sigma_cross_relations(&inputs.xi, &inputs.plus, &inputs.minus);
    let max_res = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(Artifact::new(link_csv(&rows), json!({ "rows": rows, "cross_relations": cross }))
        .precision("max_residual", max_res)
        .precision("sigma_first_order_residual", cross.first_order)
        .precision("sigma_second_order_residual", cross.second_order))
}

fn translate(a: &TranslateArgs) -> Result<Artifact> {
    let f = a.function;
    let terms = a.terms as usize;
    let z0 = Complex64::new(a.z0.0, a.z0.1);
    let sig = sigma_from_derivatives(f, a.m.end() + terms, default_radius(f))?;
    let rows: Vec<_> = a.m.clone().map(|m| translated_sigma(f, &sig, z0, m, terms)).collect::<Result<_>>()?;
    let mut csv = String::from("m,series_re,series_im,derivative_re,derivative_im,truncation\n");
    let mut worst = 0.0f64;
    for r in &rows {
        let (s, d) = (r.value_series_route, r.value_derivative_route);
        worst = worst.max((s - d).norm() / d.norm().max(1e-300));
        csv.push_str(&format!("{},{:e},{:e},{:e},{:e},{:e}\n", r.m, s.re, s.im, d.re, d.im, r.truncation_estimate));
    }
    let rows_json: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "m": r.m,
                "series": c_json(r.value_series_route),
                "derivative": c_json(r.value_derivative_route),
                "truncation": r.truncation_estimate,
            })
        })
        .collect();
    Ok(Artifact::new(csv, json!({ "function": f, "z0": c_json(z0), "rows": rows_json }))
        .precision("max_relative_route_diff", worst))
}

fn sequence(s: Sequence, n: usize) -> Result<ZeroDataset> {
    match s {
        Sequence::Zeros(f) => cached_first_n_zeros(f, n),
        Sequence::XiHalf => Ok(xi_halfshift_zeros(&cached_first_n_zeros(FunctionId::Xi, n)?)),
    }
}

fn interlace(a: &InterlaceArgs) -> Result<Artifact> {
    let n = a.n as usize;
    let da = sequence(a.pair.0, n)?;
    let db = sequence(a.pair.1, n)?;
    let report = interlacing_report(&da, &db, a.mode, n, a.t0)?;
    let mut json = serde_json::to_value(&report)?;
    let mut csv = String::from("failure\n");
    for k in &report.failures {
        csv.push_str(&format!("{k}\n"));
    }
    if let Some(step) = a.window_step {
        let (lo, hi) = translation_window_search(&da, &db, n, step)?;
        json["window"] = json!([lo, hi]);
        csv.push_str(&format!("# window {lo} {hi}\n"));
    }
    Ok(Artifact::new(csv, json).precision("coincidence_tolerance", 1e-9))
}

fn rhscan(a: &RhscanArgs) -> Result<Artifact> {
    let (lo, hi) = a.range;
    let margin = 3.0;
    let plus = scan_zeros_default(FunctionId::TPlus, 0.0, hi + margin)?;
    let minus = scan_zeros_default(FunctionId::TMinus, 0.0, hi + margin)?;
    let scan = condition_scan(&plus, &minus, lo, hi)?;
    let mut json = serde_json::to_value(&scan)?;
    if a.contours {
        let contours: Vec<Value> = scan
            .reports
            .iter()
            .map(|r| {
                let gap = 1.0 / zero_density(FunctionId::TPlus, r.t_centroid);
                match trace_unit_contour(r.t_centroid, gap) {
                    Ok(c) => json!({
                        "t_center": c.t_center,
                        "winding": c.winding,
                        "critical_crossings": c.critical_crossings,
                        "u_zero": c.u_zero.map(c_json),
                        "u_pole": c.u_pole.map(c_json),
                        "max_level_error": c.max_level_error,
                        "points": c.polyline.points.iter().map(|p| c_json(*p)).collect::<Vec<_>>(),
                    }),
                    Err(e) => json!({ "t_center": r.t_centroid, "error": e.to_string() }),
                }
            })
            .collect();
        json["contours"] = Value::Array(contours);
    }
    let max_res = scan.reports.iter().map(|r| r.derivative_residual).fold(0.0, f64::max);
    Ok(Artifact::new(triplet_csv(&scan.reports), json)
        .precision("max_derivative_residual", max_res)
        .precision("nonconvergence_warnings", scan.warnings.len()))
}

fn ystar() -> Result<Artifact> {
    let y = lagarias_suzuki_y_star()?;
    Ok(Artifact::new(format!("y_star\n{y}\n"), json!({ "y_star": y })).precision("bisection_width", 1e-5))
}
