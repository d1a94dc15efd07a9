//! Translated zero-power sums and interlacing of 𝒯± zeros with those of
//! `ξ₁(2s − ½)`.

use crate::error::{Error, Result};
use crate::numeric::binomial;
use crate::special_functions::{evaluate_scaled, xi1_scaled, ComplexPoint, EvalOptions, FunctionId};
use crate::sum_rules::{default_radius, taylor_log_coeffs_at, SigmaSeries, DEFAULT_RESOLUTION};
use crate::zero_finder::ZeroDataset;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_TERMS: usize = 40;
pub const WINDOW_LIMIT: f64 = 0.2;
/// Ordinates closer than this to an interval endpoint count as failures.
const COINCIDENCE: f64 = 1e-9;

/// `σ̂_m = Σ_ρ (ρ − z0)^{−m}` by both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TranslatedSigma {
    pub z0: ComplexPoint,
    pub m: usize,
    pub value_series_route: Complex64,
    pub value_derivative_route: Complex64,
    pub truncation_estimate: f64,
}

/// `σ̂_m = Σ_{p=0}^{P} C(m+p−1, p) z0^p σ_{m+p}`, with the magnitude of the
/// last term as truncation estimate.
pub fn translated_sigma_series(
    sig: &SigmaSeries,
    z0: ComplexPoint,
    m: usize,
    terms: usize,
) -> Result<(Complex64, f64)> {
    if m == 0 || sig.order() < m + terms {
        return Err(Error::Domain(format!(
            "need σ up to order {}, have {}",
            m + terms,
            sig.order()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zp = Complex64::new(1.0, 0.0);
    let mut last = [0.0f64; 2];
    for p in 0..=terms {
        let term = zp * sig.sigma(m + p) * binomial(m + p - 1, p);
        acc += term;
        last = [last[1], term.norm()];
        zp *= z0;
    }
    if terms > 0 && last[1] > last[0] {
        return Err(Error::Convergence(format!(
            "translated series terms still growing at p = {terms} ({:e} > {:e})",
            last[1], last[0]
        )));
    }
    Ok((acc, last[1]))
}

/// `σ̂_m = −(1/Γ(m)) d^m/dz^m log f(z) |_{z0} = −m c_m(z0)`, with `c_m` the
/// Taylor coefficient of `log f` about `z0`.
pub fn translated_sigma_direct(f: FunctionId, z0: ComplexPoint, m: usize) -> Result<Complex64> {
    let series = taylor_log_coeffs_at(f, z0, m, default_radius(f), DEFAULT_RESOLUTION)?;
    Ok(-series.coeffs[m] * m as f64)
}

/// Both routes at once; `sig` must reach order `m + terms`.
pub fn translated_sigma(
    f: FunctionId,
    sig: &SigmaSeries,
    z0: ComplexPoint,
    m: usize,
    terms: usize,
) -> Result<TranslatedSigma> {
    let (series, truncation) = translated_sigma_series(sig, z0, m, terms)?;
    Ok(TranslatedSigma {
        z0,
        m,
        value_series_route: series,
        value_derivative_route: translated_sigma_direct(f, z0, m)?,
        truncation_estimate: truncation,
    })
}

/// Zeros of `ξ₁(2s − ½)` on the critical line: a ξ zero `½ + iγ` is hit
/// when `2s − ½ = ½ + iγ`, i.e. at `s = ½ + iγ/2`.
pub fn xi_halfshift_zeros(ds_xi: &ZeroDataset) -> ZeroDataset {
    let mut out = ZeroDataset::new(FunctionId::Xi1);
    out.records = ds_xi
        .critical_line()
        .map(|r| {
            let mut r = *r;
            r.function = FunctionId::Xi1;
            r.t_or_x /= 2.0;
            r
        })
        .collect();
    out.t_max_scanned = ds_xi.t_max_scanned / 2.0;
    out.generator_metadata = format!("xi1(2s-1/2) from {} zeros: t -> t/2", ds_xi.function);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterlaceMode {
    /// The k-th b-zero lies above the k-th a-zero.
    After,
    /// The k-th b-zero lies strictly between a-zeros k−1 and k.
    Between,
}

impl std::str::FromStr for InterlaceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "after" => Ok(InterlaceMode::After),
            "between" => Ok(InterlaceMode::Between),
            _ => Err(Error::Domain(format!("unknown interlacing mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterlacingReport {
    pub pair: (FunctionId, FunctionId),
    pub mode: InterlaceMode,
    pub t0: f64,
    pub range_indices: (usize, usize),
    pub failures: Vec<usize>,
    #[serde(rename = "fraction")]
    pub failure_fraction: f64,
}

/// Compares the first `n` zeros of `a` with those of `b` shifted by `t0`.
///
/// `After` lists ordinal `k` when `b_k + t0 ≤ a_k`. `Between` lists the
/// a-ordinal opening the interval `(a_{k−1}, a_k)` that fails to contain
/// `b_k + t0` (ordinal 0 stands for the interval below `a_1`).
pub fn interlacing_report(
    a: &ZeroDataset,
    b: &ZeroDataset,
    mode: InterlaceMode,
    n: usize,
    t0: f64,
) -> Result<InterlacingReport> {
    let ta = a.ordinates();
    let tb = b.ordinates();
    let failures = interlacing_failures(&ta, &tb, mode, n, t0)?;
    Ok(InterlacingReport {
        pair: (a.function, b.function),
        mode,
        t0,
        range_indices: (1, n),
        failure_fraction: failures.len() as f64 / n as f64,
        failures,
    })
}

fn interlacing_failures(ta: &[f64], tb: &[f64], mode: InterlaceMode, n: usize, t0: f64) -> Result<Vec<usize>> {
    if n == 0 || ta.len() < n || tb.len() < n {
        return Err(Error::RangeMismatch(format!(
            "need {n} zeros of each function, have {} and {}",
            ta.len(),
            tb.len()
        )));
    }
    Ok((0..n)
        .filter_map(|k| {
            let b = tb[k] + t0;
            match mode {
                InterlaceMode::After => (b <= ta[k] + COINCIDENCE).then_some(k + 1),
                InterlaceMode::Between => {
                    let lo = if k == 0 { f64::NEG_INFINITY } else { ta[k - 1] };
                    let inside = b > lo + COINCIDENCE && b < ta[k] - COINCIDENCE;
                    (!inside).then_some(k)
                }
            }
        })
        .collect())
}

/// Longest contiguous run of grid shifts `t0 ∈ [−0.2, 0.2]` for which the
/// `Between` property holds for all of the first `n` zeros.
pub fn translation_window_search(a: &ZeroDataset, b: &ZeroDataset, n: usize, step: f64) -> Result<(f64, f64)> {
    if !(step > 0.0) {
        return Err(Error::Domain(format!("grid step must be positive, got {step}")));
    }
    let ta = a.ordinates();
    let tb = b.ordinates();
    let count = (2.0 * WINDOW_LIMIT / step).round() as usize;
    let grid: Vec<f64> = (0..=count).map(|i| -WINDOW_LIMIT + i as f64 * step).collect();
    let ok: Vec<bool> = grid
        .par_iter()
        .map(|&t0| interlacing_failures(&ta, &tb, InterlaceMode::Between, n, t0).map(|f| f.is_empty()))
        .collect::<Result<_>>()?;
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for (i, &good) in ok.iter().chain(std::iter::once(&false)).enumerate() {
        match (good, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if best.is_none_or(|(bs, be)| i - 1 - s > be - bs) {
                    best = Some((s, i - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    best.map(|(s, e)| (grid[s], grid[e])).ok_or(Error::EmptyWindow {
        lo: -WINDOW_LIMIT,
        hi: WINDOW_LIMIT,
    })
}

/// `|𝒯₊/𝒯₋ + i cot(arg ξ₁(1 + 2iu))|` at `s = ½ + iu`, `u = t − t0`.
pub fn ratio_identity_check(t: f64, t0: f64) -> Result<f64> {
    let u = t - t0;
    let s = Complex64::new(0.5, u);
    let opts = EvalOptions::default();
    let plus = evaluate_scaled(FunctionId::TPlus, s, &opts)?;
    let minus = evaluate_scaled(FunctionId::TMinus, s, &opts)?;
    let x = xi1_scaled(Complex64::new(1.0, 2.0 * u), &opts)?;
    let phase = x.arg();
    if minus.is_zero() || phase.sin().abs() < 1e-15 {
        return Err(Error::pole(s));
    }
    let ratio = (plus / minus).to_complex();
    let rhs = Complex64::new(0.0, -phase.cos() / phase.sin());
    Ok((ratio - rhs).norm())
}
