//! Zero-power sums σ_k by the derivative route (Taylor coefficients of
//! `log f`) and the zero route (direct sums over zeros), Keiper's τ/λ.

use crate::error::{Error, Result};
use crate::numeric::{binomial, blocked_complex_sum, expm1, ln1p, CompensatedSum};
use crate::special_functions::{evaluate, riemann_zeta, ComplexPoint, EvalOptions, FunctionId};
use crate::zero_finder::{estimate_height, refine_zero, zero_density, LocationKind, ZeroDataset};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_RESOLUTION: usize = 512;
pub const DEFAULT_ORDER: usize = 30;
const SUM_BLOCK: usize = 256;
const VALIDATION_TOL: f64 = 1e-11;
const MAX_MODULUS_RATIO: f64 = 1e6;

/// Truncated Taylor series `Σ c_k (s − center)^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    pub center: ComplexPoint,
    pub coeffs: Vec<Complex64>,
    pub radius_used: f64,
    pub resolution_used: usize,
}

impl PowerSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let z = s - self.center;
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaMethod {
    DerivativeRoute,
    ZeroRoute,
}

/// `σ_1..σ_K`; `values[k-1]` is `σ_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaSeries {
    pub function: FunctionId,
    pub values: Vec<Complex64>,
    pub method: Vec<SigmaMethod>,
    pub zeros_used: usize,
}

impl SigmaSeries {
    pub fn sigma(&self, k: usize) -> Complex64 {
        self.values[k - 1]
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn conj(&self) -> SigmaSeries {
        SigmaSeries {
            values: self.values.iter().map(|v| v.conj()).collect(),
            ..self.clone()
        }
    }
}

/// τ_0..τ_{K−1} and λ_0..λ_K.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeiperCoefficients {
    pub function: FunctionId,
    pub tau: Vec<Complex64>,
    pub lambda: Vec<Complex64>,
}

/// Default sampling radius for the derivative route about `s = 0`.
pub fn default_radius(f: FunctionId) -> f64 {
    match f {
        FunctionId::Xi => 4.0,
        FunctionId::TPlusTilde => 2.0,
        FunctionId::TMinusTilde => 1.5,
        FunctionId::L4Completed => 3.0,
        // trivial zero at s = −1
        FunctionId::L4 => 0.8,
        _ => 1.0,
    }
}

/// Functions whose zero sets are handled by the sum rules, and the tag whose
/// critical-line form produced the zeros.
pub fn zero_source(f: FunctionId) -> FunctionId {
    match f {
        FunctionId::TPlusTilde => FunctionId::TPlus,
        FunctionId::TMinusTilde => FunctionId::TMinus,
        FunctionId::L4 => FunctionId::L4Completed,
        FunctionId::Xi1 => FunctionId::Xi,
        other => other,
    }
}

fn check_source(f: FunctionId, ds: &ZeroDataset) -> Result<()> {
    if zero_source(f) != zero_source(ds.function) {
        return Err(Error::Domain(format!(
            "dataset holds zeros of {}, not of {f}",
            ds.function
        )));
    }
    Ok(())
}

/// Samples of `f` on the circle `center + r e^{iφ_j}`, `φ_j = 2πj/n`.
fn circle_samples(f: FunctionId, center: Complex64, radius: f64, n: usize) -> Result<Vec<Complex64>> {
    (0..n)
        .into_par_iter()
        .map(|j| {
            let z = center + Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64);
            evaluate(f, z)
        })
        .collect()
}

/// Winding number of a closed sampled curve about the origin.
fn winding_number(samples: &[Complex64]) -> i64 {
    let n = samples.len();
    let total: f64 = (0..n)
        .map(|j| (samples[(j + 1) % n] / samples[j]).arg())
        .sum();
    (total / (2.0 * PI)).round() as i64
}

/// Scaled Taylor coefficients `a_k r^k`, `k = 0..=order`, by discrete Fourier averaging.
fn scaled_taylor(samples: &[Complex64], order: usize) -> Vec<Complex64> {
    let n = samples.len();
    (0..=order)
        .map(|k| {
            let terms: Vec<Complex64> = samples
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let phase = -2.0 * PI * ((j * k) % n) as f64 / n as f64;
                    v * Complex64::from_polar(1.0, phase)
                })
                .collect();
            blocked_complex_sum(&terms, SUM_BLOCK) / n as f64
        })
        .collect()
}

/// Coefficients of `log(A(z)/A(0))` from those of `A`, by the recurrence
/// `n c_n a_0 = n a_n − Σ_{k=1}^{n−1} k c_k a_{n−k}`.
pub fn formal_log(a: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); a.len()];
    if a.is_empty() {
        return c;
    }
    for n in 1..a.len() {
        let mut acc = a[n] * n as f64;
        for k in 1..n {
            acc -= c[k] * a[n - k] * k as f64;
        }
        c[n] = acc / (a[0] * n as f64);
    }
    c
}

/// Taylor coefficients of `f` about `center`.
pub fn taylor_coeffs(
    f: FunctionId,
    center: ComplexPoint,
    order: usize,
    radius: f64,
    resolution: usize,
) -> Result<PowerSeries> {
    let samples = circle_samples(f, center, radius, resolution)?;
    let scaled = scaled_taylor(&samples, order);
    let coeffs = scaled
        .iter()
        .enumerate()
        .map(|(k, &a)| a / radius.powi(k as i32))
        .collect();
    Ok(PowerSeries {
        center,
        coeffs,
        radius_used: radius,
        resolution_used: resolution,
    })
}

fn log_coeffs_at(
    f: FunctionId,
    center: Complex64,
    order: usize,
    radius: f64,
    n: usize,
) -> Result<Vec<Complex64>> {
    let samples = circle_samples(f, center, radius, n)?;
    let (lo, hi) = samples.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
        (lo.min(v.norm()), hi.max(v.norm()))
    });
    let ratio = hi / lo;
    if !(ratio <= MAX_MODULUS_RATIO) {
        return Err(Error::Radius { radius, ratio });
    }
    // a zero inside the circle shows up as a nonzero winding number
    if winding_number(&samples) != 0 {
        return Err(Error::Radius {
            radius,
            ratio: f64::INFINITY,
        });
    }
    Ok(formal_log(&scaled_taylor(&samples, order)))
}

/// Coefficients of `log(f(s)/f(center))` about `center`, `c_0 = 0`.
///
/// `f` is sampled on a circle, its Taylor coefficients are taken by DFT and
/// the series logarithm is formed. The computation is repeated with twice
/// the resolution and every scaled coefficient `c_k r^k` must agree to
/// `1e-11 · max(1, |c_k r^k|)`.
pub fn taylor_log_coeffs_at(
    f: FunctionId,
    center: ComplexPoint,
    order: usize,
    radius: f64,
    resolution: usize,
) -> Result<PowerSeries> {
    let coarse = log_coeffs_at(f, center, order, radius, resolution)?;
    let fine = log_coeffs_at(f, center, order, radius, 2 * resolution)?;
    for (k, (a, b)) in coarse.iter().zip(&fine).enumerate() {
        if (a - b).norm() > VALIDATION_TOL * a.norm().max(1.0) {
            return Err(Error::Convergence(format!(
                "log-coefficient {k} moved by {:e} when the resolution was doubled",
                (a - b).norm()
            )));
        }
    }
    let coeffs = fine
        .iter()
        .enumerate()
        .map(|(k, &c)| c / radius.powi(k as i32))
        .collect();
    Ok(PowerSeries {
        center,
        coeffs,
        radius_used: radius,
        resolution_used: 2 * resolution,
    })
}

/// [`taylor_log_coeffs_at`] about `s = 0` with the default resolution.
pub fn taylor_log_coeffs(f: FunctionId, order: usize, radius: f64) -> Result<PowerSeries> {
    taylor_log_coeffs_at(f, Complex64::new(0.0, 0.0), order, radius, DEFAULT_RESOLUTION)
}

/// Derivative-route σ_1..σ_K: `σ_m = −m c_m`.
pub fn sigma_from_derivatives(f: FunctionId, order: usize, radius: f64) -> Result<SigmaSeries> {
    let series = taylor_log_coeffs(f, order, radius)?;
    Ok(SigmaSeries {
        function: f,
        values: (1..=order).map(|m| -series.coeffs[m] * m as f64).collect(),
        method: vec![SigmaMethod::DerivativeRoute; order],
        zeros_used: 0,
    })
}

/// Every zero of the dataset as a complex point, conjugate partners included.
pub fn zero_points(ds: &ZeroDataset) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(2 * ds.records.len());
    for r in &ds.records {
        match r.location_kind {
            LocationKind::CriticalLine => {
                out.push(Complex64::new(0.5, r.t_or_x));
                out.push(Complex64::new(0.5, -r.t_or_x));
            }
            LocationKind::RealAxis => out.push(Complex64::new(r.t_or_x, 0.0)),
        }
    }
    out
}

fn zero_sum(ds: &ZeroDataset, g: impl Fn(Complex64) -> Complex64 + Sync + Send) -> Complex64 {
    let values: Vec<Complex64> = zero_points(ds).into_par_iter().map(g).collect();
    blocked_complex_sum(&values, SUM_BLOCK)
}

/// `σ_m = Σ_ρ ρ^{−m}` over the dataset, without tail correction.
pub fn sigma_from_zeros(ds: &ZeroDataset, m: usize) -> Complex64 {
    zero_sum(ds, |rho| rho.powi(-(m as i32)))
}

/// Zero-route σ_1..σ_K, raw.
pub fn sigma_series_from_zeros(ds: &ZeroDataset, order: usize) -> SigmaSeries {
    SigmaSeries {
        function: ds.function,
        values: (1..=order).map(|m| sigma_from_zeros(ds, m)).collect(),
        method: vec![SigmaMethod::ZeroRoute; order],
        zeros_used: zero_points(ds).len(),
    }
}

/// Where the sum over missing zeros is replaced by an integral, and the
/// phase jump carried by the counting function at that point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    pub function: FunctionId,
    pub t_start: f64,
    /// `(N(T) − N_smooth(T))` in units of zeros, beyond the smooth model.
    pub count_offset: f64,
}

impl TailModel {
    /// `Σ_{zeros beyond the dataset} g(t) ≈ ∫_T^∞ ρ(t) g(t) dt − offset · g(T)`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        if self.t_start <= 0.0 {
            return 0.0;
        }
        let boundary = self.count_offset * g(self.t_start);
        density_tail(self.function, self.t_start, g) - boundary
    }
}

/// Tail model for a dataset.
///
/// For ξ and L₋₄ the integral starts where the smooth count equals the
/// number of zeros held. For 𝒯± the zeros are the quarter-period crossings
/// of `arg ξ₁(1+2it)`, so the integral starts at the next zero of the
/// partner function (half a period later) and the bounded part
/// `arg ζ(1+2iT)/π` of the counting function enters as an offset.
pub fn tail_model(ds: &ZeroDataset) -> Result<TailModel> {
    let f = ds.function;
    let ords = ds.ordinates();
    let Some(&last) = ords.last() else {
        return Ok(TailModel {
            function: f,
            t_start: 0.0,
            count_offset: 0.0,
        });
    };
    let partner = match zero_source(f) {
        FunctionId::TPlus => Some(FunctionId::TMinus),
        FunctionId::TMinus => Some(FunctionId::TPlus),
        _ => None,
    };
    match partner {
        Some(p) => {
            let spacing = 1.0 / zero_density(f, last).max(0.05);
            let guard = 1e-7 * last.max(1.0);
            let next = refine_zero(p, (last + guard, last + 2.5 * spacing))?;
            let t = next.t_or_x;
            let z = riemann_zeta(Complex64::new(1.0, 2.0 * t), &EvalOptions::default())?;
            Ok(TailModel {
                function: f,
                t_start: t,
                count_offset: z.arg() / PI,
            })
        }
        None => Ok(TailModel {
            function: f,
            t_start: estimate_height(f, ords.len() as f64),
            count_offset: 0.0,
        }),
    }
}

/// `∫_T^∞ ρ(t) g(t) dt` for the smooth zero density of `f`, using
/// `t = T e^x` and composite Simpson on `x ∈ [0, 60]`.
pub fn density_tail(f: FunctionId, t_start: f64, g: impl Fn(f64) -> f64) -> f64 {
    if t_start <= 0.0 {
        return 0.0;
    }
    let panels = 16000;
    let x_max = 60.0;
    let h = x_max / panels as f64;
    let integrand = |x: f64| {
        let t = t_start * x.exp();
        zero_density(f, t) * g(t) * t
    };
    let mut acc = CompensatedSum::new();
    for i in 0..=panels {
        let w = if i == 0 || i == panels {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc.add(w * integrand(i as f64 * h));
    }
    acc.value() * h / 3.0
}

/// Tail of `σ_m` beyond the dataset: `∫ ρ(t) 2 Re (½ + it)^{−m} dt`.
pub fn sigma_tail_estimate(ds: &ZeroDataset, m: usize) -> Result<f64> {
    Ok(tail_model(ds)?.integrate(|t| 2.0 * Complex64::new(0.5, t).powi(-(m as i32)).re))
}

/// One row of the sum-rule comparison: `lhs = c_m`, `rhs = −σ_m/m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumRuleRow {
    pub m: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
    pub rhs_tail_corrected: f64,
}

pub fn verify_sum_rule(
    f: FunctionId,
    ds: &ZeroDataset,
    m_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<SumRuleRow>> {
    check_source(f, ds)?;
    let order = *m_range.end();
    let series = taylor_log_coeffs(f, order.max(1), default_radius(f))?;
    m_range
        .map(|m| {
            let lhs = series.coeffs[m].re;
            let raw = sigma_from_zeros(ds, m).re;
            let rhs = -raw / m as f64;
            let corrected = -(raw + sigma_tail_estimate(ds, m)?) / m as f64;
            Ok(SumRuleRow {
                m,
                lhs,
                rhs,
                diff: lhs - rhs,
                rhs_tail_corrected: corrected,
            })
        })
        .collect()
}

pub fn sum_rule_csv(rows: &[SumRuleRow]) -> String {
    let mut out = String::from("m,lhs,rhs,diff\n");
    for r in rows {
        out.push_str(&format!("{},{:e},{:e},{:e}\n", r.m, r.lhs, r.rhs, r.diff));
    }
    out
}

/// Residuals of the truncated identities `Σ σ_k/k = 0`, `σ_1 = −Σ σ_k` and
/// `σ_{j+1} = (−1)^{j+1} Σ_k C(k−1, j) σ_k` (the last as a maximum over j = 1, 2, 3).
pub fn keiper_identity_residuals(sig: &SigmaSeries) -> (f64, f64, f64) {
    let k_max = sig.order();
    let mut r3 = Complex64::new(0.0, 0.0);
    let mut r4 = sig.sigma(1);
    for k in 1..=k_max {
        r3 += sig.sigma(k) / k as f64;
        r4 += sig.sigma(k);
    }
    let mut r5 = 0.0f64;
    for j in 1..=3usize {
        if j + 1 > k_max {
            break;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=k_max {
            acc += sig.sigma(k) * binomial(k - 1, j);
        }
        let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
        r5 = r5.max((sig.sigma(j + 1) - acc * sign).norm());
    }
    (r3.norm(), r4.norm(), r5)
}

/// τ and λ from σ:
/// `τ_0 = σ_1`, `τ_k = Σ_{j=1}^k C(k−1, j−1) (−1)^j σ_{j+1}`,
/// `λ_0 = 0`, `λ_k = Σ_{j=1}^k (−1)^{j−1} C(k−1, j−1) σ_j / j`.
pub fn tau_lambda_from_sigma(sig: &SigmaSeries, k_count: usize) -> Result<KeiperCoefficients> {
    if sig.order() < k_count {
        return Err(Error::Domain(format!(
            "need σ to order {k_count}, have {}",
            sig.order()
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut tau = vec![sig.sigma(1)];
    for k in 1..k_count {
        let mut acc = zero;
        for j in 1..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sig.sigma(j + 1) * (sign * binomial(k - 1, j - 1));
        }
        tau.push(acc);
    }
    let mut lambda = vec![zero];
    for k in 1..=k_count {
        let mut acc = zero;
        for j in 1..=k {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            acc += sig.sigma(j) * (sign * binomial(k - 1, j - 1) / j as f64);
        }
        lambda.push(acc);
    }
    Ok(KeiperCoefficients {
        function: sig.function,
        tau,
        lambda,
    })
}

/// τ and λ by direct sums over zeros, with `q = ρ/(ρ−1)`:
/// `τ_0 = Σ 1/(1−ρ)`, `τ_k = −Σ q^{k+1} ρ^{−2}` (k ≥ 1),
/// `λ_m = (1/m) Σ (1 − q^m)`.
///
/// With `tail = true` the sums over critical-line zeros beyond the dataset
/// are added from the smooth zero density.
pub fn tau_lambda_from_zeros(
    ds: &ZeroDataset,
    k_count: usize,
    tail: bool,
) -> Result<KeiperCoefficients> {
    let model = if tail { Some(tail_model(ds)?) } else { None };
    let add_tail = |g: &dyn Fn(Complex64) -> Complex64| -> f64 {
        if let Some(model) = &model {
            model.integrate(|t| {
                let rho = Complex64::new(0.5, t);
                (g(rho) + g(rho.conj())).re
            })
        } else {
            0.0
        }
    };
    let one = Complex64::new(1.0, 0.0);
    let tau_0_term = |rho: Complex64| one / (one - rho);
    let mut tau = vec![zero_sum(ds, tau_0_term) + add_tail(&tau_0_term)];
    for k in 1..k_count {
        let term = move |rho: Complex64| -(rho / (rho - 1.0)).powi(k as i32 + 1) / (rho * rho);
        tau.push(zero_sum(ds, term) + add_tail(&term));
    }
    let mut lambda = vec![Complex64::new(0.0, 0.0)];
    for m in 1..=k_count {
        // 1 − q^m = −expm1(−m log(1 − 1/ρ)), which keeps the O(1/t²) real part
        let term = move |rho: Complex64| -expm1(-ln1p(-one / rho) * m as f64) / m as f64;
        lambda.push(zero_sum(ds, term) + add_tail(&term));
    }
    Ok(KeiperCoefficients {
        function: ds.function,
        tau,
        lambda,
    })
}

/// `Σ 1/|ρ|²` over the dataset, and the same plus the density tail from
/// `t_max_scanned`.
pub fn inverse_square_modulus_sum(ds: &ZeroDataset, include_real_axis: bool) -> Result<(f64, f64)> {
    if ds.records.is_empty() {
        return Err(Error::Domain("empty zero dataset".into()));
    }
    let mut acc = CompensatedSum::new();
    for r in &ds.records {
        match r.location_kind {
            LocationKind::CriticalLine => acc.add(2.0 / (0.25 + r.t_or_x * r.t_or_x)),
            LocationKind::RealAxis if include_real_axis => acc.add(1.0 / (r.t_or_x * r.t_or_x)),
            LocationKind::RealAxis => {}
        }
    }
    let raw = acc.value();
    let tail = density_tail(ds.function, ds.t_max_scanned, |t| 2.0 / (0.25 + t * t));
    Ok((raw, raw + tail))
}

/// Order `k*` where the two σ routes agree best, and that difference.
pub fn crossover_select(
    derivative: &SigmaSeries,
    zeros: &SigmaSeries,
) -> Result<(usize, f64)> {
    if zeros.zeros_used == 0 {
        return Err(Error::Domain("crossover needs a nonempty zero set".into()));
    }
    let k_max = derivative.order().min(zeros.order());
    let mut best = (0usize, f64::INFINITY);
    for k in 1..=k_max {
        let d = (derivative.sigma(k) - zeros.sigma(k)).norm();
        if d < best.1 {
            best = (k, d);
        }
    }
    if best.0 == 0 {
        return Err(Error::Domain("no orders to compare".into()));
    }
    Ok(best)
}

/// Least-squares slope of `y_k` against `k`.
pub fn least_squares_slope(ks: &[f64], ys: &[f64]) -> f64 {
    let n = ks.len() as f64;
    let mk = ks.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = ks.iter().zip(ys).map(|(k, y)| (k - mk) * (y - my)).sum();
    let den: f64 = ks.iter().map(|k| (k - mk) * (k - mk)).sum();
    num / den
}
