//! Critical-line zero location by sign changes of the real critical-line
//! forms, plus the two real-axis zeros of 𝒯₋.

use crate::error::{Error, Result};
use crate::special_functions::{critical_line_normalized, evaluate, FunctionId};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocationKind {
    CriticalLine,
    RealAxis,
}

impl LocationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LocationKind::CriticalLine => "critical_line",
            LocationKind::RealAxis => "real_axis",
        }
    }
}

/// One zero. For `CriticalLine` the zero is `½ + i t_or_x` (and its
/// conjugate); for `RealAxis` it is the real point `t_or_x`.
///
/// `residual` is the modulus of the sign-faithful normalized form at the
/// refined point; the raw form underflows for large `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub function: FunctionId,
    pub index: usize,
    pub location_kind: LocationKind,
    pub t_or_x: f64,
    pub residual: f64,
}

impl ZeroRecord {
    /// The zero as a complex point (upper half-plane member for critical-line records).
    pub fn point(&self) -> Complex64 {
        match self.location_kind {
            LocationKind::CriticalLine => Complex64::new(0.5, self.t_or_x),
            LocationKind::RealAxis => Complex64::new(self.t_or_x, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroDataset {
    pub function: FunctionId,
    pub records: Vec<ZeroRecord>,
    pub t_max_scanned: f64,
    pub generator_metadata: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ZeroDataset {
    pub fn new(function: FunctionId) -> Self {
        Self {
            function,
            records: Vec::new(),
            t_max_scanned: 0.0,
            generator_metadata: String::new(),
            warnings: Vec::new(),
        }
    }

    pub fn critical_line(&self) -> impl Iterator<Item = &ZeroRecord> {
        self.records
            .iter()
            .filter(|r| r.location_kind == LocationKind::CriticalLine)
    }

    pub fn real_axis(&self) -> impl Iterator<Item = &ZeroRecord> {
        self.records
            .iter()
            .filter(|r| r.location_kind == LocationKind::RealAxis)
    }

    /// Critical-line ordinates in increasing order.
    pub fn ordinates(&self) -> Vec<f64> {
        self.critical_line().map(|r| r.t_or_x).collect()
    }

    /// Keeps the first `n` critical-line records (real-axis records are kept).
    pub fn truncated(&self, n: usize) -> ZeroDataset {
        let mut out = self.clone();
        let mut kept = 0;
        out.records.retain(|r| {
            if r.location_kind == LocationKind::RealAxis {
                return true;
            }
            kept += 1;
            kept <= n
        });
        if let Some(last) = out.critical_line().last() {
            if kept > n {
                out.t_max_scanned = last.t_or_x;
            }
        }
        out
    }

    /// Drops real-axis records.
    pub fn without_real_axis(&self) -> ZeroDataset {
        let mut out = self.clone();
        out.records
            .retain(|r| r.location_kind == LocationKind::CriticalLine);
        out
    }
}

/// Default grid step: 0.02 up to `t = 1200`, 0.01 above.
pub fn default_grid_step(t_hi: f64) -> f64 {
    if t_hi <= 1200.0 {
        0.02
    } else {
        0.01
    }
}

const BISECT_WIDTH: f64 = 1e-6;
const FINAL_WIDTH: f64 = 1e-11;
const POLE_GUARD: f64 = 1e-6;

fn line_value(f: FunctionId, t: f64) -> Result<f64> {
    critical_line_normalized(f, t)
}

/// Grid points: `t_lo`, every multiple of `step` strictly inside, and `t_hi`.
fn grid(t_lo: f64, t_hi: f64, step: f64) -> Vec<f64> {
    let mut pts = vec![t_lo];
    let mut k = (t_lo / step).floor() as i64 + 1;
    loop {
        let t = k as f64 * step;
        if t >= t_hi {
            break;
        }
        if t > t_lo {
            pts.push(t);
        }
        k += 1;
    }
    if t_hi > t_lo {
        pts.push(t_hi);
    }
    pts
}

/// Hybrid refinement: bisection to width 1e-6, then Illinois-modified
/// regula falsi until the bracket is below 1e-11.
fn refine_bracket(
    g: &dyn Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    mut ga: f64,
    mut gb: f64,
) -> Result<(f64, f64)> {
    while b - a > BISECT_WIDTH {
        let m = 0.5 * (a + b);
        let gm = g(m)?;
        if gm == 0.0 {
            return Ok((m, 0.0));
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
            gb = gm;
        }
    }
    let mut side = 0i8;
    for _ in 0..200 {
        if b - a <= FINAL_WIDTH {
            break;
        }
        let mut c = (a * gb - b * ga) / (gb - ga);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let gc = g(c)?;
        if gc == 0.0 {
            return Ok((c, 0.0));
        }
        if (gc < 0.0) == (ga < 0.0) {
            a = c;
            ga = gc;
            if side == -1 {
                gb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            gb = gc;
            if side == 1 {
                ga *= 0.5;
            }
            side = 1;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, g(t)?.abs()))
}

fn record(f: FunctionId, t: f64, residual: f64) -> ZeroRecord {
    ZeroRecord {
        function: f,
        index: 0,
        location_kind: LocationKind::CriticalLine,
        t_or_x: t,
        residual,
    }
}

/// Refines the lowest zero of the critical-line form of `f` inside `bracket`.
///
/// If the endpoints share a sign, the bracket is subdivided once on a
/// 16-point grid and the first sign change is used.
pub fn refine_zero(f: FunctionId, bracket: (f64, f64)) -> Result<ZeroRecord> {
    let (lo, hi) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    let g = |t: f64| line_value(f, t);
    let n = 16;
    let mut prev_t = lo;
    let mut prev_g = g(lo)?;
    if prev_g == 0.0 {
        return Ok(record(f, lo, 0.0));
    }
    for i in 1..=n {
        let t = if i == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / n as f64
        };
        let gt = g(t)?;
        if gt == 0.0 {
            return Ok(record(f, t, 0.0));
        }
        if (gt < 0.0) != (prev_g < 0.0) {
            let (t, res) = refine_bracket(&g, prev_t, t, prev_g, gt)?;
            let mut r = record(f, t, res);
            r.index = 1;
            return Ok(r);
        }
        prev_t = t;
        prev_g = gt;
    }
    Err(Error::NoSignChange { lo, hi })
}

/// Locates every sign change of the critical-line form of `f` on a grid over
/// `[t_lo, t_hi]` and refines each one. Interior grid points are the
/// multiples of `grid_step`, so adjacent scans share their boundary grid.
pub fn scan_zeros(f: FunctionId, t_lo: f64, t_hi: f64, grid_step: f64) -> Result<ZeroDataset> {
    if !f.has_critical_line_form() {
        return Err(Error::Domain(format!("{f} has no real critical-line form")));
    }
    if !(grid_step > 0.0) || !(t_hi >= t_lo) || !t_lo.is_finite() || !t_hi.is_finite() {
        return Err(Error::Domain(format!(
            "invalid scan range [{t_lo}, {t_hi}] with step {grid_step}"
        )));
    }
    let t_lo_eff = if f == FunctionId::TMinus {
        t_lo.max(POLE_GUARD)
    } else {
        t_lo
    };
    let mut ds = ZeroDataset::new(f);
    ds.t_max_scanned = t_hi;
    ds.generator_metadata = format!(
        "scan_zeros range=[{t_lo},{t_hi}] grid_step={grid_step} bisect_to={BISECT_WIDTH:e} refine_to={FINAL_WIDTH:e} version={}",
        env!("CARGO_PKG_VERSION")
    );
    if t_hi <= t_lo_eff {
        return Ok(ds);
    }
    let pts = grid(t_lo_eff, t_hi, grid_step);
    let values: Vec<f64> = pts
        .par_iter()
        .map(|&t| line_value(f, t))
        .collect::<Result<_>>()?;

    // exact grid zeros are recorded directly; otherwise adjacent sign changes
    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    for i in 0..pts.len() {
        if values[i] == 0.0 {
            exact.push(pts[i]);
            continue;
        }
        if i + 1 < pts.len() && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0) {
            brackets.push(i);
        }
    }
    let g = |t: f64| line_value(f, t);
    let mut found: Vec<(f64, f64)> = brackets
        .par_iter()
        .map(|&i| refine_bracket(&g, pts[i], pts[i + 1], values[i], values[i + 1]))
        .collect::<Result<_>>()?;
    found.extend(exact.into_iter().map(|t| (t, 0.0)));
    found.sort_by(|a, b| a.0.total_cmp(&b.0));

    ds.records = found
        .into_iter()
        .enumerate()
        .map(|(i, (t, res))| {
            let mut r = record(f, t, res);
            r.index = i + 1;
            r
        })
        .collect();

    if t_lo <= 0.0 {
        let (observed, predicted) = count_check(&ds);
        if let Some(w) = missed_zero_warning(observed, predicted) {
            ds.warnings.push(w);
        }
    }
    Ok(ds)
}

/// Scan with the default grid step for the range.
pub fn scan_zeros_default(f: FunctionId, t_lo: f64, t_hi: f64) -> Result<ZeroDataset> {
    scan_zeros(f, t_lo, t_hi, default_grid_step(t_hi))
}

/// Scans until at least `n` zeros are found, in chunks, and truncates to `n`.
pub fn first_n_zeros(f: FunctionId, n: usize) -> Result<ZeroDataset> {
    let mut t_hi = estimate_height(f, n as f64 + 10.0).max(20.0);
    loop {
        let ds = scan_zeros_default(f, 0.0, t_hi)?;
        if ds.critical_line().count() >= n {
            return Ok(ds.truncated(n));
        }
        t_hi *= 1.1;
    }
}

/// Smooth zero-counting function `N(T)` for `0 < t ≤ T`, in the form used
/// for the missed-zero check: `(T/π) log(T/π) − T/π` for 𝒯±, the classical
/// Riemann–von Mangoldt main terms for ξ and L₋₄.
pub fn predicted_count(f: FunctionId, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    match f {
        FunctionId::Xi | FunctionId::Xi1 => {
            let x = t / (2.0 * PI);
            x * x.ln() - x + 7.0 / 8.0
        }
        FunctionId::L4 | FunctionId::L4Completed => {
            let x = t / (2.0 * PI);
            x * (2.0 * t / PI).ln() - x + 1.0 / 8.0
        }
        _ => {
            let x = t / PI;
            x * x.ln() - x
        }
    }
}

/// [`predicted_count`] with the constant term that centres the count on
/// the zeros: the phase of `ξ₁(1+2it)` starts at `−π/2`, so 𝒯₊ gains one
/// zero and 𝒯₋ half a zero over the main term.
pub fn smooth_count(f: FunctionId, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    predicted_count(f, t)
        + match f {
            FunctionId::TPlus | FunctionId::TPlusTilde => 1.0,
            FunctionId::TMinus | FunctionId::TMinusTilde => 0.5,
            _ => 0.0,
        }
}

/// Zero density `dN/dt`.
pub fn zero_density(f: FunctionId, t: f64) -> f64 {
    match f {
        FunctionId::Xi | FunctionId::Xi1 => (t / (2.0 * PI)).ln() / (2.0 * PI),
        FunctionId::L4 | FunctionId::L4Completed => (2.0 * t / PI).ln() / (2.0 * PI),
        _ => (t / PI).ln() / PI,
    }
}

/// Height below which about `n` zeros are expected.
pub fn estimate_height(f: FunctionId, n: f64) -> f64 {
    let mut t: f64 = 20.0;
    for _ in 0..100 {
        let step = (smooth_count(f, t) - n) / zero_density(f, t).max(1e-3);
        t = (t - step).max(5.0);
        if step.abs() < 1e-9 {
            break;
        }
    }
    t
}

/// Observed critical-line zero count against the smooth counting function
/// at `t_max_scanned`.
pub fn count_check(ds: &ZeroDataset) -> (usize, f64) {
    let observed = ds.critical_line().count();
    (observed, predicted_count(ds.function, ds.t_max_scanned))
}

pub fn missed_zero_warning(observed: usize, predicted: f64) -> Option<String> {
    if (observed as f64 - predicted).abs() > 2.0 + 0.05 * predicted {
        Some(format!(
            "MissedZeroWarning: observed {observed} zeros, smooth count predicts {predicted:.1}"
        ))
    } else {
        None
    }
}

/// The two real zeros of 𝒯₋, near `3.91231` and its mirror `1 − 3.91231`.
pub fn real_axis_zeros_tminus() -> Result<(ZeroRecord, ZeroRecord)> {
    let g = |x: f64| -> Result<f64> { Ok(evaluate(FunctionId::TMinus, Complex64::new(x, 0.0))?.re) };
    let find = |lo: f64, hi: f64| -> Result<(f64, f64)> {
        let (glo, ghi) = (g(lo)?, g(hi)?);
        if (glo < 0.0) == (ghi < 0.0) {
            return Err(Error::NoSignChange { lo, hi });
        }
        let (x, _) = refine_bracket(&g, lo, hi, glo, ghi)?;
        // relative residual: the raw value scaled by the local magnitude
        let scale = g(lo)?.abs().max(g(hi)?.abs());
        Ok((x, g(x)?.abs() / scale))
    };
    let (x_right, r_right) = find(3.5, 4.5)?;
    let (x_left, r_left) = find(-3.5, -2.5)?;
    let rec = |x: f64, residual: f64, index: usize| ZeroRecord {
        function: FunctionId::TMinus,
        index,
        location_kind: LocationKind::RealAxis,
        t_or_x: x,
        residual,
    };
    Ok((rec(x_right, r_right, 1), rec(x_left, r_left, 2)))
}

/// `ds` with the two real-axis zeros appended (𝒯₋ and 𝒯̃₋ only).
pub fn with_real_axis_zeros(ds: &ZeroDataset) -> Result<ZeroDataset> {
    if !matches!(ds.function, FunctionId::TMinus | FunctionId::TMinusTilde) {
        return Err(Error::Domain(format!("{} has no real-axis zeros", ds.function)));
    }
    let (a, b) = real_axis_zeros_tminus()?;
    let mut out = ds.without_real_axis();
    for mut r in [a, b] {
        r.function = ds.function;
        out.records.push(r);
    }
    Ok(out)
}
