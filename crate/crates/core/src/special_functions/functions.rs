//! The zeta-type functions built on ζ, Γ and L₋₄, and their real forms on
//! the critical line.

use super::gamma::ln_gamma;
use super::zeta::{dirichlet_l4, riemann_zeta, EvalOptions};
use crate::error::{Error, Result};
use crate::numeric::{Scaled, EULER_GAMMA};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

pub type ComplexPoint = Complex64;

/// Supported functions.
///
/// `Xi1` is `π^{-s/2} Γ(s/2) ζ(s)`; `Xi` is `½ s(s−1) ξ₁(s)`.
/// `TPlus`, `TMinus` are `¼[ξ₁(2s) ± ξ₁(2s−1)]`; the tilde forms multiply by
/// `s(1−s)` and `s(1−s)(s−½)` respectively. `L4Completed` is
/// `Γ(s) L₋₄(s) / (π^{s/2} Γ(s/2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FunctionId {
    Xi,
    Xi1,
    TPlus,
    TMinus,
    TPlusTilde,
    TMinusTilde,
    L4,
    L4Completed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// `f(1−s) = f(s)`
    Even,
    /// `f(1−s) = −f(s)`
    Odd,
    None,
}

impl FunctionId {
    pub const ALL: [FunctionId; 8] = [
        FunctionId::Xi,
        FunctionId::Xi1,
        FunctionId::TPlus,
        FunctionId::TMinus,
        FunctionId::TPlusTilde,
        FunctionId::TMinusTilde,
        FunctionId::L4,
        FunctionId::L4Completed,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FunctionId::Xi => "XI",
            FunctionId::Xi1 => "XI1",
            FunctionId::TPlus => "T_PLUS",
            FunctionId::TMinus => "T_MINUS",
            FunctionId::TPlusTilde => "T_PLUS_TILDE",
            FunctionId::TMinusTilde => "T_MINUS_TILDE",
            FunctionId::L4 => "L4",
            FunctionId::L4Completed => "L4_COMPLETED",
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            FunctionId::TMinus => Parity::Odd,
            FunctionId::L4 => Parity::None,
            _ => Parity::Even,
        }
    }

    /// Genuine poles on the real axis.
    pub fn poles(self) -> &'static [f64] {
        match self {
            FunctionId::Xi1 | FunctionId::TPlus => &[0.0, 1.0],
            FunctionId::TMinus => &[0.0, 0.5, 1.0],
            _ => &[],
        }
    }

    /// Points where the defining formula is 0/0 or ∞−∞ but the function is analytic.
    pub fn removable_points(self) -> &'static [f64] {
        match self {
            FunctionId::Xi => &[0.0, 1.0],
            FunctionId::TPlus => &[0.5],
            FunctionId::TPlusTilde | FunctionId::TMinusTilde => &[0.0, 0.5, 1.0],
            _ => &[],
        }
    }

    /// The tags with a real-valued critical-line form.
    pub fn has_critical_line_form(self) -> bool {
        matches!(
            self,
            FunctionId::Xi | FunctionId::TPlus | FunctionId::TMinus | FunctionId::L4Completed
        )
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        FunctionId::ALL
            .iter()
            .copied()
            .find(|f| f.tag() == norm)
            .ok_or_else(|| Error::Domain(format!("unknown function tag {s:?}")))
    }
}

const REMOVABLE_THRESHOLD: f64 = 1e-3;
const REMOVABLE_RADIUS: f64 = 1e-2;
const REMOVABLE_POINTS: usize = 16;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `ξ₁(s)` as an exponent-carrying value; reflects to `Re s ≥ ½`.
pub fn xi1_scaled(s: Complex64, opts: &EvalOptions) -> Result<Scaled> {
    let s = if s.re < 0.5 { c(1.0, 0.0) - s } else { s };
    let z = riemann_zeta(s, opts)?;
    Ok(Scaled::exp(ln_gamma(s * 0.5) - s * (0.5 * PI.ln())) * z)
}

/// `Γ(s)/(π^{s/2}Γ(s/2)) = 2^{s−1} π^{−(s+1)/2} Γ((s+1)/2)` by duplication.
fn l4_gamma_factor(s: Complex64) -> Scaled {
    let one = c(1.0, 0.0);
    Scaled::exp((s - one) * LN_2 - (s + one) * (0.5 * PI.ln()) + ln_gamma((s + one) * 0.5))
}

/// Evaluation away from removable points, with `Re s ≥ ½` for the symmetric tags.
fn raw_scaled(f: FunctionId, s: Complex64, opts: &EvalOptions) -> Result<Scaled> {
    let one = c(1.0, 0.0);
    let t_pair = |sign: f64| -> Result<Scaled> {
        let a = xi1_scaled(s * 2.0, opts)?;
        let b = xi1_scaled(s * 2.0 - one, opts)?;
        Ok(a.add(b.scale(sign)).scale(0.25))
    };
    Ok(match f {
        FunctionId::Xi1 => xi1_scaled(s, opts)?,
        FunctionId::Xi => xi1_scaled(s, opts)? * (s * (s - one) * 0.5),
        FunctionId::TPlus => t_pair(1.0)?,
        FunctionId::TMinus => t_pair(-1.0)?,
        FunctionId::TPlusTilde => t_pair(1.0)? * (s * (one - s)),
        FunctionId::TMinusTilde => t_pair(-1.0)? * (s * (one - s) * (s - 0.5)),
        FunctionId::L4 => {
            if s.re >= 0.5 {
                Scaled::from_complex(dirichlet_l4(s, opts)?)
            } else {
                // L(s) = Λ(1−s) / [Γ(s)/(π^{s/2}Γ(s/2))]
                let r = one - s;
                let completed = l4_gamma_factor(r) * dirichlet_l4(r, opts)?;
                let recip = Scaled::exp(
                    -(s - one) * LN_2 + (s + one) * (0.5 * PI.ln()) - ln_gamma((s + one) * 0.5),
                );
                if (s + one).im == 0.0 && ((s.re + 1.0) * 0.5).fract() == 0.0 && s.re < 0.0 {
                    // trivial zeros at the negative odd integers
                    return Ok(Scaled::from_complex(c(0.0, 0.0)));
                }
                completed * recip
            }
        }
        FunctionId::L4Completed => l4_gamma_factor(s) * dirichlet_l4(s, opts)?,
    })
}

fn symmetric_scaled(f: FunctionId, s: Complex64, opts: &EvalOptions) -> Result<Scaled> {
    if s.re < 0.5 {
        let r = c(1.0, 0.0) - s;
        match f.parity() {
            Parity::Even => return raw_scaled(f, r, opts),
            Parity::Odd => return raw_scaled(f, r, opts).map(|v| v.scale(-1.0)),
            Parity::None => {}
        }
    }
    raw_scaled(f, s, opts)
}

/// Cauchy integral over a small circle around a removable point `p`.
fn removable_scaled(f: FunctionId, s: Complex64, p: f64, opts: &EvalOptions) -> Result<Scaled> {
    let centre = c(p, 0.0);
    let mut acc = c(0.0, 0.0);
    for k in 0..REMOVABLE_POINTS {
        let phi = 2.0 * PI * (k as f64 + 0.5) / REMOVABLE_POINTS as f64;
        let offset = Complex64::from_polar(REMOVABLE_RADIUS, phi);
        let z = centre + offset;
        let v = symmetric_scaled(f, z, opts)?.to_complex();
        acc += v * offset / (z - s);
    }
    Ok(Scaled::from_complex(acc / REMOVABLE_POINTS as f64))
}

/// Evaluates `f` at `s` as an exponent-carrying value.
pub fn evaluate_scaled(f: FunctionId, s: ComplexPoint, opts: &EvalOptions) -> Result<Scaled> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if f.poles().iter().any(|&p| s == c(p, 0.0)) {
        return Err(Error::pole(s));
    }
    let value = match f
        .removable_points()
        .iter()
        .find(|&&p| (s - c(p, 0.0)).norm() < REMOVABLE_THRESHOLD)
    {
        Some(&p) => removable_scaled(f, s, p, opts)?,
        None => symmetric_scaled(f, s, opts)?,
    };
    if !(value.mantissa.re.is_finite() && value.mantissa.im.is_finite() && value.log_scale.is_finite())
        && !value.is_zero()
    {
        return Err(Error::Accuracy {
            estimate: f64::INFINITY,
            target: opts.target_abs_error,
        });
    }
    Ok(value)
}

/// Evaluates `f` at `s`; values below the `f64` range flush to zero.
pub fn evaluate_with(f: FunctionId, s: ComplexPoint, opts: &EvalOptions) -> Result<ComplexPoint> {
    evaluate_scaled(f, s, opts).map(|v| v.to_complex())
}

pub fn evaluate(f: FunctionId, s: ComplexPoint) -> Result<ComplexPoint> {
    evaluate_with(f, s, &EvalOptions::default())
}

fn require_line_form(f: FunctionId) -> Result<()> {
    if f.has_critical_line_form() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{f} has no real critical-line form")))
    }
}

const T_MINUS_POLE_GUARD: f64 = 1e-6;

/// Real value on `s = ½ + it`: `ξ`, `𝒯₊`, `𝒯₋/i` or the completed L₋₄.
pub fn critical_line_form(f: FunctionId, t: f64) -> Result<f64> {
    require_line_form(f)?;
    if f == FunctionId::TMinus && t.abs() < T_MINUS_POLE_GUARD {
        return Err(Error::pole(c(0.5, t)));
    }
    let v = evaluate(f, c(0.5, t))?;
    Ok(if f == FunctionId::TMinus { v.im } else { v.re })
}

/// `ln M(t)` for the positive factor `M` with
/// `critical_line_form(f, t) = M(t) · critical_line_normalized(f, t)`.
pub fn critical_line_log_scale(f: FunctionId, t: f64) -> Result<f64> {
    require_line_form(f)?;
    let ln_pi = PI.ln();
    Ok(match f {
        FunctionId::Xi => {
            let s = c(0.5, t);
            (0.5 * (0.25 + t * t)).ln() + ln_gamma(s * 0.5).re - 0.25 * ln_pi
        }
        FunctionId::TPlus | FunctionId::TMinus => -LN_2 - 0.5 * ln_pi + ln_gamma(c(0.5, t)).re,
        _ => -0.5 * LN_2 - 0.75 * ln_pi + ln_gamma(c(0.75, 0.5 * t)).re,
    })
}

/// Sign-faithful critical-line form with the exponentially small modulus
/// factor removed. Bounded by a power of `t`, so usable up to any height
/// the zeta kernel supports.
pub fn critical_line_normalized(f: FunctionId, t: f64) -> Result<f64> {
    critical_line_normalized_with(f, t, &EvalOptions::default())
}

pub fn critical_line_normalized_with(f: FunctionId, t: f64, opts: &EvalOptions) -> Result<f64> {
    require_line_form(f)?;
    let ln_pi = PI.ln();
    match f {
        FunctionId::Xi => {
            let s = c(0.5, t);
            let theta = ln_gamma(s * 0.5).im - 0.5 * t * ln_pi;
            let z = riemann_zeta(s, opts)?;
            Ok(-(Complex64::from_polar(1.0, theta) * z).re)
        }
        FunctionId::TPlus | FunctionId::TMinus => {
            if f == FunctionId::TMinus && t.abs() < T_MINUS_POLE_GUARD {
                return Err(Error::pole(c(0.5, t)));
            }
            if f == FunctionId::TPlus && t.abs() < REMOVABLE_THRESHOLD {
                let v = evaluate_with(f, c(0.5, t), opts)?.re;
                return Ok(v / critical_line_log_scale(f, t)?.exp());
            }
            let theta = ln_gamma(c(0.5, t)).im - t * ln_pi;
            let z = riemann_zeta(c(1.0, 2.0 * t), opts)?;
            let w = Complex64::from_polar(1.0, theta) * z;
            Ok(if f == FunctionId::TPlus { w.re } else { w.im })
        }
        _ => {
            let s = c(0.5, t);
            let theta = ln_gamma(c(0.75, 0.5 * t)).im + t * LN_2 - 0.5 * t * ln_pi;
            let l = dirichlet_l4(s, opts)?;
            Ok((Complex64::from_polar(1.0, theta) * l).re)
        }
    }
}

/// Residue and constant Laurent coefficient of `𝒯₊` at `s = 0` or `s = 1`,
/// by trapezoidal averaging on a circle of radius ¼.
pub fn laurent_check(f: FunctionId, pole: ComplexPoint) -> Result<(f64, f64)> {
    if f != FunctionId::TPlus || pole.im != 0.0 || !(pole.re == 0.0 || pole.re == 1.0) {
        return Err(Error::Domain(format!(
            "Laurent check is defined for T_PLUS at 0 or 1, not {f} at {pole}"
        )));
    }
    const N: usize = 64;
    let radius = 0.25;
    let opts = EvalOptions::default();
    let mut residue = c(0.0, 0.0);
    let mut constant = c(0.0, 0.0);
    for k in 0..N {
        let phi = 2.0 * PI * k as f64 / N as f64;
        let h = Complex64::from_polar(radius, phi);
        let v = evaluate_with(f, pole + h, &opts)?;
        residue += v * h;
        constant += v;
    }
    Ok((residue.re / N as f64, constant.re / N as f64))
}

/// Consistency of the ξ₁ normalization with the pole structure of 𝒯₊.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfTestReport {
    pub residue_at_0: f64,
    pub residue_at_1: f64,
    pub constant_at_0: f64,
    pub t_plus_half: f64,
    pub xi_at_0: f64,
}

pub fn self_test() -> Result<SelfTestReport> {
    let (r0, c0) = laurent_check(FunctionId::TPlus, c(0.0, 0.0))?;
    let (r1, _) = laurent_check(FunctionId::TPlus, c(1.0, 0.0))?;
    let half = evaluate(FunctionId::TPlus, c(0.5, 0.0))?.re;
    let xi0 = evaluate(FunctionId::Xi, c(0.0, 0.0))?.re;
    let ln4pi = (4.0 * PI).ln();
    let checks = [
        (r0, -0.125),
        (r1, 0.125),
        (c0, (3.0 * EULER_GAMMA + PI - 3.0 * ln4pi) / 24.0),
        (half, (EULER_GAMMA - ln4pi) / 4.0),
        (xi0, 0.5),
    ];
    let worst = checks.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if worst > 1e-10 {
        return Err(Error::Accuracy {
            estimate: worst,
            target: 1e-10,
        });
    }
    Ok(SelfTestReport {
        residue_at_0: r0,
        residue_at_1: r1,
        constant_at_0: c0,
        t_plus_half: half,
        xi_at_0: xi0,
    })
}
