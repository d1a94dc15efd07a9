//! Riemann and Hurwitz zeta functions, and the Dirichlet L-function of the
//! non-principal character mod 4, by Euler–Maclaurin summation.

use super::gamma::{ln_gamma, ln_sin_pi};
use crate::error::{Error, Result};
use crate::numeric::{exprel, ComplexSum, Scaled};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

const MAX_BERNOULLI: usize = 80;

/// Tuning for the Euler–Maclaurin evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Lower bound on the number of directly summed terms `N`.
    pub euler_maclaurin_cutoff: usize,
    /// Maximum number of Bernoulli correction terms.
    pub bernoulli_order: usize,
    /// Requested bound on the truncation error, relative to `max(1, |ζ|)`.
    pub target_abs_error: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            euler_maclaurin_cutoff: 50,
            bernoulli_order: 40,
            target_abs_error: 1e-14,
        }
    }
}

impl EvalOptions {
    /// Direct-sum length for argument `s`: at least the configured cutoff and
    /// at least `|s| / 3`, which keeps `|s| / (2πN)` below one half.
    pub fn cutoff_for(&self, s: Complex64) -> usize {
        self.euler_maclaurin_cutoff
            .max((s.norm() / 3.0).ceil() as usize)
    }
}

/// `B_{2k} / (2k)!` for `k = 1..=MAX_BERNOULLI`, from
/// `B_{2k}/(2k)! = (-1)^{k+1} 2 ζ(2k) / (2π)^{2k}`.
fn bernoulli_ratios() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=MAX_BERNOULLI)
            .map(|k| {
                let two_k = 2 * k as i32;
                let zeta_2k = match k {
                    1 => PI * PI / 6.0,
                    2 => PI.powi(4) / 90.0,
                    _ => {
                        let mut acc: f64 = (1..=1000).rev().map(|n| (n as f64).powi(-two_k)).sum();
                        acc += 1000.5f64.powi(1 - two_k) / (two_k - 1) as f64;
                        acc
                    }
                };
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta_2k / (2.0 * PI).powi(two_k)
            })
            .collect()
    })
}

/// Euler–Maclaurin remainder after `N` direct terms, for shift `a`:
/// `x^{1-s}/(s-1) + x^{-s}/2 + Σ_k B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}` with
/// `x = N + a`. The first term is passed in precomputed so that callers can
/// combine differences stably. Returns (tail, error estimate).
fn em_corrections(s: Complex64, x: f64, opts: &EvalOptions) -> (Complex64, f64) {
    let b = bernoulli_ratios();
    let x_pow = (-s * x.ln()).exp();
    let mut acc = ComplexSum::new();
    acc.add(x_pow * 0.5);
    let mut term = s * x_pow / x * b[0];
    let mut last = term.norm();
    acc.add(term);
    let order = opts.bernoulli_order.min(MAX_BERNOULLI);
    let x2 = x * x;
    for k in 1..order {
        let kf = k as f64;
        let next = term * (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf) / x2 * (b[k] / b[k - 1]);
        let mag = next.norm();
        if mag > last {
            // asymptotic series started to diverge
            break;
        }
        term = next;
        last = mag;
        acc.add(term);
        if mag < 1e-18 {
            break;
        }
    }
    (acc.value(), last)
}

fn hurwitz_direct(s: Complex64, a: f64, n_terms: usize) -> ComplexSum {
    let mut acc = ComplexSum::new();
    for n in (0..n_terms).rev() {
        acc.add((-s * (n as f64 + a).ln()).exp());
    }
    acc
}

/// Hurwitz zeta by Euler–Maclaurin; valid for any `s ≠ 1`, accurate when
/// `Re s` is not strongly negative.
fn hurwitz_em(s: Complex64, a: f64, opts: &EvalOptions) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut n = opts.cutoff_for(s);
    for _ in 0..4 {
        let x = n as f64 + a;
        let mut acc = hurwitz_direct(s, a, n);
        acc.add((-(s - one) * x.ln()).exp() / (s - one));
        let (tail, err) = em_corrections(s, x, opts);
        acc.add(tail);
        let value = acc.value();
        if err <= opts.target_abs_error * value.norm().max(1.0) {
            return Ok(value);
        }
        n *= 2;
    }
    let x = n as f64 + a;
    let (_, err) = em_corrections(s, x, opts);
    Err(Error::Accuracy {
        estimate: err,
        target: opts.target_abs_error,
    })
}

/// Riemann zeta function ζ(s).
pub fn riemann_zeta(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole(s));
    }
    if s.re < 0.0 {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let one = Complex64::new(1.0, 0.0);
        let reflected = hurwitz_em(one - s, 1.0, opts)?;
        let half = s * 0.5;
        if half.im == 0.0 && half.re.fract() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let log_factor = s * 2f64.ln() + (s - one) * PI.ln() + ln_sin_pi(half) + ln_gamma(one - s);
        return Ok((Scaled::exp(log_factor) * reflected).to_complex());
    }
    hurwitz_em(s, 1.0, opts)
}

/// Hurwitz zeta function ζ(s, a) for `0 < a ≤ 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64, opts: &EvalOptions) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("Hurwitz shift a = {a} outside (0, 1]")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole(s));
    }
    hurwitz_em(s, a, opts)
}

/// `L(s, χ_{-4}) = 4^{-s} [ζ(s, 1/4) − ζ(s, 3/4)]`, summed as one series so
/// that the two `1/(s-1)` poles cancel analytically. Intended for `Re s ≥ 0`.
pub fn dirichlet_l4(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    let mut n = opts.cutoff_for(s);
    let four_pow = (-s * 4f64.ln()).exp();
    for _ in 0..4 {
        let x1 = n as f64 + 0.25;
        let x3 = n as f64 + 0.75;
        let mut acc = hurwitz_direct(s, 0.25, n);
        let minus = hurwitz_direct(s, 0.75, n);
        acc.add(-minus.value());
        // (x1^{1-s} − x3^{1-s})/(s−1) = −x3^{1-s} ln(x1/x3) exprel(−(s−1) ln(x1/x3))
        let w = s - 1.0;
        let ratio_ln = (x1 / x3).ln();
        let bracket = -(-w * x3.ln()).exp() * ratio_ln * exprel(-w * ratio_ln);
        acc.add(bracket);
        let (t1, e1) = em_corrections(s, x1, opts);
        let (t3, e3) = em_corrections(s, x3, opts);
        acc.add(t1);
        acc.add(-t3);
        let value = acc.value() * four_pow;
        let err = (e1 + e3) * four_pow.norm();
        if err <= opts.target_abs_error * value.norm().max(1.0) {
            return Ok(value);
        }
        n *= 2;
    }
    Err(Error::Accuracy {
        estimate: f64::NAN,
        target: opts.target_abs_error,
    })
}
