//! Complete exponential Bell polynomials and the power-series links between
//! ξ, 𝒯̃₊ and 𝒯̃₋.
//!
//! With `log(F(s)/F(0)) = −Σ σ_k s^k / k`,
//! `F(s)/F(0) = Σ B_k(x_1..x_k) s^k / k!` where `x_j = −σ_j (j−1)!`.

use crate::error::Result;
use crate::special_functions::{evaluate, FunctionId};
use crate::sum_rules::{default_radius, sigma_from_derivatives, zero_points, PowerSeries, SigmaSeries};
use crate::zero_finder::ZeroDataset;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul};

/// Above this argument size the recurrence runs on rescaled arguments.
const RESCALE_THRESHOLD: f64 = 1e3;

/// `B_0..B_n` at one argument vector. The true value of `B_k` is
/// `values[k] · exp(k · log_scale)`; `log_scale` is zero unless some
/// `|x_j|` exceeded `1e3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellTable {
    pub max_order: usize,
    pub values: Vec<f64>,
    pub log_scale: f64,
}

impl BellTable {
    pub fn new(x: &[f64], n: usize) -> BellTable {
        assert!(x.len() >= n, "need {n} arguments, got {}", x.len());
        let x = &x[..n];
        let big = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let log_scale = if big > RESCALE_THRESHOLD {
            // B_k(c x_1, c² x_2, …) = c^k B_k(x), so pick c to make every |x_j/c^j| ≤ 1
            x.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(j, v)| v.abs().ln() / (j + 1) as f64)
                .fold(0.0f64, f64::max)
        } else {
            0.0
        };
        let scaled: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(j, v)| v * (-(j as f64 + 1.0) * log_scale).exp())
            .collect();
        BellTable {
            max_order: n,
            values: bell_recurrence(&scaled, n),
            log_scale,
        }
    }

    /// `B_k`; overflows to ±∞ when the rescaled value cannot be represented.
    pub fn value(&self, k: usize) -> f64 {
        self.values[k] * (k as f64 * self.log_scale).exp()
    }
}

/// `B_{n+1} = Σ_{i=0}^{n} C(n,i) B_{n−i} x_{i+1}`.
fn bell_recurrence<T>(x: &[T], n: usize) -> Vec<T>
where
    T: Copy + From<f64> + Add<Output = T> + Mul<Output = T> + Mul<f64, Output = T>,
{
    let mut b: Vec<T> = Vec::with_capacity(n + 1);
    b.push(T::from(1.0));
    for m in 0..n {
        let mut acc = T::from(0.0);
        let mut binom = 1.0;
        for i in 0..=m {
            acc = acc + b[m - i] * x[i] * binom;
            binom = binom * (m - i) as f64 / (i + 1) as f64;
        }
        b.push(acc);
    }
    b
}

/// `B_n(x_1..x_n)`.
pub fn bell_eval(x: &[f64], n: usize) -> f64 {
    BellTable::new(x, n).value(n)
}

/// Bell arguments `x_j = −σ_j (j−1)!` for `j = 1..k`.
pub fn bell_arguments(sig: &SigmaSeries, k: usize) -> Vec<Complex64> {
    let mut fact = 1.0;
    (1..=k)
        .map(|j| {
            if j > 1 {
                fact *= (j - 1) as f64;
            }
            -sig.sigma(j) * fact
        })
        .collect()
}

/// Complete Bell polynomials `B_0..B_k` at the σ-derived arguments.
pub fn bell_from_sigma(sig: &SigmaSeries, k: usize) -> Vec<Complex64> {
    bell_recurrence(&bell_arguments(sig, k), k)
}

/// Taylor series of `F(s)` about 0 given `F(0)` and its σ-series:
/// coefficient `k` is `F(0) B_k / k!`.
pub fn series_from_sigma(f0: Complex64, sig: &SigmaSeries, order: usize) -> PowerSeries {
    let b = bell_from_sigma(sig, order);
    let mut fact = 1.0;
    let coeffs = b
        .iter()
        .enumerate()
        .map(|(k, &bk)| {
            if k > 0 {
                fact *= k as f64;
            }
            f0 * bk / fact
        })
        .collect();
    PowerSeries {
        center: Complex64::new(0.0, 0.0),
        coeffs,
        radius_used: 0.0,
        resolution_used: 0,
    }
}

/// One coefficient comparison. For the `(1−s)ξ(2s)` link the two parts of
/// the right side are `4𝒯̃₋` and `4(s−½)𝒯̃₊`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkReport {
    pub order: usize,
    pub lhs_coeff: f64,
    pub rhs_coeff: f64,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_parts: Option<(f64, f64)>,
}

impl LinkReport {
    fn new(order: usize, lhs: f64, rhs: f64) -> Self {
        LinkReport {
            order,
            lhs_coeff: lhs,
            rhs_coeff: rhs,
            residual: (lhs - rhs).abs(),
            rhs_parts: None,
        }
    }
}

/// `(σ_1² − σ_2)/2` from the σ-series against `Σ_{k<l} 1/(ρ_k ρ_l)` over the
/// dataset, built up one zero at a time.
pub fn symmetric_sum_check(ds: &ZeroDataset, sig: &SigmaSeries) -> LinkReport {
    let s1 = sig.sigma(1);
    let lhs = (s1 * s1 - sig.sigma(2)) / 2.0;
    LinkReport::new(2, lhs.re, pairwise_sum(&zero_points(ds)).re)
}

/// Second elementary symmetric function of `1/ρ` over `zeros`.
pub fn pairwise_sum(zeros: &[Complex64]) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let (_, e2) = zeros.iter().fold((zero, zero), |(e1, e2), rho| {
        let r = rho.inv();
        (e1 + r, e2 + e1 * r)
    });
    e2
}

/// The three σ-series entering the ξ/𝒯̃± links, derivative route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkInputs {
    pub xi: SigmaSeries,
    pub plus: SigmaSeries,
    pub minus: SigmaSeries,
}

impl LinkInputs {
    pub fn compute(order: usize) -> Result<LinkInputs> {
        let sig = |f| sigma_from_derivatives(f, order, default_radius(f));
        Ok(LinkInputs {
            xi: sig(FunctionId::Xi)?,
            plus: sig(FunctionId::TPlusTilde)?,
            minus: sig(FunctionId::TMinusTilde)?,
        })
    }
}

/// Coefficients `0..=order` of `(1−s) ξ(2s) = 4[𝒯̃₋(s) + (s−½) 𝒯̃₊(s)]`,
/// each side built from Bell series.
pub fn verify_link3(order: usize) -> Result<Vec<LinkReport>> {
    let inputs = LinkInputs::compute(order.max(2))?;
    link3_reports(&inputs, order)
}

pub fn link3_reports(inputs: &LinkInputs, order: usize) -> Result<Vec<LinkReport>> {
    let origin = Complex64::new(0.0, 0.0);
    let xi = series_from_sigma(evaluate(FunctionId::Xi, origin)?, &inputs.xi, order);
    let plus = series_from_sigma(evaluate(FunctionId::TPlusTilde, origin)?, &inputs.plus, order);
    let minus = series_from_sigma(evaluate(FunctionId::TMinusTilde, origin)?, &inputs.minus, order);
    let zero = Complex64::new(0.0, 0.0);
    let prev = |c: &[Complex64], k: usize| if k == 0 { zero } else { c[k - 1] };
    Ok((0..=order)
        .map(|k| {
            let x2 = xi.coeffs[k] * 2f64.powi(k as i32);
            let lhs = x2 - prev(&xi.coeffs, k) * 2f64.powi(k as i32 - 1);
            let first = minus.coeffs[k] * 4.0;
            let second = (prev(&plus.coeffs, k) - plus.coeffs[k] * 0.5) * 4.0;
            let mut r = LinkReport::new(k, lhs.re, (first + second).re);
            r.rhs_parts = Some((first.re, second.re));
            r
        })
        .collect())
}

/// CSV in the layout `order,lhs,rhs_minus,rhs_plus,rhs,residual`.
pub fn link_csv(rows: &[LinkReport]) -> String {
    let mut out = String::from("order,lhs,rhs_minus,rhs_plus,rhs,residual\n");
    for r in rows {
        let (a, b) = r.rhs_parts.unwrap_or((f64::NAN, f64::NAN));
        out.push_str(&format!(
            "{},{:.12e},{:.12e},{:.12e},{:.12e},{:.3e}\n",
            r.order, r.lhs_coeff, a, b, r.rhs_coeff, r.residual
        ));
    }
    out
}

/// Residuals of the σ-level consequences of the ξ/𝒯̃± link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossRelations {
    /// `|σ_1^ξ − (σ_1⁺ + σ_1⁻)/4|`
    pub first_order: f64,
    /// `σ_2^ξ` against its closed form in σ_1±, σ_2±.
    pub second_order: f64,
    /// Relative residual of the order-`k` Bell identity, `k = 1..K`.
    pub general: Vec<f64>,
}

/// `σ_2^ξ = (1/16)[−(σ_1⁻)² + 2σ_2⁻ − 4σ_1⁺ − (σ_1⁺)² + 2σ_1⁻(2 + σ_1⁺) + 2σ_2⁺]`.
pub fn sigma2_xi_closed_form(plus: &SigmaSeries, minus: &SigmaSeries) -> f64 {
    let (p1, p2) = (plus.sigma(1).re, plus.sigma(2).re);
    let (m1, m2) = (minus.sigma(1).re, minus.sigma(2).re);
    (-m1 * m1 + 2.0 * m2 - 4.0 * p1 - p1 * p1 + 2.0 * m1 * (2.0 + p1) + 2.0 * p2) / 16.0
}

/// Checks, for `k = 1..K`,
/// `2^k [B_k^ξ − (k/2) B_{k−1}^ξ] = ½(B_k⁺ + B_k⁻) − k B_{k−1}⁺`,
/// with all Bell polynomials at the σ-derived arguments.
pub fn sigma_cross_relations(xi: &SigmaSeries, plus: &SigmaSeries, minus: &SigmaSeries) -> CrossRelations {
    let order = xi.order().min(plus.order()).min(minus.order());
    let bk = bell_from_sigma(xi, order);
    let bp = bell_from_sigma(plus, order);
    let bm = bell_from_sigma(minus, order);
    let general = (1..=order)
        .map(|k| {
            let kf = k as f64;
            let lhs = (bk[k] - bk[k - 1] * (kf / 2.0)) * 2f64.powi(k as i32);
            let rhs = (bp[k] + bm[k]) * 0.5 - bp[k - 1] * kf;
            (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0)
        })
        .collect();
    let first_order = (xi.sigma(1) - (plus.sigma(1) + minus.sigma(1)) / 4.0).norm();
    let second_order = if order >= 2 {
        (xi.sigma(2).re - sigma2_xi_closed_form(plus, minus)).abs()
    } else {
        f64::NAN
    };
    CrossRelations {
        first_order,
        second_order,
        general,
    }
}
