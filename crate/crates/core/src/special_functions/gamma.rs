//! Complex Gamma function via the Lanczos approximation (g = 7, n = 9).
//!
//! Everything is computed as `ln Γ` so that arguments with large imaginary
//! part, where `|Γ|` underflows, stay usable. The imaginary part of the
//! returned logarithm is only defined modulo `2π`.

use crate::error::{Error, Result};
use crate::numeric::Scaled;
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// `ln Γ(z)` for any `z` off the poles. Uses reflection for `Re z < 1/2`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(one - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + x.ln() + HALF_LN_2PI
}

/// `ln sin(π z)`, stable when `|Im z|` is large enough that `sin` overflows.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.im.abs() < 15.0 {
        return (z * PI).sin().ln();
    }
    // sin(πz) = e^{∓iπz} (e^{±2iπz} − 1)/(±2i), choosing the decaying exponential.
    if z.im > 0.0 {
        let small = (2.0 * i * PI * z).exp();
        -i * PI * z + ((small - 1.0) / (2.0 * i)).ln()
    } else {
        let small = (-2.0 * i * PI * z).exp();
        i * PI * z + ((1.0 - small) / (2.0 * i)).ln()
    }
}

/// Γ(z) as an exponent-carrying value.
pub fn gamma_scaled(z: Complex64) -> Result<Scaled> {
    if is_nonpositive_integer(z) {
        return Err(Error::pole(z));
    }
    Ok(Scaled::exp(ln_gamma(z)))
}

/// Γ(z). Relative accuracy is about `1e-15 · (1 + |z ln z|)`; for large
/// `|z|` the condition number of Γ itself dominates.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    gamma_scaled(z).map(|g| g.to_complex())
}

/// Reciprocal Gamma, zero at the poles of Γ.
pub fn recip_gamma_scaled(z: Complex64) -> Scaled {
    if is_nonpositive_integer(z) {
        return Scaled::from_complex(Complex64::new(0.0, 0.0));
    }
    Scaled::exp(-ln_gamma(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Stirling series with upward shift, independent of the Lanczos path.
    fn stirling_ln_gamma(z: Complex64) -> Complex64 {
        // B_{2k} for k = 1..15
        const B: [f64; 15] = [
            1.0 / 6.0,
            -1.0 / 30.0,
            1.0 / 42.0,
            -1.0 / 30.0,
            5.0 / 66.0,
            -691.0 / 2730.0,
            7.0 / 6.0,
            -3617.0 / 510.0,
            43867.0 / 798.0,
            -174611.0 / 330.0,
            854513.0 / 138.0,
            -236364091.0 / 2730.0,
            8553103.0 / 6.0,
            -23749461029.0 / 870.0,
            8615841276005.0 / 14322.0,
        ];
        let mut w = z;
        let mut shift = Complex64::new(0.0, 0.0);
        while w.norm() < 15.0 {
            shift += w.ln();
            w += 1.0;
        }
        let mut acc = (w - 0.5) * w.ln() - w + HALF_LN_2PI;
        let w2 = w * w;
        let mut wp = w;
        for (k, b) in B.iter().enumerate() {
            let k = (k + 1) as f64;
            acc += *b / (2.0 * k * (2.0 * k - 1.0) * wp);
            wp *= w2;
        }
        acc - shift
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert!((g.re - PI.sqrt()).abs() < 1e-14);
        assert!(g.im.abs() < 1e-15);
    }

    #[test]
    fn gamma_integers_are_factorials() {
        let g = gamma(Complex64::new(5.0, 0.0)).unwrap();
        assert!((g.re - 24.0).abs() < 24.0 * 1e-14);
        let g = gamma(Complex64::new(11.0, 0.0)).unwrap();
        assert!((g.re - 3_628_800.0).abs() < 3_628_800.0 * 1e-14);
    }

    #[test]
    fn gamma_matches_stirling_oracle_on_critical_line() {
        let z = Complex64::new(0.5, 100.0);
        let lanczos = gamma(z).unwrap();
        let oracle = stirling_ln_gamma(z).exp();
        assert!(rel(lanczos, oracle) < 1e-12, "{}", rel(lanczos, oracle));
    }

    #[test]
    fn ln_gamma_agrees_with_stirling_across_plane() {
        for &(x, y) in &[
            (0.25, 1250.0),
            (0.75, -600.0),
            (3.0, 7.0),
            (-2.5, 3.0),
            (-7.3, -0.2),
            (10.0, 4000.0),
            (0.6, 0.0),
        ] {
            let z = Complex64::new(x, y);
            let d = ln_gamma(z) - stirling_ln_gamma(z);
            // imaginary parts may differ by a multiple of 2π
            let wrap = (d.im / (2.0 * PI)).round() * 2.0 * PI;
            // the oracle's own shift costs about 1e-14 absolute
            let tol = 1e-14 + 4e-15 * (z * z.ln()).norm();
            assert!(d.re.abs() < tol, "re at {z}: {d}");
            assert!((d.im - wrap).abs() < tol, "im at {z}: {d}");
        }
    }

    #[test]
    fn reflection_is_stable_far_from_real_axis() {
        let z = Complex64::new(-0.3, 900.0);
        let lg = ln_gamma(z);
        assert!(lg.re.is_finite() && lg.im.is_finite());
        // Γ(z)Γ(1−z) = π / sin(πz)
        let lhs = lg + ln_gamma(Complex64::new(1.0, 0.0) - z);
        let rhs = Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z);
        let d = lhs - rhs;
        let wrap = (d.im / (2.0 * PI)).round() * 2.0 * PI;
        assert!(d.re.abs() < 1e-10 && (d.im - wrap).abs() < 1e-10);
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(gamma(Complex64::new(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(Complex64::new(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(gamma(Complex64::new(-3.0, 1e-9)).is_ok());
    }
}
