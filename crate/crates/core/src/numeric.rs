//! Small numerical building blocks: compensated accumulators, an
//! exponent-carrying complex type, and a few complex helpers.

use num_complex::Complex64;
use std::ops::{Div, Mul};

/// Neumaier (improved Kahan–Babuška) accumulator for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator in; used to merge per-block partial sums.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Componentwise Neumaier accumulator for complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = ComplexSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Sums `values` in fixed-size blocks, each with its own compensated
/// accumulator, then merges the blocks in index order. The result only
/// depends on `block`, not on how blocks are scheduled across threads.
pub fn blocked_complex_sum(values: &[Complex64], block: usize) -> Complex64 {
    use rayon::prelude::*;
    let block = block.max(1);
    let partials: Vec<ComplexSum> = values
        .par_chunks(block)
        .map(|chunk| chunk.iter().copied().collect())
        .collect();
    let mut total = ComplexSum::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

/// A complex number stored as `mantissa * exp(log_scale)`.
///
/// The completed zeta-type functions carry a factor of size `exp(-pi t / 4)`
/// on the critical line, which leaves the `f64` range long before the zero
/// scans do. Products and ratios stay exact in this form; only the final
/// conversion may underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl Scaled {
    pub fn new(mantissa: Complex64, log_scale: f64) -> Self {
        Self { mantissa, log_scale }.normalized()
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0.0)
    }

    /// `exp(w)` for complex `w`, without overflow.
    pub fn exp(w: Complex64) -> Self {
        Self {
            mantissa: Complex64::from_polar(1.0, w.im),
            log_scale: w.re,
        }
    }

    fn normalized(self) -> Self {
        let r = self.mantissa.norm();
        if r == 0.0 || !r.is_finite() {
            return self;
        }
        let l = r.ln();
        Self {
            mantissa: self.mantissa / r,
            log_scale: self.log_scale + l,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.norm() == 0.0
    }

    pub fn to_complex(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }

    /// Natural log of the modulus.
    pub fn ln_norm(&self) -> f64 {
        self.log_scale + self.mantissa.norm().ln()
    }

    pub fn arg(&self) -> f64 {
        self.mantissa.arg()
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.mantissa * k, self.log_scale)
    }

    pub fn conj(self) -> Self {
        Self {
            mantissa: self.mantissa.conj(),
            log_scale: self.log_scale,
        }
    }

    pub fn add(self, other: Scaled) -> Scaled {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let e = self.log_scale.max(other.log_scale);
        let m = self.mantissa * (self.log_scale - e).exp()
            + other.mantissa * (other.log_scale - e).exp();
        Scaled::new(m, e)
    }

    pub fn sub(self, other: Scaled) -> Scaled {
        self.add(other.scale(-1.0))
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled::new(self.mantissa * rhs.mantissa, self.log_scale + rhs.log_scale)
    }
}

impl Mul<Complex64> for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Complex64) -> Scaled {
        Scaled::new(self.mantissa * rhs, self.log_scale)
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        Scaled::new(self.mantissa / rhs.mantissa, self.log_scale - rhs.log_scale)
    }
}

/// `(exp(z) - 1) / z`, accurate near zero.
pub fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        // 1 + z/2! + z^2/3! + ... ; 25 terms reach 1e-17 at |z| = 0.5
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..=26 {
            term = term * z / k as f64;
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `exp(z) − 1`, accurate near zero.
pub fn expm1(z: Complex64) -> Complex64 {
    z * exprel(z)
}

/// `log(1 + z)`, accurate near zero; principal branch.
pub fn ln1p(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        // log(1+z) = 2 atanh(w), w = z/(2+z), |w| < 1/3
        let w = z / (z + 2.0);
        let w2 = w * w;
        let mut term = w;
        let mut acc = w;
        for k in 1..40 {
            term *= w2;
            acc += term / (2 * k + 1) as f64;
        }
        acc * 2.0
    } else {
        (z + 1.0).ln()
    }
}

/// Binomial coefficient as `f64`; exact for the moderate arguments used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    if acc < 9.0e15 {
        acc.round()
    } else {
        acc
    }
}

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
