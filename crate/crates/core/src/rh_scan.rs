//! `𝒰(s) = ξ₁(2s−1)/ξ₁(2s)` and `𝒱(s) = 𝒯₊/𝒯₋ = (1+𝒰)/(1−𝒰)`: zeros of
//! `𝒱′` near the critical line, unit-modulus contours, and the
//! Lagarias–Suzuki threshold `y*`.

use crate::error::{Error, Result};
use crate::numeric::Scaled;
use crate::special_functions::{xi1_scaled, ComplexPoint, EvalOptions};
use crate::zero_finder::ZeroDataset;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Step of the five-point stencil for `𝒱′`. Near t ≈ 1000 values of `𝒱`
/// carry relative noise around 1e-12, which a 1e-5 central difference
/// would turn into 1e-7 in `𝒱′`.
pub const DERIV_STEP: f64 = 1e-3;
/// Wider step for `𝒱″`, used only to form Newton updates.
const SECOND_DERIV_STEP: f64 = 1e-3;
pub const DERIV_TOL: f64 = 1e-8;
const NEWTON_MAX_STEP: f64 = 0.1;
const NEWTON_ITERS: usize = 80;
/// First seed offset from the line, then the alternatives tried on failure.
const SEED_OFFSETS: [f64; 5] = [0.15, -0.15, 0.3, 0.5, 0.7];
/// Roots of `𝒱′` further than this from the line are not attached to a triplet.
const MAX_LINE_DISTANCE: f64 = 2.5;

fn xi1_pair(s: Complex64) -> Result<(Scaled, Scaled)> {
    let opts = EvalOptions::default();
    Ok((xi1_scaled(2.0 * s - 1.0, &opts)?, xi1_scaled(2.0 * s, &opts)?))
}

/// `𝒰(s)`.
pub fn u_func(s: ComplexPoint) -> Result<Complex64> {
    let (num, den) = xi1_pair(s)?;
    if den.is_zero() {
        return Err(Error::pole(s));
    }
    Ok((num / den).to_complex())
}

/// `𝒱(s) = (1+𝒰)/(1−𝒰)`.
pub fn v_func(s: ComplexPoint) -> Result<Complex64> {
    let (num, den) = xi1_pair(s)?;
    let minus = den.sub(num);
    if minus.is_zero() {
        return Err(Error::pole(s));
    }
    Ok((den.add(num) / minus).to_complex())
}

/// `2 Re 𝒰 / (1 + |𝒰|²)`: bounded, finite at poles of `𝒰`, and of the sign
/// of `|𝒱| − 1`.
pub fn unit_indicator(s: ComplexPoint) -> Result<f64> {
    let (num, den) = xi1_pair(s)?;
    // the expression is invariant under 𝒰 → 1/𝒰̄ up to sign-preserving scale
    let r = if num.ln_norm() <= den.ln_norm() {
        (num / den).to_complex()
    } else {
        (den / num).to_complex()
    };
    Ok(2.0 * r.re / (1.0 + r.norm_sqr()))
}

/// Deviations of `|𝒱|` from `1 + √(2π/t)` and of `arg 𝒱` from `−√(2π/t)`,
/// valid for `1 ≪ σ ≪ t`. Both follow from `𝒰 ≈ √(π/t) e^{−iπ/4}` there.
pub fn asymptotic_check(sigma: f64, t: f64) -> Result<(f64, f64)> {
    if !(sigma >= 5.0 && sigma <= t / 20.0) {
        return Err(Error::Domain(format!(
            "asymptotic regime needs 5 ≤ σ ≤ t/20, got σ = {sigma}, t = {t}"
        )));
    }
    let v = v_func(Complex64::new(sigma, t))?;
    let lead = (2.0 * PI / t).sqrt();
    Ok((v.norm() - (1.0 + lead), v.arg() + lead))
}

/// `𝒱′(s)` by the five-point central stencil.
pub fn v_prime(s: ComplexPoint) -> Result<Complex64> {
    let h = DERIV_STEP;
    let near = v_func(s + h)? - v_func(s - h)?;
    let far = v_func(s + 2.0 * h)? - v_func(s - 2.0 * h)?;
    Ok((near * 8.0 - far) / (12.0 * h))
}

fn v_second(s: Complex64) -> Result<Complex64> {
    let h = SECOND_DERIV_STEP;
    Ok((v_func(s + h)? - v_func(s)? * 2.0 + v_func(s - h)?) / (h * h))
}

/// Damped Newton on `𝒱′` from `seed`. `None` if the iteration fails to reach
/// `|𝒱′| ≤ 1e-8`.
pub fn refine_derivative_zero(seed: ComplexPoint) -> Option<Complex64> {
    let mut s = seed;
    for _ in 0..NEWTON_ITERS {
        let d1 = v_prime(s).ok()?;
        let d2 = v_second(s).ok()?;
        let mut step = d1 / d2;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return None;
        }
        if step.norm() > NEWTON_MAX_STEP {
            step *= NEWTON_MAX_STEP / step.norm();
        }
        s -= step;
        if step.norm() < 1e-12 {
            break;
        }
    }
    let d1 = v_prime(s).ok()?;
    (d1.norm() <= DERIV_TOL).then_some(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TripletKind {
    Zpz,
    Pzp,
}

impl TripletKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TripletKind::Zpz => "ZPZ",
            TripletKind::Pzp => "PZP",
        }
    }
}

/// One zero of `𝒱′`, reported by its member with `Re s ≤ ½` (the mirror
/// `1 − s̄` has the same modulus).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripletReport {
    pub s_d: ComplexPoint,
    pub modulus: f64,
    pub triplet_kind: TripletKind,
    /// Ordinals into the merged, increasing sequence of 𝒯₊/𝒯₋ zeros.
    pub anchor_ordinals: [usize; 3],
    pub t_centroid: f64,
    pub condition_met: bool,
    pub derivative_residual: f64,
}

/// A critical-line singular point of `𝒱`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Singular {
    t: f64,
    is_zero: bool,
}

fn merged_sequence(plus: &ZeroDataset, minus: &ZeroDataset) -> Vec<Singular> {
    let mut m: Vec<Singular> = plus
        .ordinates()
        .into_iter()
        .map(|t| Singular { t, is_zero: true })
        .chain(minus.ordinates().into_iter().map(|t| Singular { t, is_zero: false }))
        .collect();
    m.sort_by(|a, b| a.t.total_cmp(&b.t));
    m
}

/// Result of scanning a range of triplets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeScan {
    pub reports: Vec<TripletReport>,
    /// Triplets for which no seed converged.
    pub warnings: Vec<String>,
}

/// Zeros of `𝒱′` for every triplet of consecutive 𝒯₊/𝒯₋ zeros whose
/// centroid lies in `[t_lo, t_hi]`.
///
/// Newton is seeded at the centroid `½ ∓ 0.15` off the line, then at the
/// wider offsets. A root is kept if it lies within one gap of the triplet in
/// `t` and within 2.5 of the line in `σ`. Distinct roots are attached to the
/// triplet with the nearest centroid; several triplets can lead to the same
/// root, so there are fewer reports than triplets.
pub fn find_derivative_zeros(plus: &ZeroDataset, minus: &ZeroDataset, t_lo: f64, t_hi: f64) -> Result<DerivativeScan> {
    let seq = merged_sequence(plus, minus);
    let triplets: Vec<usize> = (0..seq.len().saturating_sub(2))
        .filter(|&i| {
            let c = (seq[i].t + seq[i + 1].t + seq[i + 2].t) / 3.0;
            c >= t_lo && c <= t_hi
        })
        .collect();
    for &i in &triplets {
        let w = &seq[i..i + 3];
        if w[0].is_zero == w[1].is_zero || w[1].is_zero == w[2].is_zero {
            return Err(Error::Domain(format!(
                "zeros of 𝒯₊ and 𝒯₋ do not interlace near t = {}",
                w[1].t
            )));
        }
    }
    let found: Vec<(usize, Option<Complex64>)> = triplets
        .par_iter()
        .map(|&i| {
            let w = &seq[i..i + 3];
            let c = (w[0].t + w[1].t + w[2].t) / 3.0;
            let gap = w[2].t - w[0].t;
            let root = SEED_OFFSETS.iter().find_map(|d| {
                let s = refine_derivative_zero(Complex64::new(0.5 - d, c))?;
                let near = (s.re - 0.5).abs() <= MAX_LINE_DISTANCE && s.im >= w[0].t - gap && s.im <= w[2].t + gap;
                near.then(|| if s.re > 0.5 { Complex64::new(1.0 - s.re, s.im) } else { s })
            });
            (i, root)
        })
        .collect();

    let mut warnings = Vec::new();
    let mut roots: Vec<Complex64> = Vec::new();
    for (i, r) in &found {
        match r {
            Some(s) => {
                if !roots.iter().any(|q| (q - s).norm() < 1e-6) {
                    roots.push(*s);
                }
            }
            None => warnings.push(format!(
                "no derivative zero converged for the triplet starting at t = {:.6}",
                seq[*i].t
            )),
        }
    }
    let centroid = |i: usize| (seq[i].t + seq[i + 1].t + seq[i + 2].t) / 3.0;
    let mut reports = Vec::with_capacity(roots.len());
    for s in roots {
        let &i = triplets
            .iter()
            .min_by(|&&a, &&b| (centroid(a) - s.im).abs().total_cmp(&(centroid(b) - s.im).abs()))
            .expect("roots come from triplets");
        let modulus = v_func(s)?.norm();
        reports.push(TripletReport {
            s_d: s,
            modulus,
            triplet_kind: if seq[i].is_zero { TripletKind::Zpz } else { TripletKind::Pzp },
            anchor_ordinals: [i + 1, i + 2, i + 3],
            t_centroid: centroid(i),
            condition_met: modulus > 1.0,
            derivative_residual: v_prime(s)?.norm(),
        });
    }
    reports.sort_by(|a, b| a.s_d.im.total_cmp(&b.s_d.im));
    Ok(DerivativeScan { reports, warnings })
}

/// Aggregate of the sufficient condition `|𝒱(s_d)| > 1` over a range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionScan {
    pub all_met: bool,
    pub reports: Vec<TripletReport>,
    /// Neighbours of a ZPZ report with modulus above 1 that are not above 1,
    /// and neighbours of a PZP report below 1 that are not below 1.
    pub propagation_violations: Vec<usize>,
    pub warnings: Vec<String>,
}

pub fn condition_scan(plus: &ZeroDataset, minus: &ZeroDataset, t_lo: f64, t_hi: f64) -> Result<ConditionScan> {
    let scan = find_derivative_zeros(plus, minus, t_lo, t_hi)?;
    let r = &scan.reports;
    let mut violations = Vec::new();
    for (i, cur) in r.iter().enumerate() {
        let neighbours = [i.checked_sub(1), (i + 1 < r.len()).then_some(i + 1)];
        for j in neighbours.into_iter().flatten() {
            let bad = match cur.triplet_kind {
                TripletKind::Zpz => cur.modulus > 1.0 && r[j].modulus <= 1.0,
                TripletKind::Pzp => cur.modulus < 1.0 && r[j].modulus >= 1.0,
            };
            if bad && !violations.contains(&j) {
                violations.push(j);
            }
        }
    }
    violations.sort_unstable();
    Ok(ConditionScan {
        all_met: r.iter().all(|x| x.condition_met),
        reports: scan.reports,
        propagation_violations: violations,
        warnings: scan.warnings,
    })
}

/// CSV `t_centroid,re,im,modulus,kind,condition_met`.
pub fn triplet_csv(reports: &[TripletReport]) -> String {
    let mut out = String::from("t_centroid,re,im,modulus,kind,condition_met\n");
    for r in reports {
        out.push_str(&format!(
            "{:.9},{:.9},{:.9},{:.9},{},{}\n",
            r.t_centroid,
            r.s_d.re,
            r.s_d.im,
            r.modulus,
            r.triplet_kind.as_str(),
            r.condition_met
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourPolyline {
    pub level: f64,
    pub points: Vec<ComplexPoint>,
    pub closed: bool,
}

/// A traced `|𝒱| = 1` curve around a 𝒯₊ zero, with the checks made on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitContour {
    pub t_center: f64,
    pub polyline: ContourPolyline,
    /// Ordinates where the curve meets `Re s = ½`.
    pub critical_crossings: Vec<f64>,
    /// Net turns of `arg 𝒱` going once round the curve anticlockwise.
    pub winding: i64,
    /// Zero of `𝒰` (𝒱 = 1) and pole of `𝒰` (𝒱 = −1) reached from the curve.
    pub u_zero: Option<ComplexPoint>,
    pub u_pole: Option<ComplexPoint>,
    /// Largest `||𝒱| − 1|` over the vertices.
    pub max_level_error: f64,
    pub window: (f64, f64),
}

const GRID: usize = 101;
const MAX_EXPANSIONS: usize = 5;

/// Traces the unit-modulus curve enclosing the 𝒯₊ zero at `t_center`.
///
/// `gap` is the local spacing of 𝒯₊ zeros; the first window is
/// `σ ∈ ½ ± 0.75`, `t ∈ t_center ± 0.75·gap`, grown by half on each
/// retry until a closed curve around `½ + i t_center` appears.
pub fn trace_unit_contour(t_center: f64, gap: f64) -> Result<UnitContour> {
    let mut half_w = 0.75;
    let mut half_h = 0.75 * gap;
    for _ in 0..=MAX_EXPANSIONS {
        if let Some(poly) = enclosing_curve(t_center, half_w, half_h)? {
            return finish_contour(t_center, poly, (half_w, half_h));
        }
        half_w *= 1.5;
        half_h *= 1.5;
    }
    Err(Error::OpenContour { t_center })
}

fn enclosing_curve(t_center: f64, half_w: f64, half_h: f64) -> Result<Option<Vec<Complex64>>> {
    let (s0, t0) = (0.5 - half_w, t_center - half_h);
    let (ds, dt) = (2.0 * half_w / (GRID - 1) as f64, 2.0 * half_h / (GRID - 1) as f64);
    let at = |i: usize, j: usize| Complex64::new(s0 + i as f64 * ds, t0 + j as f64 * dt);
    let values: Vec<f64> = (0..GRID * GRID)
        .into_par_iter()
        .map(|k| unit_indicator(at(k % GRID, k / GRID)))
        .collect::<Result<_>>()?;
    let phi = |i: usize, j: usize| values[j * GRID + i];
    let lines = marching_squares(GRID, GRID, &phi);
    let center = Complex64::new(0.5, t_center);
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for line in lines.into_iter().filter(|l| l.closed) {
        let pts: Vec<Complex64> = line
            .edges
            .iter()
            .map(|e| {
                let (a, b) = e.ends();
                let (fa, fb) = (phi(a.0, a.1), phi(b.0, b.1));
                let x = fa / (fa - fb);
                at(a.0, a.1) + (at(b.0, b.1) - at(a.0, a.1)) * x
            })
            .collect();
        if winding_about(&pts, center) == 0 {
            continue;
        }
        let area = signed_area(&pts).abs();
        if best.as_ref().is_none_or(|(a, _)| area < *a) {
            best = Some((area, refine_vertices(&line.edges, &at)?));
        }
    }
    Ok(best.map(|(_, p)| p))
}

/// Moves every vertex onto the zero set of [`unit_indicator`] along its
/// grid edge by bisection.
fn refine_vertices(edges: &[GridEdge], at: &(dyn Fn(usize, usize) -> Complex64 + Sync)) -> Result<Vec<Complex64>> {
    edges
        .par_iter()
        .map(|e| {
            let (a, b) = e.ends();
            let (mut lo, mut hi) = (at(a.0, a.1), at(b.0, b.1));
            let mut flo = unit_indicator(lo)?;
            for _ in 0..40 {
                let mid = (lo + hi) * 0.5;
                let fm = unit_indicator(mid)?;
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            Ok((lo + hi) * 0.5)
        })
        .collect()
}

fn finish_contour(t_center: f64, mut pts: Vec<Complex64>, window: (f64, f64)) -> Result<UnitContour> {
    if signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    let n = pts.len();
    let vs: Vec<Complex64> = pts.par_iter().map(|&s| v_func(s)).collect::<Result<_>>()?;
    let max_level_error = vs.iter().fold(0.0f64, |m, v| m.max((v.norm() - 1.0).abs()));
    let turns: f64 = (0..n).map(|k| (vs[(k + 1) % n] / vs[k]).arg()).sum::<f64>() / (2.0 * PI);

    let mut crossings = Vec::new();
    let mut u_zero = None;
    let mut u_pole = None;
    for k in 0..n {
        let (p, q) = (pts[k], pts[(k + 1) % n]);
        if (p.re < 0.5) != (q.re < 0.5) {
            let x = (0.5 - p.re) / (q.re - p.re);
            crossings.push(p.im + x * (q.im - p.im));
        }
        let (a, b) = (vs[k], vs[(k + 1) % n]);
        if a.im * b.im < 0.0 {
            let x = a.im / (a.im - b.im);
            let guess = p + (q - p) * x;
            if a.re + b.re > 0.0 && u_zero.is_none() {
                u_zero = newton_point(guess, u_func);
            } else if a.re + b.re < 0.0 && u_pole.is_none() {
                u_pole = newton_point(guess, |s| u_func(s).map(|u| u.inv()));
            }
        }
    }
    crossings.sort_by(f64::total_cmp);
    Ok(UnitContour {
        t_center,
        polyline: ContourPolyline {
            level: 1.0,
            points: pts,
            closed: true,
        },
        critical_crossings: crossings,
        winding: turns.round() as i64,
        u_zero,
        u_pole,
        max_level_error,
        window,
    })
}

/// Newton on an analytic `g` with central-difference derivative, accepted
/// once `|g| ≤ 1e-10`.
fn newton_point(seed: Complex64, g: impl Fn(Complex64) -> Result<Complex64>) -> Option<Complex64> {
    let h = 1e-6;
    let mut s = seed;
    for _ in 0..50 {
        let v = g(s).ok()?;
        if v.norm() <= 1e-10 {
            return Some(s);
        }
        let d = (g(s + h).ok()? - g(s - h).ok()?) / (2.0 * h);
        let mut step = v / d;
        if step.norm() > 0.1 {
            step *= 0.1 / step.norm();
        }
        s -= step;
    }
    (g(s).ok()?.norm() <= 1e-10).then_some(s)
}

fn signed_area(p: &[Complex64]) -> f64 {
    let n = p.len();
    (0..n)
        .map(|k| {
            let (a, b) = (p[k], p[(k + 1) % n]);
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
        / 2.0
}

fn winding_about(p: &[Complex64], c: Complex64) -> i64 {
    let n = p.len();
    let total: f64 = (0..n).map(|k| ((p[(k + 1) % n] - c) / (p[k] - c)).arg()).sum();
    (total / (2.0 * PI)).round() as i64
}

/// A grid edge, horizontal `(i,j)–(i+1,j)` or vertical `(i,j)–(i,j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct GridEdge {
    i: usize,
    j: usize,
    vertical: bool,
}

impl GridEdge {
    fn ends(self) -> ((usize, usize), (usize, usize)) {
        if self.vertical {
            ((self.i, self.j), (self.i, self.j + 1))
        } else {
            ((self.i, self.j), (self.i + 1, self.j))
        }
    }
}

struct EdgeChain {
    edges: Vec<GridEdge>,
    closed: bool,
}

/// Level-zero curves of a sampled field, as chains of crossed grid edges.
fn marching_squares(nx: usize, ny: usize, phi: &dyn Fn(usize, usize) -> f64) -> Vec<EdgeChain> {
    use std::collections::HashMap;
    let inside = |i, j| phi(i, j) < 0.0;
    let mut links: HashMap<GridEdge, Vec<GridEdge>> = HashMap::new();
    let mut connect = |a: GridEdge, b: GridEdge| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let c = [inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)];
            // bottom, right, top, left
            let e = [
                GridEdge { i, j, vertical: false },
                GridEdge { i: i + 1, j, vertical: true },
                GridEdge { i, j: j + 1, vertical: false },
                GridEdge { i, j, vertical: true },
            ];
            let crossed: Vec<usize> = (0..4).filter(|&k| c[k] != c[(k + 1) % 4]).collect();
            match crossed.len() {
                2 => connect(e[crossed[0]], e[crossed[1]]),
                4 => {
                    let mean = (phi(i, j) + phi(i + 1, j) + phi(i + 1, j + 1) + phi(i, j + 1)) / 4.0;
                    if (mean < 0.0) == c[0] {
                        // corners 0 and 2 joined through the centre: cut off 1 and 3
                        connect(e[0], e[1]);
                        connect(e[2], e[3]);
                    } else {
                        connect(e[3], e[0]);
                        connect(e[1], e[2]);
                    }
                }
                _ => {}
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut chains = Vec::new();
    let mut starts: Vec<GridEdge> = links.keys().copied().collect();
    starts.sort_by_key(|e| (e.j, e.i, e.vertical));
    // open chains first start from their ends
    starts.sort_by_key(|e| links[e].len() != 1);
    for start in starts {
        if seen.contains(&start) {
            continue;
        }
        let mut chain = vec![start];
        seen.insert(start);
        let mut cur = start;
        let closed;
        loop {
            let next = links[&cur].iter().copied().find(|n| !seen.contains(n));
            match next {
                Some(n) => {
                    seen.insert(n);
                    chain.push(n);
                    cur = n;
                }
                None => {
                    closed = chain.len() > 2 && links[&cur].contains(&start);
                    break;
                }
            }
        }
        chains.push(EdgeChain { edges: chain, closed });
    }
    chains
}

/// `Re(ξ₁(1+2it) y^{it})`, which has the sign of the Lagarias–Suzuki
/// function `ξ₁(2s) y^s + ξ₁(2−2s) y^{1−s}` at `s = ½ + it`.
pub fn lagarias_suzuki_line(y: f64, t: f64) -> Result<f64> {
    let x = xi1_scaled(Complex64::new(1.0, 2.0 * t), &EvalOptions::default())?;
    let phase = x.arg() + t * y.ln();
    Ok(phase.cos() * x.ln_norm().exp())
}

/// The same family at `s = ½ + x` on the real axis.
pub fn lagarias_suzuki_real(y: f64, x: f64) -> Result<f64> {
    let opts = EvalOptions::default();
    let a = xi1_scaled(Complex64::new(1.0 + 2.0 * x, 0.0), &opts)?.to_complex().re;
    let b = xi1_scaled(Complex64::new(1.0 - 2.0 * x, 0.0), &opts)?.to_complex().re;
    Ok(a * y.powf(x) + b * y.powf(-x))
}

/// Closest approach to `s = ½` used by the scans; below it the two pole
/// terms of the family cancel to working precision.
const LS_NEAR: f64 = 1e-3;

fn sign_change_roots(lo: f64, hi: f64, n: usize, geometric: bool, f: impl Fn(f64) -> Result<f64>) -> Result<Vec<f64>> {
    let grid: Vec<f64> = (0..=n)
        .map(|k| {
            let u = k as f64 / n as f64;
            if geometric {
                lo * (hi / lo).powf(u)
            } else {
                lo + (hi - lo) * u
            }
        })
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 0..n {
        if vals[k] * vals[k + 1] < 0.0 {
            let (mut a, mut b, fa) = (grid[k], grid[k + 1], vals[k]);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if (f(m)? < 0.0) == (fa < 0.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
    }
    Ok(out)
}

/// Offsets `x ∈ [1e-3, 0.45]` with `½ ± x` a real zero of the family.
pub fn lagarias_suzuki_offline_zeros(y: f64) -> Result<Vec<f64>> {
    sign_change_roots(LS_NEAR, 0.45, 600, true, |x| lagarias_suzuki_real(y, x))
}

/// Ordinates `t ∈ [1e-3, t_max]` of critical-line zeros of the family.
pub fn lagarias_suzuki_line_zeros(y: f64, t_max: f64) -> Result<Vec<f64>> {
    let n = ((t_max - LS_NEAR) / 0.01).ceil().max(1.0) as usize;
    sign_change_roots(LS_NEAR, t_max, n, false, |t| lagarias_suzuki_line(y, t))
}

/// `y*`: the value of `y` at which the lowest pair of critical-line zeros
/// `½ ± i t₁(y)` meets at `s = ½` and leaves the line.
///
/// `t₁` is followed from `y = 1` in steps of 0.05 until it disappears, then
/// the last step is bisected to `1e-5` on whether a zero remains below the
/// midpoint of `t₁` and `t₂` at the bracket's lower end.
pub fn lagarias_suzuki_y_star() -> Result<f64> {
    let lowest_two = |y: f64| -> Result<Vec<f64>> {
        let mut z = lagarias_suzuki_line_zeros(y, 20.0)?;
        z.truncate(2);
        Ok(z)
    };
    let mut y = 1.0;
    let mut prev = lowest_two(y)?;
    if prev.len() < 2 {
        return Err(Error::Convergence("no critical-line zeros at y = 1".into()));
    }
    while y < 20.0 {
        let next_y = y + 0.05;
        let cur = lowest_two(next_y)?;
        let cap = 0.5 * (prev[0] + prev[1]);
        if cur.first().is_none_or(|&t| t > cap) {
            let (mut lo, mut hi) = (y, next_y);
            while hi - lo > 1e-5 {
                let mid = 0.5 * (lo + hi);
                let z = lagarias_suzuki_line_zeros(mid, cap)?;
                if z.is_empty() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        y = next_y;
        prev = cur;
    }
    Err(Error::Convergence(
        "the lowest zero pair stayed on the line for y ≤ 20".into(),
    ))
}
