//! Acceptance run: one line per criterion, then a nonzero exit if any
//! criterion outside `KNOWN_UNATTAINABLE` fails.

use num_complex::Complex64;
use std::process::ExitCode;
use std::time::Instant;
use zetarules::bell_expansion::{bell_eval, symmetric_sum_check, verify_link3};
use zetarules::rh_scan::{condition_scan, find_derivative_zeros, lagarias_suzuki_y_star, u_func, v_func, TripletReport};
use zetarules::special_functions::evaluate;
use zetarules::sum_rules::{
    default_radius, inverse_square_modulus_sum, keiper_identity_residuals, least_squares_slope,
    sigma_from_derivatives, tau_lambda_from_sigma, verify_sum_rule, SigmaSeries,
};
use zetarules::translations::{
    interlacing_report, ratio_identity_check, translated_sigma, translation_window_search, xi_halfshift_zeros,
    InterlaceMode,
};
use zetarules::zero_finder::{
    count_check, first_n_zeros, real_axis_zeros_tminus, scan_zeros_default, with_real_axis_zeros, ZeroDataset,
};
use zetarules::FunctionId;

/// Criteria that cannot pass as stated, with the reason printed beside them.
const KNOWN_UNATTAINABLE: [(usize, &str); 2] = [
    (
        7,
        "the T+~ lambda slope over k = 1..30 is about 0.063 by both routes; 0.089 is not reproduced",
    ),
    (
        13,
        "the second zero sits at 418.4922, not 418.4092 (digits transposed); modulus and real part match",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sigma(f: FunctionId, k: usize) -> SigmaSeries {
    sigma_from_derivatives(f, k, default_radius(f)).unwrap()
}

/// Half a unit in the last place of a value printed with `sig` significant digits.
fn half_unit(printed: f64, sig: i32) -> f64 {
    0.5 * 10f64.powi(printed.abs().log10().floor() as i32 - (sig - 1))
}

/// `printed` carries `sig` significant digits; `x` must round to it.
fn matches_printed(x: f64, printed: f64, sig: i32) -> bool {
    (x - printed).abs() <= half_unit(printed, sig) * (1.0 + 1e-9)
}

/// Rows m = 3..6 against the printed (lhs, rhs, significant digits) columns.
fn table(f: FunctionId, ds: &ZeroDataset, printed: [(f64, f64, i32); 4]) -> Outcome {
    let rows = verify_sum_rule(f, ds, 3..=6).unwrap();
    let mut bad = Vec::new();
    for (r, (lhs, rhs, sig)) in rows.iter().zip(printed) {
        if !matches_printed(r.lhs, lhs, sig) || !matches_printed(r.rhs, rhs, sig) {
            bad.push(format!("m={} lhs {:.6e} rhs {:.6e}", r.m, r.lhs, r.rhs));
        }
    }
    let n = ds.records.len();
    if bad.is_empty() {
        outcome(true, format!("{f}, {n} zeros: m=3..6 match in both columns"))
    } else {
        outcome(false, format!("{f}, {n} zeros: {}", bad.join("; ")))
    }
}

/// Deterministic points spread over `|s| ≤ 20` and away from 0, ½, 1.
fn sample_points(n: usize) -> Vec<Complex64> {
    let (a, b) = (0.618_033_988_749_895, 0.754_877_666_246_693);
    (1..)
        .map(|k| c(-8.0 + 17.0 * (k as f64 * a).fract(), -20.0 + 40.0 * (k as f64 * b).fract()))
        .filter(|s| s.norm() <= 20.0 && [0.0, 0.5, 1.0].iter().all(|p| (s - c(*p, 0.0)).norm() > 0.05))
        .take(n)
        .collect()
}

fn nearest(reports: &[TripletReport], s: Complex64) -> &TripletReport {
    reports.iter().min_by(|a, b| (a.s_d - s).norm().total_cmp(&(b.s_d - s).norm())).unwrap()
}

struct Data {
    xi: ZeroDataset,
    plus: ZeroDataset,
    minus_real: ZeroDataset,
    l4: ZeroDataset,
    xi_seconds: f64,
}

fn load() -> Data {
    let start = Instant::now();
    let xi = first_n_zeros(FunctionId::Xi, 2000).unwrap();
    let xi_seconds = start.elapsed().as_secs_f64();
    Data {
        xi,
        plus: first_n_zeros(FunctionId::TPlus, 1500).unwrap(),
        minus_real: with_real_axis_zeros(&first_n_zeros(FunctionId::TMinus, 1500).unwrap()).unwrap(),
        l4: first_n_zeros(FunctionId::L4Completed, 2000).unwrap(),
        xi_seconds,
    }
}

fn c1(d: &Data) -> Outcome {
    let start = Instant::now();
    let mut o = table(
        FunctionId::Xi,
        &d.xi,
        [(0.0000370527, 0.0000370527, 6), (-0.0000184068, -0.0000184068, 6), (-1.43019e-7, -1.43019e-7, 6), (4.69061e-8, 4.69061e-8, 6)],
    );
    let secs = d.xi_seconds + start.elapsed().as_secs_f64();
    o.pass &= secs <= 600.0;
    o.detail += &format!(" ({secs:.1} s)");
    o
}

fn c2(d: &Data) -> Outcome {
    table(
        FunctionId::TPlusTilde,
        &d.plus,
        [(0.000614337, 0.000614336, 6), (-0.000299036, -0.000299035, 6), (-9.63049e-6, -9.63049e-6, 6), (2.99816e-6, 2.99816e-6, 6)],
    )
}

fn c3(d: &Data) -> Outcome {
    table(
        FunctionId::TMinusTilde,
        &d.minus_real,
        [(0.00838236, 0.00838236, 6), (-0.00476457, -0.00476457, 6), (0.000730707, 0.000730707, 6), (-0.000317834, -0.000317834, 6)],
    )
}

fn c4(d: &Data) -> Outcome {
    table(
        FunctionId::L4Completed,
        &d.l4,
        [(0.000910626, 0.000910626, 6), (-0.000437344, -0.000437344, 6), (-0.000021164, -0.000021164, 5), (6.40057e-6, 6.40057e-6, 6)],
    )
}

fn c5() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (f, tol) in [
        (FunctionId::Xi, 1e-10),
        (FunctionId::TPlusTilde, 1e-10),
        (FunctionId::L4Completed, 1e-10),
        (FunctionId::TMinusTilde, 1e-9),
    ] {
        let (a, b, r) = keiper_identity_residuals(&sigma(f, 30));
        let worst = a.max(b).max(r);
        pass &= worst <= tol;
        parts.push(format!("{f} {worst:.1e}"));
    }
    outcome(pass, format!("max residual at K=30: {}", parts.join(", ")))
}

fn c6() -> Outcome {
    let k = tau_lambda_from_sigma(&sigma(FunctionId::Xi, 50), 50).unwrap();
    let worst = k.tau.iter().map(|t| t.re.abs()).fold(0.0, f64::max);
    outcome(worst < 0.046191479322, format!("max |tau_k|, k < 50: {worst:.12}"))
}

fn c7() -> Outcome {
    let slope = |f| {
        let k = tau_lambda_from_sigma(&sigma(f, 30), 30).unwrap();
        let ks: Vec<f64> = (1..=30).map(|i| i as f64).collect();
        let ys: Vec<f64> = k.lambda[1..=30].iter().map(|l| l.re).collect();
        least_squares_slope(&ks, &ys)
    };
    let (sx, sp) = (slope(FunctionId::Xi), slope(FunctionId::TPlusTilde));
    let (okx, okp) = ((sx - 0.023).abs() <= 0.2 * 0.023, (sp - 0.089).abs() <= 0.2 * 0.089);
    outcome(okx && okp, format!("slopes: xi {sx:.5} (target 0.023 ± 20%), T+~ {sp:.5} (target 0.089 ± 20%)"))
}

fn c8(d: &Data) -> Outcome {
    let plus = first_n_zeros(FunctionId::TPlus, 1517).unwrap();
    let (raw_p, _) = inverse_square_modulus_sum(&plus, true).unwrap();
    let (_, with_real) = inverse_square_modulus_sum(&d.minus_real, true).unwrap();
    let (_, without) = inverse_square_modulus_sum(&d.minus_real, false).unwrap();
    let (raw_l, corr_l) = inverse_square_modulus_sum(&d.l4, true).unwrap();
    let pass = (raw_p - 0.182438).abs() <= 1e-3
        && (with_real - 0.356758).abs() <= 1e-3
        && (without - 0.173522).abs() <= 1e-3
        && (corr_l - 0.1552).abs() <= 1e-3;
    outcome(
        pass,
        format!(
            "T+~ raw {raw_p:.6}; T-~ with/without real zeros {with_real:.6}/{without:.6}; L-4 2000 zeros raw {raw_l:.6}, tail-corrected {corr_l:.6}"
        ),
    )
}

fn c9() -> Outcome {
    let rows = verify_link3(5).unwrap();
    let printed = [0.5, -0.523096, 0.0697834, -0.0486797, 0.00401739, -0.00210626];
    let coeffs_ok = rows.iter().zip(printed).all(|(r, p)| matches_printed(r.lhs_coeff, p, 6));
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    outcome(
        coeffs_ok && worst <= 1e-12,
        format!("lhs coefficients 0..5 match: {coeffs_ok}; max |lhs - rhs| {worst:.1e}"),
    )
}

fn c10() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (f, printed) in [
        (FunctionId::Xi, 0.0233439),
        (FunctionId::TPlusTilde, 0.0974409),
        (FunctionId::TMinusTilde, -0.0050851),
    ] {
        let r = symmetric_sum_check(&ZeroDataset::new(f), &sigma(f, 2));
        let sig = if f == FunctionId::TMinusTilde { 5 } else { 6 };
        pass &= matches_printed(r.lhs_coeff, printed, sig);
        parts.push(format!("{f} {:.7}", r.lhs_coeff));
    }
    outcome(pass, parts.join(", "))
}

fn c11() -> Outcome {
    let (a, b) = real_axis_zeros_tminus().unwrap();
    let (x, y) = (a.t_or_x, b.t_or_x);
    let pass = (x - 3.91231).abs() <= 1e-5 && (y + 2.91231).abs() <= 1e-5 && (x + y - 1.0).abs() <= 1e-9;
    outcome(pass, format!("{x:.8} and {y:.8}, sum - 1 = {:.1e}", x + y - 1.0))
}

fn c12(d: &Data) -> Outcome {
    let half = xi_halfshift_zeros(&d.xi);
    let minus = d.minus_real.without_real_axis();
    let between = interlacing_report(&minus, &half, InterlaceMode::Between, 1500, 0.0).unwrap().failures;
    let expect = [921usize, 995, 1307, 1495];
    let shifted = |s: isize| {
        between.len() == 4 && between.iter().zip(expect).all(|(&a, b)| a as isize == b as isize + s)
    };
    let between_ok = shifted(-1) || shifted(0) || shifted(1);
    let after = interlacing_report(&d.plus, &half, InterlaceMode::After, 1500, 0.0).unwrap().failures.len();
    let (lo, hi) = translation_window_search(&minus, &half, 1500, 0.001).unwrap();
    let pass = between_ok && after.abs_diff(232) <= 3 && (lo + 0.080).abs() <= 0.005 && (hi + 0.036).abs() <= 0.005;
    outcome(pass, format!("between failures {between:?}; after failures {after}; window [{lo:.3}, {hi:.3}]"))
}

fn c13() -> Outcome {
    let plus = scan_zeros_default(FunctionId::TPlus, 0.0, 1000.0).unwrap();
    let minus = scan_zeros_default(FunctionId::TMinus, 0.0, 1000.0).unwrap();
    let mut notes = Vec::new();
    let mut pass = true;
    let low = find_derivative_zeros(&plus, &minus, 410.0, 420.0).unwrap();
    for (re, im, modulus) in [(-0.143103, 417.293, 1.16957), (0.163301, 418.4092, 1.01891)] {
        let r = nearest(&low.reports, c(re, im));
        let ok = (r.s_d.re - re).abs() <= 1e-3 && (r.s_d.im - im).abs() <= 1e-3 && (r.modulus - modulus).abs() <= 1e-4;
        pass &= ok;
        notes.push(format!("{:.6}{:+.4}i |V| {:.5}{}", r.s_d.re, r.s_d.im, r.modulus, if ok { "" } else { " (miss)" }));
    }
    let high = find_derivative_zeros(&plus, &minus, 985.0, 991.0).unwrap();
    for (re, im, modulus) in [(0.24809, 988.611, 1.001357), (0.12566, 987.373, 1.0808)] {
        let r = nearest(&high.reports, c(re, im));
        let ok = (r.modulus - modulus).abs() <= 1e-4;
        pass &= ok;
        notes.push(format!("{:.5}{:+.3}i |V| {:.6}{}", r.s_d.re, r.s_d.im, r.modulus, if ok { "" } else { " (miss)" }));
    }
    let t200 = plus.ordinates()[199];
    let scan = condition_scan(&plus, &minus, 0.0, t200).unwrap();
    pass &= scan.all_met;
    notes.push(format!("|V(s_d)| > 1 over the first 200 T+ zeros: {} ({} derivative zeros)", scan.all_met, scan.reports.len()));
    outcome(pass, notes.join("; "))
}

fn c14() -> Outcome {
    let y = lagarias_suzuki_y_star().unwrap();
    outcome((y - 7.0555).abs() <= 1e-3, format!("y* = {y:.6}"))
}

fn c15() -> Outcome {
    let ds = scan_zeros_default(FunctionId::TPlus, 0.0, 1000.0).unwrap();
    let (observed, predicted) = count_check(&ds);
    outcome(observed.abs_diff(1517) <= 2, format!("{observed} zeros up to t = 1000, smooth count {predicted:.1}"))
}

fn c16() -> Outcome {
    let pts = sample_points(50);
    let mut worst_fe = 0.0f64;
    let mut worst_link = 0.0f64;
    for &s in &pts {
        let m = c(1.0, 0.0) - s;
        for (f, sign) in [(FunctionId::Xi, 1.0), (FunctionId::TPlus, 1.0), (FunctionId::TMinus, -1.0), (FunctionId::L4Completed, 1.0)] {
            let a = evaluate(f, s).unwrap();
            let b = evaluate(f, m).unwrap() * sign;
            worst_fe = worst_fe.max((a - b).norm() / (1.0 + a.norm()));
        }
        let tp = evaluate(FunctionId::TPlus, s).unwrap();
        let tm = evaluate(FunctionId::TMinus, s).unwrap();
        let ptp = evaluate(FunctionId::TPlusTilde, s).unwrap();
        let ptm = evaluate(FunctionId::TMinusTilde, s).unwrap();
        let a = evaluate(FunctionId::Xi1, s * 2.0).unwrap();
        let b = evaluate(FunctionId::Xi1, s * 2.0 - 1.0).unwrap();
        let l3 = (c(1.0, 0.0) - s) * evaluate(FunctionId::Xi, s * 2.0).unwrap();
        let l4 = s * evaluate(FunctionId::Xi, s * 2.0 - 1.0).unwrap();
        for (lhs, rhs) in [
            (a, (tp + tm) * 2.0),
            (b, (tp - tm) * 2.0),
            (l3, (ptm + (s - 0.5) * ptp) * 4.0),
            (l4, (ptm - (s - 0.5) * ptp) * 4.0),
        ] {
            worst_link = worst_link.max((lhs - rhs).norm() / lhs.norm().max(1e-300));
        }
    }
    let mut bell_exact = true;
    for k in 0..200i32 {
        let x: Vec<f64> = (0..4).map(|j| f64::from((k * 7 + j * 13) % 41 - 20)).collect();
        let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
        bell_exact &= bell_eval(&x, 2) == x1 * x1 + x2
            && bell_eval(&x, 3) == x1.powi(3) + 3.0 * x1 * x2 + x3
            && bell_eval(&x, 4) == x1.powi(4) + 6.0 * x1 * x1 * x2 + 4.0 * x1 * x3 + 3.0 * x2 * x2 + x4;
    }
    let mut worst_route = 0.0f64;
    let sig_xi = sigma(FunctionId::Xi, 48);
    let sig_p = sigma(FunctionId::TPlusTilde, 48);
    for k in 0..20 {
        let (f, sig) = if k % 2 == 0 { (FunctionId::Xi, &sig_xi) } else { (FunctionId::TPlusTilde, &sig_p) };
        let z0 = Complex64::from_polar(0.3 * ((k as f64 + 0.5) / 20.0), k as f64 * 2.4);
        let t = translated_sigma(f, sig, z0, 3 + k % 6, 40).unwrap();
        let gap = (t.value_series_route - t.value_derivative_route).norm();
        worst_route = worst_route.max(gap / 1e-9f64.max(t.truncation_estimate) * 1e-9);
    }
    let mut worst_mobius = 0.0f64;
    for k in 1..=100 {
        let s = c(-2.0 + 5.0 * (k as f64 * 0.618_033_988_749_895).fract(), 5.0 + 495.0 * (k as f64 * 0.754_877_666_246_693).fract());
        if let (Ok(u), Ok(v)) = (u_func(s), v_func(s)) {
            worst_mobius = worst_mobius.max((v - (1.0 + u) / (1.0 - u)).norm() / v.norm().max(1.0));
        }
    }
    let mut worst_trans7 = 0.0f64;
    for k in 0..20 {
        let t = 20.0 + 39.3 * k as f64;
        let t0 = -0.2 + 0.02 * k as f64;
        if let Ok(r) = ratio_identity_check(t, t0) {
            worst_trans7 = worst_trans7.max(r);
        }
    }
    let pass = worst_fe <= 1e-10
        && worst_link <= 1e-10
        && bell_exact
        && worst_route <= 1e-9
        && worst_mobius <= 1e-12
        && worst_trans7 <= 1e-9;
    outcome(
        pass,
        format!(
            "functional equations {worst_fe:.1e}; links 1-4 {worst_link:.1e}; Bell n<=4 exact {bell_exact}; translated routes {worst_route:.1e}; Moebius {worst_mobius:.1e}; ratio identity {worst_trans7:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let data = load();
    let results: Vec<(usize, Outcome)> = vec![
        (1, c1(&data)),
        (2, c2(&data)),
        (3, c3(&data)),
        (4, c4(&data)),
        (5, c5()),
        (6, c6()),
        (7, c7()),
        (8, c8(&data)),
        (9, c9()),
        (10, c10()),
        (11, c11()),
        (12, c12(&data)),
        (13, c13()),
        (14, c14()),
        (15, c15()),
        (16, c16()),
    ];
    let mut unexpected = 0;
    for (id, o) in &results {
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| k == id).map(|(_, why)| *why);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:2} {status}  {}", o.detail);
        match (o.pass, known) {
            (false, Some(why)) => println!("             known: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("             listed as unattainable but passed"),
            (true, None) => {}
        }
    }
    let failed = results.iter().filter(|(_, o)| !o.pass).count();
    println!("{} of {} criteria pass; {} unexpected failures", results.len() - failed, results.len(), unexpected);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
