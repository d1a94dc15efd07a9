//! Command-line grammar. Every value is parsed and range-checked here, so a
//! request that reaches `commands` is complete.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use zetarules::translations::InterlaceMode;
use zetarules::FunctionId;

#[derive(Debug, Parser)]
#[command(name = "zetarules", version, about = "Zero-power sum rules and critical-line experiments")]
pub struct Cli {
    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Append achieved-tolerance metadata to the output.
    #[arg(long, global = true)]
    pub precision_report: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical-line zeros (and real-axis zeros of T-).
    Zeros(ZerosArgs),
    /// Sum-rule table: Taylor coefficient of log f against -sigma_m/m
    /// (l4 runs on its completed form).
    Sumrule(SumruleArgs),
    /// Keiper tau_k and lambda_k.
    Keiper(KeiperArgs),
    /// Taylor coefficients rebuilt from sigma by Bell polynomials.
    Bell(BellArgs),
    /// Coefficient table of (1-s) xi(2s) = 4[T-~(s) + (s-1/2) T+~(s)].
    Link(LinkArgs),
    /// Translated power sums by the series and derivative routes.
    Translate(TranslateArgs),
    /// Interlacing failures between two zero sequences.
    Interlace(InterlaceArgs),
    /// Zeros of V' near the critical line and the |V| > 1 condition.
    Rhscan(RhscanArgs),
    /// Lagarias-Suzuki threshold y*.
    Ystar,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, value_parser = parse_function)]
    pub function: FunctionId,
    /// Number of zeros from t = 0.
    #[arg(long, conflicts_with = "range", required_unless_present = "range", value_parser = clap::value_parser!(u64).range(1..=200_000))]
    pub n: Option<u64>,
    /// Ordinate range `lo..hi`.
    #[arg(long, value_parser = parse_t_range)]
    pub range: Option<(f64, f64)>,
    /// Include the two real-axis zeros (T- and T-~ only).
    #[arg(long)]
    pub real_axis: bool,
}

#[derive(Debug, Args)]
pub struct SumruleArgs {
    #[arg(long, value_parser = parse_entire_function)]
    pub function: FunctionId,
    /// Orders `a..b`.
    #[arg(long, default_value = "1..6", value_parser = parse_order_range)]
    pub m: RangeInclusive<usize>,
    /// Zeros summed; defaults to 2000 for xi and L4, 1500 for T+-.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200_000))]
    pub zeros: Option<u64>,
    /// Leave the real-axis zeros of T-~ out of the sums.
    #[arg(long)]
    pub no_real_axis: bool,
    /// Significant digits of the lhs and rhs columns.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KeiperRoute {
    Derivative,
    Zeros,
}

#[derive(Debug, Args)]
pub struct KeiperArgs {
    #[arg(long, value_parser = parse_entire_function)]
    pub function: FunctionId,
    /// Number of coefficients.
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=60))]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = KeiperRoute::Derivative)]
    pub route: KeiperRoute,
    /// Zeros for the zero route.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200_000))]
    pub zeros: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    #[arg(long, value_parser = parse_entire_function)]
    pub function: FunctionId,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=40))]
    pub order: u64,
}

#[derive(Debug, Args)]
pub struct LinkArgs {
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(0..=30))]
    pub order: u64,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[arg(long, value_parser = parse_entire_function)]
    pub function: FunctionId,
    /// Expansion point `re` or `re,im`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub z0: (f64, f64),
    #[arg(long, default_value = "1..4", value_parser = parse_order_range)]
    pub m: RangeInclusive<usize>,
    #[arg(long, default_value_t = zetarules::translations::DEFAULT_TERMS as u64, value_parser = clap::value_parser!(u64).range(1..=200))]
    pub terms: u64,
}

/// Zero sequence usable in an interlacing comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    Zeros(FunctionId),
    /// Zeros of `xi1(2s - 1/2)`: the xi ordinates halved.
    XiHalf,
}

#[derive(Debug, Args)]
pub struct InterlaceArgs {
    /// `a:b`, e.g. `tminus:xihalf`.
    #[arg(long, value_parser = parse_pair)]
    pub pair: (Sequence, Sequence),
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=50_000))]
    pub n: u64,
    #[arg(long, default_value = "between", value_parser = parse_mode)]
    pub mode: InterlaceMode,
    /// Shift added to the b sequence.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true, value_parser = parse_finite)]
    pub t0: f64,
    /// Also search the zero-failure translation window with this step.
    #[arg(long, value_parser = parse_positive)]
    pub window_step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RhscanArgs {
    /// Ordinate range `lo..hi`.
    #[arg(long, value_parser = parse_t_range)]
    pub range: (f64, f64),
    /// Trace the |V| = 1 contour around each anchor triplet (JSON only).
    #[arg(long)]
    pub contours: bool,
}

pub fn parse_function(s: &str) -> Result<FunctionId, String> {
    let key: String = s
        .chars()
        .filter(|c| !matches!(c, '-' | '_' | ' '))
        .flat_map(char::to_lowercase)
        .collect();
    let f = match key.as_str() {
        "xi" => FunctionId::Xi,
        "xi1" => FunctionId::Xi1,
        "tplus" | "t+" => FunctionId::TPlus,
        "tminus" | "t-" => FunctionId::TMinus,
        "tplustilde" | "t+~" => FunctionId::TPlusTilde,
        "tminustilde" | "t-~" => FunctionId::TMinusTilde,
        "l4" => FunctionId::L4,
        "l4completed" | "l4c" => FunctionId::L4Completed,
        _ => return s.parse().map_err(|_| format!("unknown function {s:?}")),
    };
    Ok(f)
}

/// Functions holomorphic at the origin, as the power-series commands need.
pub fn parse_entire_function(s: &str) -> Result<FunctionId, String> {
    match parse_function(s)? {
        f @ (FunctionId::Xi
        | FunctionId::TPlusTilde
        | FunctionId::TMinusTilde
        | FunctionId::L4
        | FunctionId::L4Completed) => Ok(f),
        FunctionId::TPlus => Err("tplus has a pole at s = 0; use tplus-tilde".into()),
        FunctionId::TMinus => Err("tminus has a pole at s = 0; use tminus-tilde".into()),
        FunctionId::Xi1 => Err("xi1 has a pole at s = 0; use xi".into()),
    }
}

fn split_range(s: &str) -> Result<(&str, &str), String> {
    s.split_once("..")
        .ok_or_else(|| format!("expected `lo..hi`, got {s:?}"))
}

pub fn parse_order_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = split_range(s)?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad order {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad order {b:?}"))?;
    if a == 0 || b < a || b > 60 {
        return Err(format!("order range must satisfy 1 <= a <= b <= 60, got {a}..{b}"));
    }
    Ok(a..=b)
}

pub fn parse_t_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = split_range(s)?;
    let a = parse_finite(a.trim())?;
    let b = parse_finite(b.trim())?;
    if !(0.0 <= a && a < b && b <= 1e6) {
        return Err(format!("range must satisfy 0 <= lo < hi <= 1e6, got {a}..{b}"));
    }
    Ok((a, b))
}

pub fn parse_finite(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x = parse_finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be positive, got {x}"))
    }
}

pub fn parse_point(s: &str) -> Result<(f64, f64), String> {
    match s.split_once(',') {
        Some((re, im)) => Ok((parse_finite(re.trim())?, parse_finite(im.trim())?)),
        None => Ok((parse_finite(s.trim())?, 0.0)),
    }
}

fn parse_sequence(s: &str) -> Result<Sequence, String> {
    let key = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
    if key == "xihalf" {
        return Ok(Sequence::XiHalf);
    }
    match parse_function(s)? {
        f @ (FunctionId::Xi | FunctionId::TPlus | FunctionId::TMinus | FunctionId::L4Completed) => Ok(Sequence::Zeros(f)),
        FunctionId::TPlusTilde => Ok(Sequence::Zeros(FunctionId::TPlus)),
        FunctionId::TMinusTilde => Ok(Sequence::Zeros(FunctionId::TMinus)),
        FunctionId::L4 => Ok(Sequence::Zeros(FunctionId::L4Completed)),
        FunctionId::Xi1 => Ok(Sequence::Zeros(FunctionId::Xi)),
    }
}

pub fn parse_pair(s: &str) -> Result<(Sequence, Sequence), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `a:b`, got {s:?}"))?;
    Ok((parse_sequence(a)?, parse_sequence(b)?))
}

fn parse_mode(s: &str) -> Result<InterlaceMode, String> {
    s.parse().map_err(|e: zetarules::Error| e.to_string())
}
