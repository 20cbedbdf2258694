//! Command-line surface: certified evaluation, remainder tables, terminant
//! bound breakdowns and a self-test.
//!
//! Exit codes: `0` success, `1` unparseable input, `2` domain-class errors
//! (outside the domain, poles, failed preconditions, inapplicable
//! expansions), `3` numerical failures.

use std::f64::consts::PI;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::coefficients::OrderPair;
use crate::error::{Error, Result};
use crate::hyper::{optimal_truncation, reexpand_remainder, TruncationMode};
use crate::lommel::{
    certified_eval, first_omitted, normalized_partial_sum, oracle_remainder_with, outer_factor,
    remainder_bound_combined_real, remainder_bound_complex_combined, remainder_bound_real, BoundTag,
    CertifiedValue, OracleConfig, Which,
};
use crate::related::{
    anger_weber_remainders, anger_weber_tail, scorer_remainder, scorer_tail, struve_remainder, struve_tail,
    Branch, Family, RelatedQuery,
};
use crate::terminant::{terminant_bound_catalogue, terminant_sup_bound};
use crate::C64;

/// Version of the CSV layouts; printed in the `version` column.
pub const CSV_VERSION: u32 = 1;
pub const TABLE_CSV_HEADER: &str = "version,table,arg_z,theta,N,remainder,bound,bound_tag";
pub const EVAL_CSV_HEADER: &str =
    "version,function,block,z_abs,z_arg,approx_re,approx_im,abs_bound,scale,first_omitted,bound_tag,N,M";
pub const PROBE_CSV_HEADER: &str = "version,p_re,p_im,theta,tag,value,winner";
/// Environment variable overriding the oracle quadrature tolerance.
pub const QUAD_TOL_ENV: &str = "LOMMEL_QUAD_TOL";

#[derive(Debug, Parser)]
#[command(name = "lommel", version, about = "Certified large-argument asymptotics of Lommel and related functions")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated expansion with a certified error bound.
    Eval(EvalArgs),
    /// Remainders and bounds for the three reference tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
    },
    /// Every applicable bound on the basic terminant and the winner.
    BoundProbe {
        /// Order `p` as `re[,im]`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// `arg w`, e.g. `1.2`, `1.2r`, `67.5d`, `3pi/8`.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Quick consistency checks against reference values.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FnName {
    LommelS,
    LommelSp,
    StruveH,
    StruveHp,
    StruveLPlus,
    StruveLMinus,
    StruveLPlusP,
    StruveLMinusP,
    ScorerHi,
    ScorerHip,
    ScorerGi,
    ScorerGip,
    AngerWeber,
    AngerWeberP,
}

impl FnName {
    fn label(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Plain,
    Hyper,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: FnName,
    /// `μ` as `re[,im]`.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// `ν` as `re[,im]`.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// `z` as `modulus@arg`, with `r` (default) or `d` after the argument.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Free parameter of the real-order bound.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Plain)]
    pub mode: Mode,
    /// Report `approx` and `abs_bound` for the function itself rather than the bracketed series.
    #[arg(long)]
    pub scaled: bool,
    /// Also evaluate the remainder by quadrature.
    #[arg(long)]
    pub oracle: bool,
}

/// One line of `eval` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub function: String,
    pub block: Option<String>,
    pub mu_re: Option<f64>,
    pub mu_im: Option<f64>,
    pub nu_re: Option<f64>,
    pub nu_im: Option<f64>,
    pub z_abs: f64,
    pub z_arg: f64,
    pub approx_re: f64,
    pub approx_im: f64,
    pub abs_bound: f64,
    pub scale: String,
    pub first_omitted: f64,
    pub bound_tag: String,
    pub terminant_tag: Option<String>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub lambda: Option<f64>,
    pub remainder_re: Option<f64>,
    pub remainder_im: Option<f64>,
}

/// One row of `table` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub version: u32,
    pub table: u8,
    pub arg_z: String,
    pub theta: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub remainder: Option<f64>,
    pub bound: f64,
    pub bound_tag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeEntry {
    pub tag: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub p_re: f64,
    pub p_im: f64,
    pub theta: f64,
    pub entries: Vec<ProbeEntry>,
    pub winner: ProbeEntry,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Core(Error),
    /// Output was produced but some part of it failed.
    Partial(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Core(e) if e.is_domain_class() => 2,
            CliError::Core(_) | CliError::Partial(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Core(e) => e.kind(),
            CliError::Partial(_) => "partial",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m) | CliError::Partial(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `re` or `re,im`.
pub fn parse_complex(s: &str) -> CliResult<C64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| CliError::Parse(format!("invalid number '{t}' in '{s}'")));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Parse(format!("expected re[,im], got '{s}'"))),
    }
}

/// Parses an angle: a number with optional `r`/`d` suffix, or `[k]pi[/d]`.
pub fn parse_angle(s: &str) -> CliResult<f64> {
    let bad = || CliError::Parse(format!("invalid angle '{s}'"));
    let t = s.trim();
    if let Some(idx) = t.find("pi") {
        let coef = match &t[..idx] {
            "" | "+" => 1.0,
            "-" => -1.0,
            k => k.parse::<f64>().map_err(|_| bad())?,
        };
        let rest = t[idx + 2..].trim_end_matches('r');
        let denom = if rest.is_empty() {
            1.0
        } else {
            rest.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?
        };
        return Ok(coef * PI / denom);
    }
    if let Some(deg) = t.strip_suffix('d') {
        return Ok(deg.parse::<f64>().map_err(|_| bad())?.to_radians());
    }
    t.trim_end_matches('r').parse::<f64>().map_err(|_| bad())
}

/// Parses `modulus@arg` into `(modulus, arg)`.
pub fn parse_polar(s: &str) -> CliResult<(f64, f64)> {
    let (m, a) = s.split_once('@').ok_or_else(|| CliError::Parse(format!("expected modulus@arg, got '{s}'")))?;
    let modulus = m.trim().parse::<f64>().map_err(|_| CliError::Parse(format!("invalid modulus '{m}'")))?;
    Ok((modulus, parse_angle(a)?))
}

/// Five significant digits with a mantissa in `[0.1, 1)`, e.g. `0.47440e-5`.
pub fn format_sig5(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sign = if x < 0.0 { "-" } else { "" };
    let a = x.abs();
    let mut e = a.log10().floor() as i32 + 1;
    let mut m = format!("{:.5}", a / 10f64.powi(e));
    if m.starts_with('1') {
        e += 1;
        m = format!("{:.5}", a / 10f64.powi(e));
    } else if m == "0.10000" && a < 10f64.powi(e - 1) {
        e -= 1;
        m = format!("{:.5}", a / 10f64.powi(e));
    }
    format!("{sign}{m}e{e}")
}

/// Oracle settings with the tolerance taken from [`QUAD_TOL_ENV`] when set.
pub fn oracle_config() -> CliResult<OracleConfig> {
    let mut cfg = OracleConfig::default();
    if let Ok(v) = std::env::var(QUAD_TOL_ENV) {
        cfg.rel_tol = v
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Parse(format!("{QUAD_TOL_ENV} must be a number, got '{v}'")))?;
    }
    Ok(cfg)
}

/// Parses the arguments and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            if cli.format == Format::Json {
                let obj = serde_json::json!({ "error": e.kind(), "message": e.message() });
                let _ = writeln!(err, "{obj}");
            } else {
                let _ = writeln!(err, "error ({}): {}", e.kind(), e.message());
            }
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let text = match &cli.command {
        Command::Eval(args) => render_eval(&cmd_eval(args)?, cli.format),
        Command::Table { id } => {
            let rows = cmd_table(*id)?;
            let text = render_table(*id, &rows, cli.format);
            write_out(out, &text)?;
            if rows.iter().any(|r| r.remainder.is_none()) {
                return Err(CliError::Partial("oracle failed on at least one row".into()));
            }
            return Ok(());
        }
        Command::BoundProbe { p, theta } => render_probe(&cmd_bound_probe(parse_complex(p)?, parse_angle(theta)?)?, cli.format),
        Command::Selftest => {
            let (text, ok) = cmd_selftest();
            write_out(out, &text)?;
            return if ok { Ok(()) } else { Err(CliError::Partial("self-test failed".into())) };
        }
    };
    write_out(out, &text)
}

fn write_out(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Partial(format!("write failed: {e}")))
}

fn family_of(f: FnName) -> Option<(Family, bool)> {
    Some(match f {
        FnName::LommelS | FnName::LommelSp => return None,
        FnName::StruveH => (Family::StruveH, false),
        FnName::StruveHp => (Family::StruveH, true),
        FnName::StruveLPlus => (Family::StruveL(Branch::Plus), false),
        FnName::StruveLMinus => (Family::StruveL(Branch::Minus), false),
        FnName::StruveLPlusP => (Family::StruveL(Branch::Plus), true),
        FnName::StruveLMinusP => (Family::StruveL(Branch::Minus), true),
        FnName::ScorerHi => (Family::ScorerHi, false),
        FnName::ScorerHip => (Family::ScorerHi, true),
        FnName::ScorerGi => (Family::ScorerGi, false),
        FnName::ScorerGip => (Family::ScorerGi, true),
        FnName::AngerWeber => (Family::AngerWeberA, false),
        FnName::AngerWeberP => (Family::AngerWeberA, true),
    })
}

fn record(
    args: &EvalArgs,
    pair: (Option<C64>, Option<C64>),
    polar: (f64, f64),
    block: Option<&str>,
    v: &CertifiedValue,
    remainder: Option<C64>,
) -> EvalRecord {
    EvalRecord {
        function: args.function.label(),
        block: block.map(str::to_string),
        mu_re: pair.0.map(|m| m.re),
        mu_im: pair.0.map(|m| m.im),
        nu_re: pair.1.map(|n| n.re),
        nu_im: pair.1.map(|n| n.im),
        z_abs: polar.0,
        z_arg: polar.1,
        approx_re: v.approx.re,
        approx_im: v.approx.im,
        abs_bound: v.abs_bound,
        scale: "normalized".into(),
        first_omitted: v.first_omitted,
        bound_tag: v.bound_tag.label().into(),
        terminant_tag: v.terminant_tag.map(|t| t.label().to_string()),
        n: v.scheme.n,
        m: v.scheme.m,
        lambda: v.scheme.lambda,
        remainder_re: remainder.map(|r| r.re),
        remainder_im: remainder.map(|r| r.im),
    }
}

/// Runs `eval`; Anger-Weber requests produce the `F` and `G` blocks as two records.
pub fn cmd_eval(args: &EvalArgs) -> CliResult<Vec<EvalRecord>> {
    let polar = parse_polar(&args.z)?;
    let z = C64::from_polar(polar.0, polar.1);
    let mu = args.mu.as_deref().map(parse_complex).transpose()?;
    let nu = args.nu.as_deref().map(parse_complex).transpose()?;
    let Some((family, derivative)) = family_of(args.function) else {
        return eval_lommel(args, mu, nu, polar, z);
    };
    if args.scaled || args.mode == Mode::Hyper || args.lambda.is_some() {
        return Err(Error::precondition("--scaled, --mode hyper and --lambda apply to lommel-s and lommel-sp only").into());
    }
    let needs_nu = !matches!(family, Family::ScorerHi | Family::ScorerGi);
    if needs_nu && nu.is_none() {
        return Err(CliError::Parse("--nu is required".into()));
    }
    let n = match args.n {
        Some(n) => n,
        None => {
            let (modulus, pair) = match nu {
                Some(v) => (z.norm(), OrderPair::new(v, v)),
                None => (crate::related::scorer_argument(z).norm(), OrderPair::real(0.0, 1.0 / 3.0)),
            };
            optimal_truncation(modulus, pair, TruncationMode::Plain)?.n
        }
    };
    let mut q = RelatedQuery::new(family, derivative, if needs_nu { nu } else { None }, z, n);
    q.scheme.m = args.m;
    let inputs = (None, q.nu);
    match family {
        Family::AngerWeberA => {
            let (f, g) = anger_weber_tail(&q)?;
            let rem = if args.oracle { Some(anger_weber_remainders(&q)?) } else { None };
            Ok(vec![
                record(args, inputs, polar, Some("F"), &f, rem.map(|r| r.0)),
                record(args, inputs, polar, Some("G"), &g, rem.map(|r| r.1)),
            ])
        }
        Family::ScorerHi | Family::ScorerGi => {
            let v = scorer_tail(&q)?;
            let rem = if args.oracle { Some(scorer_remainder(&q)?) } else { None };
            Ok(vec![record(args, inputs, polar, None, &v, rem)])
        }
        _ => {
            let v = struve_tail(&q)?;
            let rem = if args.oracle { Some(struve_remainder(&q)?) } else { None };
            Ok(vec![record(args, inputs, polar, None, &v, rem)])
        }
    }
}

fn eval_lommel(
    args: &EvalArgs,
    mu: Option<C64>,
    nu: Option<C64>,
    polar: (f64, f64),
    z: C64,
) -> CliResult<Vec<EvalRecord>> {
    let (Some(mu), Some(nu)) = (mu, nu) else {
        return Err(CliError::Parse("--mu and --nu are required".into()));
    };
    let pair = OrderPair::new(mu, nu);
    let which = if args.function == FnName::LommelS { Which::S } else { Which::SPrime };
    let v = match args.mode {
        Mode::Plain => {
            let mut v = certified_eval(z, pair, args.n, which)?;
            if let Some(lambda) = args.lambda {
                let b = remainder_bound_real(z, pair, v.scheme.n, which, Some(lambda))?;
                v.normalized_bound = b.value;
                v.abs_bound = b.value * outer_factor(z, pair, which).norm();
                v.bound_tag = b.tag;
                v.terminant_tag = b.terminant;
                v.scheme.lambda = b.lambda;
            }
            v
        }
        Mode::Hyper => {
            if args.lambda.is_some() {
                return Err(Error::precondition("--lambda applies to plain mode only").into());
            }
            let (n, m) = match (args.n, args.m) {
                (Some(n), Some(m)) => (n, m),
                _ => {
                    let s = optimal_truncation(z.norm(), pair, TruncationMode::Hyper)?;
                    (args.n.unwrap_or(s.n), args.m.or(s.m).unwrap_or(0))
                }
            };
            let res = reexpand_remainder(z, pair, n, m, which)?;
            let outer = outer_factor(z, pair, which);
            let bracket = normalized_partial_sum(z, pair, n, which)? + res.remainder_approx;
            CertifiedValue {
                approx: outer * bracket,
                abs_bound: res.tail_bound * outer.norm(),
                normalized_bound: res.tail_bound,
                first_omitted: first_omitted(z, pair, n, which),
                bound_tag: BoundTag::Reexpansion,
                terminant_tag: None,
                scheme: crate::lommel::TruncationScheme::hyper(n, m),
            }
        }
    };
    let outer = outer_factor(z, pair, which);
    let remainder = if args.oracle {
        let r = oracle_remainder_with(z, pair, v.scheme.n, which, oracle_config()?)?.value;
        Some(match args.mode {
            Mode::Plain => r,
            Mode::Hyper => r - (v.approx / outer - normalized_partial_sum(z, pair, v.scheme.n, which)?),
        })
    } else {
        None
    };
    let mut rec = record(args, (Some(mu), Some(nu)), polar, None, &v, remainder);
    if args.scaled {
        rec.scale = "function".into();
        rec.first_omitted = v.first_omitted * outer.norm();
        rec.remainder_re = remainder.map(|r| (r * outer).re);
        rec.remainder_im = remainder.map(|r| (r * outer).im);
    } else {
        let bracket = v.approx / outer;
        rec.approx_re = bracket.re;
        rec.approx_im = bracket.im;
        rec.abs_bound = v.normalized_bound;
    }
    Ok(vec![rec])
}

fn render_eval(records: &[EvalRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let text = if records.len() == 1 {
                serde_json::to_string_pretty(&records[0])
            } else {
                serde_json::to_string_pretty(records)
            };
            text.unwrap_or_default() + "\n"
        }
        Format::Csv => {
            let mut s = format!("{EVAL_CSV_HEADER}\n");
            for r in records {
                s += &format!(
                    "{CSV_VERSION},{},{},{},{},{:e},{:e},{:e},{},{:e},{},{},{}\n",
                    r.function,
                    r.block.as_deref().unwrap_or(""),
                    r.z_abs,
                    r.z_arg,
                    r.approx_re,
                    r.approx_im,
                    r.abs_bound,
                    r.scale,
                    r.first_omitted,
                    r.bound_tag,
                    r.n,
                    r.m.map(|m| m.to_string()).unwrap_or_default()
                );
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            for r in records {
                let title = match &r.block {
                    Some(b) => format!("{} ({b} block)", r.function),
                    None => r.function.clone(),
                };
                s += &format!("{title} at z = {}@{}\n", r.z_abs, r.z_arg);
                s += &format!("  approx        {:.15e} {:+.15e}i\n", r.approx_re, r.approx_im);
                s += &format!("  abs_bound     {} ({})\n", format_sig5(r.abs_bound), r.scale);
                s += &format!("  first_omitted {}\n", format_sig5(r.first_omitted));
                let term = r.terminant_tag.as_deref().map(|t| format!(", terminant {t}")).unwrap_or_default();
                s += &format!("  bound_tag     {}{term}\n", r.bound_tag);
                let m = r.m.map(|m| format!(", M = {m}")).unwrap_or_default();
                s += &format!("  N = {}{m}\n", r.n);
                if let (Some(re), Some(im)) = (r.remainder_re, r.remainder_im) {
                    s += &format!("  remainder     {re:.10e} {im:+.10e}i (quadrature)\n");
                }
            }
            s
        }
    }
}

/// `(μ, ν)` of reference table `id`.
pub fn table_pair(id: u8) -> OrderPair {
    match id {
        1 => OrderPair::real(-2.0, 1.5),
        2 => OrderPair::real(-6.0, 4.5),
        _ => OrderPair::new(C64::new(2.0, 2.0), C64::new(0.5, -1.0)),
    }
}

/// Angles of the table rows with their labels.
pub const TABLE_ANGLES: [(&str, f64); 4] =
    [("0", 0.0), ("pi/4", PI / 4.0), ("3pi/8", 3.0 * PI / 8.0), ("pi/2", PI / 2.0)];
pub const TABLE_ORDERS: [usize; 2] = [5, 10];
pub const TABLE_MODULUS: f64 = 20.0;

/// Remainders by quadrature and bounds on `|z| = 20` for table `id`; rows run
/// over the angles, then over `N ∈ {5, 10}`. A failed oracle leaves `remainder` empty.
pub fn cmd_table(id: u8) -> CliResult<Vec<TableRow>> {
    if !(1..=3).contains(&id) {
        return Err(Error::domain(format!("table id must be 1, 2 or 3, got {id}")).into());
    }
    let cfg = oracle_config()?;
    let pair = table_pair(id);
    let jobs: Vec<(&str, f64, usize)> =
        TABLE_ANGLES.iter().flat_map(|&(l, t)| TABLE_ORDERS.iter().map(move |&n| (l, t, n))).collect();
    let results: Vec<Result<TableRow>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(label, theta, n)| {
                scope.spawn(move || {
                    let z = C64::from_polar(TABLE_MODULUS, theta);
                    let bound = if id == 3 {
                        remainder_bound_complex_combined(z, pair, n)?
                    } else {
                        remainder_bound_combined_real(z, pair, n)?
                    };
                    let remainder = oracle_remainder_with(z, pair, n, Which::S, cfg).ok().map(|r| r.value.norm());
                    Ok(TableRow {
                        version: CSV_VERSION,
                        table: id,
                        arg_z: label.to_string(),
                        theta,
                        n,
                        remainder,
                        bound: bound.value,
                        bound_tag: bound.tag.label().to_string(),
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
    });
    Ok(results.into_iter().collect::<Result<Vec<_>>>()?)
}

fn render_table(id: u8, rows: &[TableRow], format: Format) -> String {
    let cell = |v: Option<f64>| v.map(format_sig5).unwrap_or_else(|| "FAILED".to_string());
    match format {
        Format::Json => serde_json::to_string_pretty(rows).unwrap_or_default() + "\n",
        Format::Csv => {
            let mut s = format!("{TABLE_CSV_HEADER}\n");
            for r in rows {
                s += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.version,
                    r.table,
                    r.arg_z,
                    r.theta,
                    r.n,
                    cell(r.remainder),
                    format_sig5(r.bound),
                    r.bound_tag
                );
            }
            s
        }
        Format::Human => {
            let pair = table_pair(id);
            let mut s = format!(
                "Table {id}: |z| = {TABLE_MODULUS}, mu = {}, nu = {}\n",
                fmt_c(pair.mu),
                fmt_c(pair.nu)
            );
            s += &format!("{:<7} {:<12} {:<12} {:<12} {}\n", "arg z", "|R_5|", "bound", "|R_10|", "bound");
            for chunk in rows.chunks(2) {
                s += &format!("{:<7}", chunk[0].arg_z);
                for r in chunk {
                    s += &format!(" {:<12} {:<12}", cell(r.remainder), format_sig5(r.bound));
                }
                s = s.trim_end().to_string() + "\n";
            }
            let tags: Vec<&str> = rows.iter().map(|r| r.bound_tag.as_str()).collect();
            let mut distinct = tags.clone();
            distinct.dedup();
            s += &format!("bound: {}\n", distinct.join(", "));
            s
        }
    }
}

fn fmt_c(w: C64) -> String {
    if w.im == 0.0 {
        format!("{}", w.re)
    } else {
        format!("{}{:+}i", w.re, w.im)
    }
}

/// Every applicable terminant bound at `(p, θ)` and the smallest.
pub fn cmd_bound_probe(p: C64, theta: f64) -> CliResult<ProbeReport> {
    let entries = terminant_bound_catalogue(p, theta)?
        .into_iter()
        .map(|b| ProbeEntry { tag: b.proposition_used.label().into(), value: b.value })
        .collect();
    let best = terminant_sup_bound(p, theta)?;
    Ok(ProbeReport {
        p_re: p.re,
        p_im: p.im,
        theta,
        entries,
        winner: ProbeEntry { tag: best.proposition_used.label().into(), value: best.value },
    })
}

fn render_probe(r: &ProbeReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).unwrap_or_default() + "\n",
        Format::Csv => {
            let mut s = format!("{PROBE_CSV_HEADER}\n");
            for e in &r.entries {
                let win = e.tag == r.winner.tag && e.value == r.winner.value;
                s += &format!("{CSV_VERSION},{},{},{},{},{:e},{}\n", r.p_re, r.p_im, r.theta, e.tag, e.value, win);
            }
            s
        }
        Format::Human => {
            let mut s = format!("p = {}, theta = {}\n", fmt_c(C64::new(r.p_re, r.p_im)), r.theta);
            for e in &r.entries {
                s += &format!("  {:<10} {:.12}\n", e.tag, e.value);
            }
            s += &format!("winner: {} {:.12}\n", r.winner.tag, r.winner.value);
            s
        }
    }
}

/// Within one unit of the last printed digit of `printed` (five significant digits).
pub fn matches_printed(value: f64, printed: f64, last_digit: f64) -> bool {
    (value - printed).abs() <= last_digit * (1.0 + 1e-9)
}

/// Runs the self-test checks; returns the report and whether all passed.
pub fn cmd_selftest() -> (String, bool) {
    let mut report = String::new();
    let mut all = true;
    let mut check = |name: &str, outcome: Result<bool>| {
        let ok = matches!(outcome, Ok(true));
        all &= ok;
        let detail = match outcome {
            Err(e) => format!(" ({e})"),
            _ => String::new(),
        };
        report += &format!("{} {name}{detail}\n", if ok { "PASS" } else { "FAIL" });
    };
    let z = C64::new(20.0, 0.0);
    let pair = table_pair(1);
    check(
        "table 1 remainder at arg z = 0, N = 5",
        crate::lommel::oracle_remainder(z, pair, 5, Which::S).map(|r| matches_printed(r.norm(), 0.47440e-5, 1e-10)),
    );
    check(
        "table 1 bound at arg z = 0, N = 5",
        remainder_bound_combined_real(z, pair, 5).map(|b| matches_printed(b.value, 0.65562e-5, 1e-10)),
    );
    check(
        "terminant at p = 1, w = 1",
        crate::terminant::terminant_eval(C64::new(1.0, 0.0), C64::new(1.0, 0.0))
            .map(|v| (v.re - 0.621_449_624_3).abs() < 1e-9),
    );
    check("chi(2) = 2", crate::terminant::chi(2.0).map(|v| (v - 2.0).abs() < 1e-13));
    check(
        "terminating expansion has zero bound",
        crate::lommel::certified_eval_s(C64::new(3.0, 0.0), OrderPair::real(1.0, 0.0), None).map(|v| v.abs_bound == 0.0),
    );
    check(
        "gamma reflection",
        (|| {
            let w = C64::new(0.3, 0.7);
            let lhs = (crate::numerics::log_gamma(w)? + crate::numerics::log_gamma(1.0 - w)?).exp();
            let rhs = crate::numerics::reflection(w);
            Ok((lhs - rhs).norm() < 1e-12 * rhs.norm())
        })(),
    );
    check(
        "K_{1/2} closed form",
        crate::numerics::bessel_k(C64::new(0.5, 0.0), 3.0).map(|k| {
            let exact = (PI / 6.0).sqrt() * (-3f64).exp();
            (k.re - exact).abs() < 1e-13 * exact
        }),
    );
    (report, all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("lommel").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sig5_formatting() {
        assert_eq!(format_sig5(4.7440487e-6), "0.47440e-5");
        assert_eq!(format_sig5(1.903354198e-6), "0.19034e-5");
        assert_eq!(format_sig5(0.0011803791), "0.11804e-2");
        assert_eq!(format_sig5(9.999996e-3), "0.10000e-1");
        assert_eq!(format_sig5(1.0), "0.10000e1");
        assert_eq!(format_sig5(0.0), "0");
    }

    #[test]
    fn angle_and_polar_parsing() {
        assert_eq!(parse_angle("0").unwrap(), 0.0);
        assert_eq!(parse_angle("3pi/8").unwrap(), 3.0 * PI / 8.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("0.9pi").unwrap(), 0.9 * PI);
        assert!((parse_angle("90d").unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(parse_angle("1.25r").unwrap(), 1.25);
        assert_eq!(parse_polar("20@0").unwrap(), (20.0, 0.0));
        assert!(parse_polar("20").is_err());
        assert!(parse_angle("pi*2").is_err());
        assert_eq!(parse_complex("0.5,-1").unwrap(), C64::new(0.5, -1.0));
        assert!(parse_complex("a").is_err());
    }

    #[test]
    fn eval_reference_values() {
        let (code, out, _) = run_args(&["--format", "json", "eval", "--fn", "lommel-s", "--mu", "-2", "--nu", "1.5", "--z", "20@0", "--n", "5"]);
        assert_eq!(code, 0);
        let rec: EvalRecord = serde_json::from_str(&out).unwrap();
        assert!((rec.abs_bound - 6.5562e-6).abs() < 1e-10);
        assert_eq!(rec.n, 5);
        let (code, out, _) = run_args(&["--format", "json", "eval", "--fn", "lommel-s", "--mu", "1", "--nu", "0", "--z", "3@0"]);
        assert_eq!(code, 0);
        let rec: EvalRecord = serde_json::from_str(&out).unwrap();
        assert_eq!(rec.abs_bound, 0.0);
        assert_eq!(rec.bound_tag, "exact");
    }

    #[test]
    fn struve_matches_lommel() {
        let (_, out, _) = run_args(&["--format", "json", "eval", "--fn", "struve-h", "--nu", "0", "--z", "20@0", "--n", "10"]);
        let h: EvalRecord = serde_json::from_str(&out).unwrap();
        let (_, out, _) = run_args(&["--format", "json", "eval", "--fn", "lommel-s", "--mu", "0", "--nu", "0", "--z", "20@0", "--n", "10"]);
        let s: EvalRecord = serde_json::from_str(&out).unwrap();
        assert!((h.abs_bound - s.abs_bound).abs() < 1e-14 * s.abs_bound);
    }

    #[test]
    fn anger_weber_emits_two_blocks() {
        let (code, out, _) = run_args(&["--format", "json", "eval", "--fn", "anger-weber", "--nu", "0.3", "--z", "15@0.2", "--n", "7", "--m", "6"]);
        assert_eq!(code, 0);
        let recs: Vec<EvalRecord> = serde_json::from_str(&out).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].block.as_deref(), Some("F"));
        assert_eq!((recs[1].block.as_deref(), recs[1].n), (Some("G"), 6));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["eval", "--fn", "lommel-s", "--mu", "x", "--nu", "0", "--z", "3@0"]).0, 1);
        assert_eq!(run_args(&["eval", "--fn", "nope", "--z", "3@0"]).0, 1);
        let (code, _, err) = run_args(&["--format", "json", "eval", "--fn", "lommel-s", "--mu", "9", "--nu", "0", "--z", "3@0", "--n", "2"]);
        assert_eq!(code, 2);
        let e: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(e["error"], "precondition");
        assert_eq!(run_args(&["eval", "--fn", "scorer-gi", "--z", "8@1.2"]).0, 2);
        assert_eq!(run_args(&["eval", "--fn", "struve-h", "--nu", "-1.5", "--z", "8@0", "--n", "3"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn json_round_trip() {
        let (_, out, _) = run_args(&["--format", "json", "eval", "--fn", "lommel-sp", "--mu", "0.3,0.2", "--nu", "1.1,-0.4", "--z", "17@0.35", "--n", "6"]);
        let rec: EvalRecord = serde_json::from_str(&out).unwrap();
        let again: EvalRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        assert_eq!(rec, again);
        assert_eq!(rec.z_arg.to_bits(), 0.35f64.to_bits());
        assert_eq!((rec.mu_re, rec.nu_im), (Some(0.3), Some(-0.4)));
    }

    #[test]
    fn hyper_mode_improves_on_plain() {
        let base = ["--format", "json", "eval", "--fn", "lommel-s", "--mu", "0", "--nu", "0.3333333333333333", "--z", "8@0.5"];
        let (_, out, _) = run_args(&base);
        let plain: EvalRecord = serde_json::from_str(&out).unwrap();
        let (code, out, _) = run_args(&[&base[..], &["--mode", "hyper"]].concat());
        assert_eq!(code, 0);
        let hyper: EvalRecord = serde_json::from_str(&out).unwrap();
        assert_eq!((hyper.n, hyper.m), (12, Some(16)));
        assert_eq!(hyper.bound_tag, "reexpansion");
        assert!(hyper.abs_bound < 1e-3 * plain.abs_bound);
    }

    #[test]
    fn probe_winners() {
        let r = cmd_bound_probe(C64::new(13.0, 0.0), 0.0).unwrap();
        assert_eq!((r.winner.tag.as_str(), r.winner.value), ("P1", 1.0));
        let r = cmd_bound_probe(C64::new(13.0, 0.0), 0.9 * PI).unwrap();
        assert!(r.entries.iter().any(|e| e.tag == "P3"));
        let (code, out, _) = run_args(&["bound-probe", "--p", "13", "--theta", "3pi/8"]);
        assert_eq!(code, 0);
        assert!(out.contains("winner"));
    }

    #[test]
    fn selftest_passes() {
        let (text, ok) = cmd_selftest();
        assert!(ok, "{text}");
    }
}
