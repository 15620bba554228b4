//! The `nearcf` command line.
//!
//! [`run`] takes the full argument vector and returns the exit status with
//! everything that would be written to stdout and stderr, so the binary is a
//! thin wrapper and tests can drive the same code in-process.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use nearcf_core::{
    cf_eval, cf_factor, continuant, half_sqrt_cf, mordell_check, pell4_fundamental,
    pell_fundamental, run_scan, sqrt_cf, sum_two_squares, verify_mean, Error, ErrorClass, MeanKind,
    ScanConfig, ScanMode, Variant, VerifyOptions, DEFAULT_PERIOD_CAP,
};

pub mod parse;
pub mod record;

use record::Record;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(
    name = "nearcf",
    version,
    about = "Exact near continued fraction toolkit"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Fractional digits of decimal approximations.
    #[arg(long, default_value_t = 12, global = true)]
    pub digits: usize,
    /// Maximum period length before an expansion is abandoned.
    #[arg(long, default_value_t = DEFAULT_PERIOD_CAP, global = true)]
    pub period_cap: usize,
    /// Worker threads for `scan`.
    #[arg(long, default_value_t = 1, global = true)]
    pub workers: usize,
    /// Working precision of the numeric cotangent check, in digits.
    #[arg(long, default_value_t = 60, global = true)]
    pub precision_digits: usize,
    /// The numeric cotangent check passes within 10^-N.
    #[arg(long, default_value_t = 30, global = true)]
    pub tolerance_digits: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continuant K[a0, ..., an] of rational entries.
    Continuant {
        #[arg(allow_hyphen_values = true)]
        entries: Vec<String>,
    },
    /// Value of the finite continued fraction [a0, ..., an]; entries may be
    /// Gaussian rationals such as `1-i` or `3/2+1/2 i`.
    Eval {
        #[arg(required = true, allow_hyphen_values = true)]
        entries: Vec<String>,
    },
    /// Mean of the near pair [a0, ..., ak] and [a0, ..., ak, a(k+1)].
    Mean {
        #[arg(long, value_parser = parse_kind)]
        kind: MeanKind,
        #[arg(long, value_parser = parse_variant, default_value = "real")]
        variant: Variant,
        /// Print the identity checks and fail when one does not hold.
        #[arg(long)]
        verify: bool,
        #[arg(required = true, allow_hyphen_values = true)]
        entries: Vec<String>,
    },
    /// Palindromic expansion of √(p/q).
    SqrtCf {
        #[arg(value_parser = parse_radicand)]
        radicand: BigRational,
    },
    /// Palindromic expansion of (1 + √(p/q))/2.
    HalfSqrtCf {
        #[arg(value_parser = parse_radicand)]
        radicand: BigRational,
    },
    /// Fundamental solution of x² - n·y² = ±1.
    Pell {
        #[arg(value_parser = parse_int)]
        n: BigInt,
    },
    /// Solution of x² - n·y² = ±4 from the expansion of (1 + √n)/2.
    Pell4 {
        #[arg(value_parser = parse_int)]
        n: BigInt,
    },
    /// Split n from the central term of the period of √n.
    Factor {
        #[arg(value_parser = parse_int)]
        n: BigInt,
    },
    /// n = a² + b² from an odd period of √n.
    Sum2sq {
        #[arg(value_parser = parse_int)]
        n: BigInt,
    },
    /// Mordell divisibility check for a prime p ≡ 3 (mod 4).
    Mordell {
        #[arg(value_parser = parse_int)]
        p: BigInt,
    },
    /// Run one operation over every selected n in [lo, hi].
    Scan {
        #[arg(long, value_parser = parse_mode)]
        mode: ScanMode,
        lo: u64,
        hi: u64,
    },
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    parse::parse_integer(s)
}

fn parse_radicand(s: &str) -> Result<BigRational, String> {
    parse::parse_rational(s)
}

fn parse_kind(s: &str) -> Result<MeanKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<ScanMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Core { error: Error, n: Option<String> },
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure::Core { error, n: None }
    }
}

struct Ctx {
    global: Global,
    out: Outcome,
}

impl Ctx {
    fn emit(&mut self, r: &Record) {
        let line = match self.global.format {
            Format::Text => r.text.clone(),
            Format::JsonLines => r.json(),
        };
        self.out.stdout.push_str(&line);
        self.out.stdout.push('\n');
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let op = op_name(&cli.command);
    let mut ctx = Ctx {
        global: cli.global,
        out: Outcome::default(),
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(ok) => {
            if !ok {
                ctx.out.code = EXIT_INVARIANT;
                ctx.out
                    .stderr
                    .push_str("error: invariant: a stated check did not hold\n");
            }
        }
        Err(Failure::Usage(msg)) => {
            ctx.out.code = EXIT_USAGE;
            ctx.out.stderr.push_str(&format!("error: usage: {msg}\n"));
        }
        Err(Failure::Core { error, n }) => {
            let class = match error.class() {
                ErrorClass::Domain => "domain",
                ErrorClass::Invariant => "invariant",
            };
            ctx.out.code = match error.class() {
                ErrorClass::Domain => EXIT_DOMAIN,
                ErrorClass::Invariant => EXIT_INVARIANT,
            };
            let message = error.to_string().replace('\n', " ");
            if ctx.global.format == Format::JsonLines {
                let rec = json!({
                    "op": op,
                    "error": { "class": class, "n": n, "message": message },
                });
                ctx.out.stdout.push_str(&format!("{rec}\n"));
            }
            let at = n.map(|n| format!(" n={n}")).unwrap_or_default();
            ctx.out
                .stderr
                .push_str(&format!("error: {class}:{at} {message}\n"));
        }
    }
    ctx.out
}

fn op_name(c: &Command) -> &'static str {
    match c {
        Command::Continuant { .. } => "continuant",
        Command::Eval { .. } => "eval",
        Command::Mean { .. } => "mean",
        Command::SqrtCf { .. } => "sqrt-cf",
        Command::HalfSqrtCf { .. } => "half-sqrt-cf",
        Command::Pell { .. } => "pell",
        Command::Pell4 { .. } => "pell4",
        Command::Factor { .. } => "factor",
        Command::Sum2sq { .. } => "sum2sq",
        Command::Mordell { .. } => "mordell",
        Command::Scan { .. } => "scan",
    }
}

fn rationals(entries: &[String]) -> Result<Vec<BigRational>, Failure> {
    entries
        .iter()
        .map(|s| parse::parse_rational(s).map_err(Failure::Usage))
        .collect()
}

fn split_radicand(r: &BigRational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

/// Returns whether every emitted check held.
fn dispatch(ctx: &mut Ctx, command: Command) -> Result<bool, Failure> {
    let digits = ctx.global.digits;
    let cap = ctx.global.period_cap;
    let record = match command {
        Command::Continuant { entries } => {
            let a = rationals(&entries)?;
            record::continuant(&a, &continuant(&a))
        }
        Command::Eval { entries } => {
            let a = entries
                .iter()
                .map(|s| parse::parse_gaussian(s).map_err(Failure::Usage))
                .collect::<Result<Vec<_>, _>>()?;
            let value = cf_eval(&a)?;
            record::eval(&a, &value, digits)
        }
        Command::Mean {
            kind,
            variant,
            verify,
            entries,
        } => {
            let a = rationals(&entries)?;
            let opts = VerifyOptions {
                precision_digits: ctx.global.precision_digits,
                tolerance_digits: ctx.global.tolerance_digits,
            };
            let report = verify_mean(&a, kind, variant, opts)?;
            record::mean(&report, digits, verify)
        }
        Command::SqrtCf { radicand } => {
            let (p, q) = split_radicand(&radicand);
            record::sqrt_cf(&sqrt_cf(&p, &q, cap)?, digits)
        }
        Command::HalfSqrtCf { radicand } => {
            let (p, q) = split_radicand(&radicand);
            record::half_sqrt_cf(&half_sqrt_cf(&p, &q, cap)?, digits)
        }
        Command::Pell { n } => record::pell("pell", &pell_fundamental(&n, cap)?),
        Command::Pell4 { n } => record::pell("pell4", &pell4_fundamental(&n, cap)?),
        Command::Factor { n } => record::factor(&cf_factor(&n, cap)?),
        Command::Sum2sq { n } => record::sum2sq(&n, &sum_two_squares(&n, cap)?),
        Command::Mordell { p } => record::mordell(&mordell_check(&p, cap)?),
        Command::Scan { mode, lo, hi } => return scan(ctx, mode, lo, hi),
    };
    ctx.emit(&record);
    Ok(record.passed())
}

fn scan(ctx: &mut Ctx, mode: ScanMode, lo: u64, hi: u64) -> Result<bool, Failure> {
    let config = ScanConfig {
        range_lo: lo,
        range_hi: hi,
        mode,
        workers: ctx.global.workers,
        period_cap: ctx.global.period_cap,
    };
    let start = Instant::now();
    let result = run_scan(&config).map_err(|e| Failure::Core {
        error: e.error,
        n: Some(e.n.to_string()),
    })?;
    let mut ok = true;
    for item in &result.records {
        let r = record::scan_item(item);
        ok &= r.passed();
        ctx.emit(&r);
    }
    let summary = record::scan_summary(mode.name(), lo, hi, &result.summary);
    ok &= summary.passed();
    ctx.emit(&summary);
    // wall time goes to stderr so stdout stays identical across runs
    ctx.out.stderr.push_str(&format!(
        "scan {} [{lo}, {hi}] workers={} wall_time={:.3}s\n",
        mode.name(),
        config.workers,
        start.elapsed().as_secs_f64()
    ));
    Ok(ok)
}
