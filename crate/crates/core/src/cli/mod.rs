//! `xadd` command line: `add`, `verify` and `check`.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 overflow, 3 mismatch.

pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::add::{add_positive, AddError};
use crate::float::{Context, Precision, RoundingMode, Sign, DEFAULT_MAX_PRECISION};
use crate::rounding::round_to_prec;
use crate::textio::{parse_fixtures, parse_value, Special, Value};
use verify::{engine_expected, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_OVERFLOW: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "xadd",
    version,
    about = "Exactly rounded multiple-precision addition"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Add two positive values and print `result ternary`.
    Add(AddArgs),
    /// Compare the engine with the reference on seeded random cases.
    Verify(VerifyArgs),
    /// Replay a fixture file.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct AddArgs {
    /// Target precision in bits.
    #[arg(short = 'p', long = "prec")]
    pub prec: u64,
    #[arg(short = 'm', long = "mode", default_value = "nearest", value_parser = parse_mode)]
    pub mode: RoundingMode,
    /// Also print how many trailing bits were examined.
    #[arg(long)]
    pub stats: bool,
    #[arg(allow_hyphen_values = true)]
    pub x: String,
    #[arg(allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub count: u64,
    #[arg(long = "max-prec", default_value_t = 64)]
    pub max_prec: u64,
    /// Restrict to one rounding mode; all four by default.
    #[arg(short = 'm', long = "mode", value_parser = parse_mode)]
    pub mode: Option<RoundingMode>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub fixture: PathBuf,
}

fn parse_mode(s: &str) -> Result<RoundingMode, String> {
    RoundingMode::from_name(s)
        .ok_or_else(|| format!("unknown mode {s:?} (expected down, up, zero or nearest)"))
}

/// Settings shared by the commands, validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub mode: RoundingMode,
    pub precision: Option<Precision>,
    pub seed: u64,
    pub count: u64,
    pub max_prec: u64,
    pub stats: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            mode: RoundingMode::NearestEven,
            precision: None,
            seed: 1,
            count: 1000,
            max_prec: 64,
            stats: false,
        }
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.count < 1 {
            return Err("invalid count: must be at least 1".into());
        }
        if self.max_prec < 2 || self.max_prec > DEFAULT_MAX_PRECISION as u64 {
            return Err(format!(
                "invalid max-prec {}: must be between 2 and {DEFAULT_MAX_PRECISION}",
                self.max_prec
            ));
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Add(a) => cmd_add(&a, out),
        Command::Verify(v) => cmd_verify(&v, out),
        Command::Check(c) => cmd_check(&c, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "xadd: {msg}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn io(e: std::io::Error) -> String {
    e.to_string()
}

pub fn cmd_add(args: &AddArgs, out: &mut dyn Write) -> CmdResult {
    let config = CliConfig {
        mode: args.mode,
        precision: Some(Precision::new(args.prec).map_err(|e| e.to_string())?),
        stats: args.stats,
        ..CliConfig::default()
    };
    let p = config.precision.expect("set above");
    let x = parse_value(&args.x).map_err(|e| e.to_string())?;
    let y = parse_value(&args.y).map_err(|e| e.to_string())?;

    let operand = |v: &Value| -> Result<(), String> {
        match v {
            Value::Special(s @ (Special::NaN | Special::Inf(_))) => {
                Err(format!("special value {s} is not supported"))
            }
            Value::Finite(f) if !f.is_positive() => Err(AddError::NotPositive.to_string()),
            _ => Ok(()),
        }
    };
    operand(&x)?;
    operand(&y)?;

    let (result, bits_examined) = match (&x, &y) {
        (Value::Finite(a), Value::Finite(b)) => match add_positive(a, b, p, config.mode) {
            Ok(o) => (
                Ok((o.result.to_string(), o.ternary)),
                Some(o.stats.trailing_bits_examined),
            ),
            Err(AddError::Overflow(o)) => (Err(o), None),
            Err(e) => return Err(e.to_string()),
        },
        (Value::Finite(a), Value::Special(_)) | (Value::Special(_), Value::Finite(a)) => {
            match round_to_prec(a, p, config.mode) {
                Ok(r) => (Ok((r.value.to_string(), r.ternary)), None),
                Err(o) => (Err(o), None),
            }
        }
        (Value::Special(a), Value::Special(b)) => {
            let neg = *a == Special::Zero(Sign::Neg) && *b == Special::Zero(Sign::Neg);
            let zero = if neg { "-0" } else { "0" };
            (Ok((zero.to_owned(), crate::Ternary::Exact)), None)
        }
    };

    match result {
        Ok((value, ternary)) => {
            writeln!(out, "{value} {ternary}").map_err(io)?;
            if config.stats {
                writeln!(out, "# bits_examined={}", bits_examined.unwrap_or(0)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Err(o) => {
            writeln!(out, "{o} {}", o.ternary).map_err(io)?;
            Ok(EXIT_OVERFLOW)
        }
    }
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let config = CliConfig {
        mode: args.mode.unwrap_or(RoundingMode::NearestEven),
        seed: args.seed,
        count: args.count,
        max_prec: args.max_prec,
        ..CliConfig::default()
    };
    config.validate()?;
    let modes: Vec<RoundingMode> = match args.mode {
        Some(m) => vec![m],
        None => RoundingMode::ALL.to_vec(),
    };
    writeln!(
        out,
        "# seed={} count={} max_prec={}",
        config.seed, config.count, config.max_prec
    )
    .map_err(io)?;
    match verify::verify(config.seed, config.count, config.max_prec, &modes) {
        VerifyReport::Pass { cases } => {
            writeln!(out, "PASS n={cases}").map_err(io)?;
            Ok(EXIT_OK)
        }
        VerifyReport::Mismatch { index, case, got } => {
            writeln!(out, "FAIL case={index}").map_err(io)?;
            writeln!(out, "{case}").map_err(io)?;
            match got {
                Ok(g) => writeln!(out, "# engine: {g}"),
                Err(e) => writeln!(out, "# engine error: {e}"),
            }
            .map_err(io)?;
            Ok(EXIT_MISMATCH)
        }
    }
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(&args.fixture)
        .map_err(|e| format!("{}: {e}", args.fixture.display()))?;
    let cases = parse_fixtures(&text).map_err(|e| format!("{}: {e}", args.fixture.display()))?;
    let ctx = Context::DEFAULT;
    let mut mismatches = 0usize;
    for (line, case) in &cases {
        match engine_expected(&ctx, &case.x, &case.y, case.prec, case.mode) {
            Ok(got) if got == case.expected => writeln!(out, "line {line}: ok"),
            Ok(got) => {
                mismatches += 1;
                writeln!(
                    out,
                    "line {line}: MISMATCH expected {} got {got}",
                    case.expected
                )
            }
            Err(e) => {
                mismatches += 1;
                writeln!(
                    out,
                    "line {line}: MISMATCH expected {} got error {e}",
                    case.expected
                )
            }
        }
        .map_err(io)?;
    }
    if mismatches == 0 {
        writeln!(out, "PASS n={}", cases.len()).map_err(io)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAIL mismatches={mismatches} n={}", cases.len()).map_err(io)?;
        Ok(EXIT_MISMATCH)
    }
}
