//! Command-line front end.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::corpus::{random_convenient, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::newton::{parse_json, parse_polynomial, MonomialSupport, NewtonPolyhedron};
use crate::report;
use crate::spectrum::identities::Check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
/// A verification verb ran but one of its checks failed.
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "newton-spectrum", version, about = "Singularity invariants from the Newton polyhedron")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,

    /// Treat the function as Newton non-degenerate.
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set, value_name = "BOOL")]
    pub assume_nondegenerate: bool,

    /// Assert that the singularity is isolated.
    #[arg(long, global = true)]
    pub assume_isolated: bool,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,

    /// Seed for `--random`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Run the verb on N seeded random convenient supports instead of INPUT.
    #[arg(long, global = true, value_name = "N")]
    pub random: Option<usize>,

    /// Read INPUT as a path to a file.
    #[arg(long, global = true)]
    pub file: bool,

    /// Parse the input as JSON rather than polynomial text.
    #[arg(long, global = true)]
    pub json_input: bool,

    /// Number of variables, when it cannot be inferred from the text.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Classification and face table.
    Analyze { input: Option<String> },
    /// Hodge and Steenbrink spectra.
    Spectrum { input: Option<String> },
    /// Spectral pairs.
    Pairs { input: Option<String> },
    /// Jordan blocks of maximal and next-to-maximal size.
    Jordan { input: Option<String> },
    /// Maximal root of the Bernstein-Sato polynomial.
    BsRoot { input: Option<String> },
    /// Normal fan and a smooth subdivision.
    Fan { input: Option<String> },
    /// Motivic descent identity along a smooth subdivision.
    DescentCheck { input: Option<String> },
    /// Cross-checks against independent oracles.
    OracleCheck { input: Option<String> },
    /// Identities between the face polynomials.
    Identities { input: Option<String> },
}

impl Verb {
    fn input(&self) -> Option<&str> {
        match self {
            Verb::Analyze { input }
            | Verb::Spectrum { input }
            | Verb::Pairs { input }
            | Verb::Jordan { input }
            | Verb::BsRoot { input }
            | Verb::Fan { input }
            | Verb::DescentCheck { input }
            | Verb::OracleCheck { input }
            | Verb::Identities { input } => input.as_deref(),
        }
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load_support(cli: &Cli, input: &str) -> Result<MonomialSupport> {
    let text = if cli.file {
        std::fs::read_to_string(input).map_err(|e| Error::InvalidInput(format!("cannot read {input}: {e}")))?
    } else {
        input.to_string()
    };
    let json = cli.json_input || (cli.file && input.ends_with(".json"));
    let support = if json {
        let s = parse_json(&text)?;
        if let Some(d) = cli.dim {
            if d != s.n {
                return Err(Error::DimensionMismatch { expected: d, found: s.n });
            }
        }
        s
    } else {
        parse_polynomial(text.trim(), cli.dim)?
    };
    let isolated = support.assume_isolated || cli.assume_isolated;
    let nondegenerate = support.assume_nondegenerate && cli.assume_nondegenerate;
    Ok(support.with_flags(nondegenerate, isolated))
}

fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| !c.failed())
}

/// Runs the verb on one polyhedron; the flag is false when a check failed.
fn run_verb(verb: &Verb, p: &NewtonPolyhedron) -> Result<(Value, bool)> {
    Ok(match verb {
        Verb::Analyze { .. } => (report::analyze(p)?, true),
        Verb::Spectrum { .. } => (report::spectrum(p)?.1, true),
        Verb::Pairs { .. } => (report::pairs(p)?.1, true),
        Verb::Jordan { .. } => (report::jordan(p)?.1, true),
        Verb::BsRoot { .. } => (report::bs_root(p)?.1, true),
        Verb::Fan { .. } => (report::fan(p)?.2, true),
        Verb::DescentCheck { .. } => {
            let (r, v) = report::descent(p)?;
            (v, r.holds)
        }
        Verb::OracleCheck { .. } => {
            let (c, v) = report::oracle_check(p)?;
            (v, all_pass(&c))
        }
        Verb::Identities { .. } => {
            let (c, v) = report::identities(p)?;
            (v, all_pass(&c))
        }
    })
}

fn render(cli: &Cli, v: &Value) -> String {
    match cli.output {
        Output::Json => report::to_string(v),
        Output::Text => report::to_text(v),
    }
}

fn error_outcome(cli: &Cli, e: &Error) -> Outcome {
    let code = if e.is_domain() { EXIT_DOMAIN } else { EXIT_INPUT };
    Outcome { code, stdout: render(cli, &report::error_json(e)), stderr: format!("error: {e}") }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("NEWTON_SPECTRUM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Error::InvalidInput(format!("NEWTON_SPECTRUM_THREADS must be a positive integer, got {raw:?}"))
    })?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            return Outcome {
                code,
                stdout: if code == EXIT_OK { e.to_string() } else { String::new() },
                stderr: if code == EXIT_OK { String::new() } else { e.to_string() },
            };
        }
    };
    dispatch(&cli)
}

pub fn dispatch(cli: &Cli) -> Outcome {
    if let Err(e) = configure_threads() {
        return error_outcome(cli, &e);
    }
    if let Some(count) = cli.random {
        let mut results = Vec::with_capacity(count);
        let mut ok = true;
        for inst in random_convenient(cli.seed, count) {
            let support = inst.support.with_flags(cli.assume_nondegenerate, cli.assume_isolated);
            let v = match NewtonPolyhedron::build(support).and_then(|p| run_verb(&cli.verb, &p)) {
                Ok((v, pass)) => {
                    ok &= pass;
                    v
                }
                Err(e) => report::error_json(&e),
            };
            results.push(json!({"input": inst.name, "report": v}));
        }
        let v = json!({"results": results, "seed": cli.seed});
        return Outcome {
            code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED },
            stdout: render(cli, &v),
            stderr: String::new(),
        };
    }
    let Some(input) = cli.verb.input() else {
        return error_outcome(cli, &Error::InvalidInput("missing INPUT (or pass --random N)".into()));
    };
    let result = load_support(cli, input).and_then(NewtonPolyhedron::build).and_then(|p| run_verb(&cli.verb, &p));
    match result {
        Ok((v, pass)) => Outcome {
            code: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
            stdout: render(cli, &v),
            stderr: String::new(),
        },
        Err(e) => error_outcome(cli, &e),
    }
}
