mod report;
mod tabulate;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rla_core::assertions::{assertions_for_method, export_assertions, import_assertions};
use rla_core::audit::{
    estimate_audit, run_audit, AuditConfig, AuditOutcome, AuditStyle, DEFAULT_ERROR_RATE,
    DEFAULT_PADDING, DEFAULT_RISK_LIMIT, DEFAULT_SEED, DEFAULT_TRIALS,
};
use rla_core::io::{parse, parse_samples, scale, SourceFormat};
use rla_core::tabulation::DEFAULT_MAX_K;
use rla_core::{AssertionSet, Election, Error, Method};

const EXIT_FULL_COUNT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "rla",
    version,
    about = "Tabulate ranked-ballot elections and plan or run risk-limiting audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read an election file and summarize it.
    Parse {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Compute the winner and the intermediate structures of a method.
    Tabulate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// Generate the assertion set for a method.
    Assertions {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// Estimate audit sample sizes by simulation.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        audit: AuditArgs,
    },
    /// Run an audit over a file of sampled ballots.
    Audit {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        audit: AuditArgs,
        /// JSON lines of sampled ballots, in draw order.
        #[arg(long)]
        samples_file: PathBuf,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Election file: `.json` for the native format, anything else is read as Preflib.
    input: PathBuf,
    /// Multiply every ballot count by this factor.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    scale: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct MethodArgs {
    /// irv, condorcet, ranked-pairs, minimax, smith-minimax, smith-irv or kemeny.
    #[arg(long, default_value = "ranked-pairs", value_parser = parse_method)]
    method: Method,
    /// Assertion-set JSON. For irv and smith-irv these are the imported IRV
    /// assertions; otherwise the file replaces generation.
    #[arg(long)]
    assertions_file: Option<PathBuf>,
    /// Largest candidate count Kemeny-Young will enumerate.
    #[arg(long, default_value_t = DEFAULT_MAX_K)]
    kemeny_limit: usize,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, default_value_t = DEFAULT_RISK_LIMIT)]
    risk_limit: f64,
    #[arg(long, default_value_t = DEFAULT_ERROR_RATE)]
    error_rate: f64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, env = "RLA_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Style::Polling)]
    style: Style,
    /// Padding added to each value in the Kaplan-Kolmogorov test.
    #[arg(long, default_value_t = DEFAULT_PADDING)]
    padding: f64,
    /// Simulated audits stop and count everything past this share of ballots.
    #[arg(long, default_value_t = 1.0)]
    max_sample_fraction: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Polling,
    Comparison,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl AuditArgs {
    fn config(&self) -> AuditConfig {
        AuditConfig {
            risk_limit: self.risk_limit,
            error_rate: self.error_rate,
            trials: self.trials,
            seed: self.seed,
            style: match self.style {
                Style::Polling => AuditStyle::Polling,
                Style::Comparison => AuditStyle::Comparison,
            },
            padding: self.padding,
            max_sample_fraction: self.max_sample_fraction,
        }
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Schema(_) | Error::Data(_) | Error::InvalidState(_) => {
                EXIT_INPUT
            }
            Error::InvalidArgument(_) | Error::Capacity(_) => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load(input: &InputArgs) -> Result<Election, Failure> {
    let text = read(&input.input)?;
    let parsed = parse(&text, SourceFormat::from_path(&input.input)).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", input.input.display(), f.message);
        f
    })?;
    for w in &parsed.warnings {
        eprintln!(
            "warning: {} line {}: {}",
            input.input.display(),
            w.line,
            w.message
        );
    }
    Ok(scale(&parsed.election, input.scale)?)
}

fn assertion_set(election: &Election, args: &MethodArgs) -> Result<AssertionSet, Failure> {
    let file = match &args.assertions_file {
        Some(path) => {
            let set = import_assertions(&read(path)?, election)?;
            if let Some(d) = &set.metadata.election_digest {
                if *d != election.digest() {
                    eprintln!(
                        "warning: {} was generated for a different election",
                        path.display()
                    );
                }
            }
            Some(set)
        }
        None => None,
    };
    match (args.method, file) {
        (Method::Irv | Method::SmithIrv, None) => Err(usage(format!(
            "--method {} needs --assertions-file with externally generated IRV assertions \
             (IRV assertion generation is not part of this tool)",
            args.method
        ))),
        (Method::Irv | Method::SmithIrv, Some(imported)) => Ok(assertions_for_method(
            args.method,
            election,
            Some(&imported),
            args.kemeny_limit,
        )?),
        (_, Some(set)) => Ok(set),
        (method, None) => Ok(assertions_for_method(
            method,
            election,
            None,
            args.kemeny_limit,
        )?),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { input } => {
            let e = load(&input)?;
            print!(
                "{}",
                report::election_summary(&e, input.format == Format::Json)
            );
            Ok(0)
        }
        Command::Tabulate { input, method } => {
            let e = load(&input)?;
            let imported = match &method.assertions_file {
                Some(p) => Some(import_assertions(&read(p)?, &e)?),
                None => None,
            };
            let out =
                tabulate::tabulate(&e, method.method, imported.as_ref(), method.kemeny_limit)?;
            print!(
                "{}",
                if input.format == Format::Json {
                    out.json()
                } else {
                    out.text()
                }
            );
            Ok(0)
        }
        Command::Assertions { input, method } => {
            let e = load(&input)?;
            let set = assertion_set(&e, &method)?;
            match input.format {
                Format::Json => println!("{}", export_assertions(&set, &e)),
                Format::Text => print!("{}", report::assertion_list(&set, &e)),
            }
            Ok(0)
        }
        Command::Estimate {
            input,
            method,
            audit,
        } => {
            let e = load(&input)?;
            let set = assertion_set(&e, &method)?;
            let cfg = audit.config();
            let est = estimate_audit(&set, &e, &cfg)?;
            match input.format {
                Format::Json => println!("{}", report::estimate_json(&set, &e, &est, &cfg)),
                Format::Text => print!("{}", report::estimate_text(&set, &e, &est)),
            }
            Ok(if est.full_count { EXIT_FULL_COUNT } else { 0 })
        }
        Command::Audit {
            input,
            method,
            audit,
            samples_file,
        } => {
            let e = load(&input)?;
            let set = assertion_set(&e, &method)?;
            let samples = parse_samples(&read(&samples_file)?, &e)?;
            let cfg = audit.config();
            let rep = run_audit(&set, &e, &samples, &cfg)?;
            match input.format {
                Format::Json => println!("{}", report::audit_json(&set, &e, &rep, &cfg)),
                Format::Text => print!("{}", report::audit_text(&set, &e, &rep, &cfg)),
            }
            Ok(match rep.outcome {
                AuditOutcome::Certified => 0,
                AuditOutcome::EscalateFullCount => EXIT_FULL_COUNT,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
