mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use std::io::Write;

use clap::builder::{BoolishValueParser, TypedValueParser};
use clap::{Parser, Subcommand, ValueEnum};
use monoara::resolution::Field;
use monoara::Error;

use crate::manifest::RunManifest;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_OUT_OF_SCOPE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "monoara", version, about = "Arithmetical rank and projective dimension of squarefree monomial ideals")]
struct Cli {
    /// Coefficient field: Q, F2, F3 or Fp:<p> [env: MONOARA_FIELD]
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    /// Worker threads for enumeration [env: MONOARA_JOBS]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for enumeration checkpoints [env: MONOARA_CHECKPOINT]
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Skip shards already recorded in the checkpoint [env: MONOARA_RESUME]
    #[arg(long, global = true)]
    resume: bool,
    /// Wall-clock budget; enumeration stops between shards, Gröbner queries give up [env: MONOARA_BUDGET_SECONDS]
    #[arg(long, global = true)]
    budget_seconds: Option<u64>,
    /// Output format [env: MONOARA_FORMAT]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write outputs and a run manifest into this directory [env: MONOARA_OUT]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PdRoute {
    /// Betti table of I, or reg I* when I has more than 12 generators
    Auto,
    Direct,
    Dual,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of generators, initial degree, height, arithmetic degree, connectivity
    Invariants { file: PathBuf },
    /// Minimal primes
    Primes { file: PathBuf },
    /// Alexander dual
    Dual { file: PathBuf },
    /// H(I) with its structure, canonical form and, for arithdeg <= 4, the template of H(I*)
    Hypergraph { file: PathBuf },
    /// Multigraded Betti numbers of S/I
    Betti { file: PathBuf },
    /// Projective dimension of S/I
    Pd {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        route: PdRoute,
    },
    /// Arithmetical rank with the path that establishes it
    Ara { file: PathBuf },
    /// Polynomials generating the ideal up to radical
    Generators { file: PathBuf },
    /// Steps 1 and 2 of the generic-set enumeration
    Enumerate {
        #[arg(long)]
        mu: usize,
        /// Step-2 target as HEIGHT,PD; repeatable
        #[arg(long = "target", value_parser = parse_target)]
        targets: Vec<(usize, usize)>,
    },
    /// Minimal reduced generic set for the given mu, height and pd
    GenericSet {
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        pd: usize,
    },
    /// Check the Schmitt-Vogel systems built for an ideal or a template instance
    VerifySv {
        #[arg(required_unless_present = "template", conflicts_with = "template")]
        file: Option<PathBuf>,
        /// Template number 1..=24
        #[arg(long, requires = "params")]
        template: Option<usize>,
        /// i1,..,i6,j2,j3,j4
        #[arg(long, requires = "template")]
        params: Option<String>,
    },
    /// Replay a radical certificate against an ideal
    VerifyCert { certificate: PathBuf, ideal: PathBuf },
    /// Decide radical membership of every generator by Gröbner bases
    Oracle { ideal: PathBuf, generators: PathBuf },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Fill options not given on the command line from MONOARA_* variables.
fn apply_env(cli: &mut Cli) -> Result<(), String> {
    fn var(name: &str) -> Option<String> {
        std::env::var(name).ok().filter(|v| !v.is_empty())
    }
    fn parsed<T: std::str::FromStr>(name: &str) -> Result<Option<T>, String> {
        var(name).map(|v| v.parse().map_err(|_| format!("invalid value `{v}` in {name}"))).transpose()
    }
    if cli.field.is_none() {
        cli.field = var("MONOARA_FIELD").map(|v| parse_field(&v).map_err(|e| format!("MONOARA_FIELD: {e}"))).transpose()?;
    }
    if cli.jobs.is_none() {
        cli.jobs = parsed("MONOARA_JOBS")?;
    }
    if cli.checkpoint.is_none() {
        cli.checkpoint = var("MONOARA_CHECKPOINT").map(PathBuf::from);
    }
    if !cli.resume {
        if let Some(v) = var("MONOARA_RESUME") {
            let cmd = clap::Command::new("monoara");
            cli.resume = BoolishValueParser::new()
                .parse_ref(&cmd, None, std::ffi::OsStr::new(&v))
                .map_err(|_| format!("invalid value `{v}` in MONOARA_RESUME"))?;
        }
    }
    if cli.budget_seconds.is_none() {
        cli.budget_seconds = parsed("MONOARA_BUDGET_SECONDS")?;
    }
    if cli.format.is_none() {
        cli.format = var("MONOARA_FORMAT")
            .map(|v| Format::from_str(&v, true).map_err(|_| format!("invalid value `{v}` in MONOARA_FORMAT")))
            .transpose()?;
    }
    if cli.out.is_none() {
        cli.out = var("MONOARA_OUT").map(PathBuf::from);
    }
    Ok(())
}

fn parse_target(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected HEIGHT,PD, got `{s}`");
    let (h, p) = s.split_once(',').ok_or_else(bad)?;
    Ok((h.trim().parse().map_err(|_| bad())?, p.trim().parse().map_err(|_| bad())?))
}

/// Settings every command may read.
pub struct Context {
    pub field: Field,
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub budget: Option<Duration>,
    pub started: Instant,
    pub manifest: RunManifest,
}

impl Context {
    pub fn deadline(&self) -> Option<Instant> {
        self.budget.map(|b| self.started + b)
    }
}

/// What a command produced.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    /// Extra files for `--out`, by name.
    pub files: Vec<(String, String)>,
    /// Exit status after printing: 0, or a verification or budget code.
    pub status: u8,
}

impl Report {
    pub fn new(json: serde_json::Value, text: String) -> Self {
        Self { json, text, files: Vec::new(), status: 0 }
    }
}

pub enum Failure {
    Usage(String),
    OutOfScope(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OutOfScope | Error::NotClassified | Error::NotInGenericSet | Error::CharDependence(_) => {
            EXIT_OUT_OF_SCOPE
        }
        Error::BudgetExhausted => EXIT_BUDGET,
        Error::CertificateStep { .. } | Error::Certificate(_) | Error::SvCheckFailed(_) | Error::ConstructionFailed(_) => {
            EXIT_VERIFICATION
        }
        _ => EXIT_USAGE,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Invariants { .. } => "invariants",
        Command::Primes { .. } => "primes",
        Command::Dual { .. } => "dual",
        Command::Hypergraph { .. } => "hypergraph",
        Command::Betti { .. } => "betti",
        Command::Pd { .. } => "pd",
        Command::Ara { .. } => "ara",
        Command::Generators { .. } => "generators",
        Command::Enumerate { .. } => "enumerate",
        Command::GenericSet { .. } => "generic-set",
        Command::VerifySv { .. } => "verify-sv",
        Command::VerifyCert { .. } => "verify-cert",
        Command::Oracle { .. } => "oracle",
    }
}

fn dispatch(cli: &Cli, cx: &mut Context) -> Result<Report, Failure> {
    use commands as c;
    match &cli.command {
        Command::Invariants { file } => c::invariants(cx, file),
        Command::Primes { file } => c::primes(cx, file),
        Command::Dual { file } => c::dual(cx, file),
        Command::Hypergraph { file } => c::hypergraph(cx, file),
        Command::Betti { file } => c::betti(cx, file),
        Command::Pd { file, route } => c::pd(cx, file, *route),
        Command::Ara { file } => c::ara(cx, file),
        Command::Generators { file } => c::generators(cx, file),
        Command::Enumerate { mu, targets } => c::enumerate(cx, *mu, targets),
        Command::GenericSet { mu, height, pd } => c::generic_set(cx, *mu, *height, *pd),
        Command::VerifySv { file, template, params } => c::verify_sv(cx, file.as_deref(), *template, params.as_deref()),
        Command::VerifyCert { certificate, ideal } => c::verify_cert(cx, certificate, ideal),
        Command::Oracle { ideal, generators } => c::oracle(cx, ideal, generators),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let mut cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(msg) = apply_env(&mut cli) {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let name = command_name(&cli.command);
    let mut cx = Context {
        field: cli.field.unwrap_or(Field::Q),
        jobs: cli.jobs.unwrap_or(1),
        checkpoint: cli.checkpoint.clone(),
        resume: cli.resume,
        budget: cli.budget_seconds.map(Duration::from_secs),
        started: Instant::now(),
        manifest: RunManifest::new(&argv[1..]),
    };
    let report = match dispatch(&cli, &mut cx) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::OutOfScope(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_OUT_OF_SCOPE);
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match cli.format.unwrap_or(Format::Text) {
        Format::Text => report.text.clone(),
        Format::Json => serde_json::to_string_pretty(&report.json).expect("values serialize") + "\n",
    };
    // A closed pipe downstream is not an error of ours.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    if let Some(dir) = &cli.out {
        if let Err(e) = cx.manifest.write(dir, name, &report, cx.started.elapsed()) {
            eprintln!("error: writing {}: {e}", dir.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(report.status)
}
