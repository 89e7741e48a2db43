//! Command-line front end for `wronski-core`.
//!
//! [`run`] parses arguments, executes one job, and returns the exit code with
//! the JSON document destined for standard output. Every subcommand is a thin
//! constructor for a [`JobSpec`]; the `job` subcommand reads one directly.

use std::ffi::OsString;
use std::fmt;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

mod commands;
pub mod scalars;
pub mod schema;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Solve,
    Verify,
    Dims,
    Basis,
    Positivity,
    Relations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Which {
    Commutativity,
    Translation,
    PluckerSingleColumn,
    PluckerSingleRow,
    PluckerAll,
    PluckerSampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Seminormal,
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    All,
    SingleColumn,
    SingleRow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Tnn,
    TpInCell,
}

/// One unit of work. Fields a command does not use are ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: CommandKind,
    #[serde(default)]
    pub nu: Option<Vec<usize>>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub z: Option<Vec<String>>,
    #[serde(default)]
    pub kappa: Option<Vec<usize>>,
    #[serde(default)]
    pub which: Option<Vec<Which>>,
    #[serde(default)]
    pub form: Option<Form>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tol_cluster: Option<f64>,
    #[serde(default)]
    pub tol_residual: Option<f64>,
    #[serde(default)]
    pub max_retries: Option<usize>,
    #[serde(default)]
    pub points: Option<usize>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub list: bool,
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub tol: Option<f64>,
    /// File holding the upstream document for `basis` and `positivity`; standard input otherwise.
    #[serde(default)]
    pub input: Option<String>,
    #[serde(default)]
    pub out: Option<String>,
}

impl JobSpec {
    pub fn new(command: CommandKind) -> Self {
        JobSpec {
            command,
            nu: None,
            n: None,
            z: None,
            kappa: None,
            which: None,
            form: None,
            seed: 0,
            tol_cluster: None,
            tol_residual: None,
            max_retries: None,
            points: None,
            samples: None,
            d: None,
            m: None,
            family: None,
            list: false,
            t: None,
            mode: None,
            tol: None,
            input: None,
            out: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Io(String),
    Core(wronski_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use wronski_core::Error as E;
        match self {
            CliError::Core(E::RetryExhausted { .. } | E::Numerical(_) | E::RankDeficient) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Io(_) => "io",
            CliError::Core(_) if self.exit_code() == 1 => "numerical",
            CliError::Core(_) => "argument",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Input(s) | CliError::Io(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<wronski_core::Error> for CliError {
    fn from(e: wronski_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "wronski", version, about = "Inverse Wronski solver and identity verifier")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solve the inverse Wronski problem for one shape or every shape of size n.
    Solve(SolveArgs),
    /// Check operator identities on Specht modules.
    Verify(VerifyArgs),
    /// Dimensions of Bethe subspaces for repeated roots.
    Dims(DimsArgs),
    /// Echelon and h bases for every solution of a solve document.
    Basis(BasisArgs),
    /// Positivity verdicts for every solution of a solve document.
    Positivity(PositivityArgs),
    /// Count or list Plücker relations of Gr(d, m).
    Relations(RelationsArgs),
    /// Run a JobSpec JSON document read from a file or standard input.
    Job {
        file: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<usize>>,
    #[arg(long)]
    n: Option<usize>,
    /// Roots, or the distinct roots when --kappa is given.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    z: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    kappa: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol_cluster: Option<f64>,
    #[arg(long)]
    tol_residual: Option<f64>,
    #[arg(long)]
    max_retries: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<usize>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    which: Option<Vec<Which>>,
    #[arg(long, value_enum)]
    form: Option<Form>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random (s, t) trial points.
    #[arg(long)]
    points: Option<usize>,
    /// Number of relations drawn for plucker-sampled.
    #[arg(long)]
    samples: Option<usize>,
    /// Tolerance for the orthogonal form.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DimsArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    kappa: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<usize>>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    input: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct PositivityArgs {
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    input: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct RelationsArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    output: Output,
}

/// Exit code and the text for both output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &CliError) -> Self {
        let doc = json!({ "error": e.kind(), "message": e.to_string() });
        Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("{doc}\n") }
    }
}

fn read_source(path: Option<&str>, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{p}: {e}")))?,
        None => {
            stdin.read_to_string(&mut text).map_err(|e| CliError::Io(format!("standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn job_from_cli(cmd: Cmd, stdin: &mut dyn Read) -> Result<JobSpec, CliError> {
    Ok(match cmd {
        Cmd::Solve(a) => JobSpec {
            nu: a.nu,
            n: a.n,
            z: Some(a.z),
            kappa: a.kappa,
            seed: a.seed,
            tol_cluster: a.tol_cluster,
            tol_residual: a.tol_residual,
            max_retries: a.max_retries,
            out: a.output.out,
            ..JobSpec::new(CommandKind::Solve)
        },
        Cmd::Verify(a) => JobSpec {
            nu: a.nu,
            n: a.n,
            which: a.which,
            form: a.form,
            z: a.z,
            seed: a.seed,
            points: a.points,
            samples: a.samples,
            tol: a.tol,
            out: a.output.out,
            ..JobSpec::new(CommandKind::Verify)
        },
        Cmd::Dims(a) => {
            JobSpec { kappa: Some(a.kappa), nu: a.nu, out: a.output.out, ..JobSpec::new(CommandKind::Dims) }
        }
        Cmd::Basis(a) => JobSpec {
            d: a.d,
            t: a.t,
            tol: a.tol,
            input: a.input,
            out: a.output.out,
            ..JobSpec::new(CommandKind::Basis)
        },
        Cmd::Positivity(a) => JobSpec {
            mode: a.mode,
            tol: a.tol,
            input: a.input,
            out: a.output.out,
            ..JobSpec::new(CommandKind::Positivity)
        },
        Cmd::Relations(a) => JobSpec {
            d: Some(a.d),
            m: Some(a.m),
            family: a.family,
            list: a.list,
            out: a.output.out,
            ..JobSpec::new(CommandKind::Relations)
        },
        Cmd::Job { file } => {
            let text = read_source(file.as_deref(), stdin)?;
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("job document: {e}")))?
        }
    })
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("BW_THREADS") {
        let k: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("BW_THREADS must be a count, got {v:?}")))?;
        if k > 0 {
            builder = builder.num_threads(k);
        }
    }
    builder.build().map_err(|e| CliError::Io(e.to_string()))
}

/// Execute a job. Upstream documents are read from `job.input` or `stdin`.
pub fn run_job(job: &JobSpec, stdin: &mut dyn Read) -> Outcome {
    let result = thread_pool().and_then(|pool| {
        let mut read = |path: Option<&str>| read_source(path, stdin);
        let input = match job.command {
            CommandKind::Basis | CommandKind::Positivity => Some(read(job.input.as_deref())?),
            _ => None,
        };
        pool.install(|| commands::execute(job, input.as_deref()))
    });
    let (doc, pass) = match result {
        Ok(v) => v,
        Err(e) => return Outcome::error(&e),
    };
    let text = format!("{}\n", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
    let code = if pass { 0 } else { 1 };
    match &job.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::error(&CliError::Io(format!("{path}: {e}"))),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

/// Parse `args` (program name first) and run the resulting job.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: e.to_string(), stderr: String::new() }
                }
                _ => Outcome::error(&CliError::Usage(e.to_string())),
            };
        }
    };
    match job_from_cli(cli.cmd, stdin) {
        Ok(job) => run_job(&job, stdin),
        Err(e) => Outcome::error(&e),
    }
}
