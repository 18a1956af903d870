//! Command-line front end: job descriptions, result records, output
//! formats and a fingerprint-keyed result cache.

pub mod cache;
pub mod compute;
pub mod error;
pub mod inspect;
pub mod job;
pub mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rootpoly::Execution;

pub use cache::{Cache, CACHE_ENV};
pub use compute::{cmd_compute, Coefficient, ResultRecord};
pub use error::{CliError, CliResult};
pub use inspect::{cmd_inspect, matrix_view, InspectKind, MatrixView};
pub use job::{Construction, JobSpec, OutputFormat, RootDataFile};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "rootpoly", version, about = "Monomial expansions of Heckman-Opdam and Macdonald polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the monomial expansion of a polynomial.
    Compute {
        #[command(flatten)]
        job: JobArgs,
        /// Cache directory; defaults to $ROOTPOLY_CACHE_DIR, no caching when unset.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Show the dominant interval, an orbit, a stabilizer order or the assembled matrix.
    Inspect {
        #[arg(value_enum)]
        kind: InspectKind,
        #[command(flatten)]
        job: JobArgs,
    },
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// A, B, C, D or BC.
    #[arg(long)]
    pub family: Option<String>,
    /// Number of coordinates; for A this is N with root system A_{N-1}.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Comma-separated coordinates, halves allowed: 2,1,0 or 3/2,1/2,1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
    #[arg(long, value_enum, default_value_t = Construction::Ho)]
    pub construction: Construction,
    /// Parameter binding such as g=1, g_s=1/2, q=2, t=q^2; repeatable.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Minuscule weight for the Macdonald operator: default, omega1, omegaR, R, spin-, spin+ or sum.
    #[arg(long)]
    pub minuscule: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Drop weights outside the C_N order (BC with g_s = 0, or C).
    #[arg(long)]
    pub prune_cn: bool,
    /// Cancel full polynomial gcds in every intermediate coefficient.
    #[arg(long)]
    pub full_gcd: bool,
    /// Run the operator and orthogonality oracles on the result.
    #[arg(long)]
    pub check: bool,
    /// JSON file with "positive_roots" and "g" for the generic path.
    #[arg(long)]
    pub root_data: Option<PathBuf>,
    /// Disable data parallelism.
    #[arg(long)]
    pub sequential: bool,
}

impl JobArgs {
    pub fn into_job(self) -> CliResult<JobSpec> {
        let mut job = match &self.root_data {
            Some(path) => {
                if self.family.is_some() {
                    return Err(CliError::Usage("--family and --root-data are exclusive".into()));
                }
                JobSpec::generic(RootDataFile::load(path)?, &self.weight)?
            }
            None => {
                let family = self.family.as_deref().ok_or_else(|| CliError::Usage("--family is required".into()))?;
                let w = rootpoly::Weight::parse(&self.weight)?;
                let rank = self.rank.unwrap_or(w.len());
                JobSpec::new(family, rank, &self.weight, self.construction)?
            }
        };
        if let (Some(r), true) = (self.rank, job.is_generic()) {
            if r != job.rank {
                return Err(CliError::Usage(format!("root data has dimension {}, not {}", job.rank, r)));
            }
        }
        job.construction = self.construction;
        for pair in &self.set {
            job = job.set_pair(pair)?;
        }
        if let Some(m) = &self.minuscule {
            job = job.minuscule(m);
        }
        let exec = if self.sequential { Execution::Sequential } else { Execution::Parallel };
        Ok(job.prune_cn(self.prune_cn).full_gcd(self.full_gcd).check(self.check).format(self.format).exec(exec))
    }
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json value"))
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Compute { job, cache_dir } => {
            let job = job.into_job()?;
            let cache = Cache::resolve(cache_dir.as_deref());
            let rec = cmd_compute(&job, cache.as_ref())?;
            for w in &rec.warnings {
                writeln!(err, "{}", w)?;
            }
            writeln!(err, "provenance: {} ({} {})", rec.provenance.source, rec.provenance.engine, rec.provenance.version)?;
            writeln!(err, "fingerprint: {}", rec.fingerprint)?;
            writeln!(err, "timing: {:.3} ms", rec.timing_ms)?;
            match job.format {
                OutputFormat::Json => emit_json(out, &rec.to_json())?,
                OutputFormat::Latex => writeln!(out, "{}", render::record_latex(&rec)?)?,
                OutputFormat::Plain => write!(out, "{}", render::record_plain(&rec))?,
            }
            if rec.checks_passed() {
                Ok(0)
            } else {
                writeln!(err, "check failed")?;
                Ok(1)
            }
        }
        Command::Inspect { kind, job } => {
            let job = job.into_job()?;
            let report = cmd_inspect(kind, &job)?;
            match job.format {
                OutputFormat::Json => emit_json(out, &report.json)?,
                _ => write!(out, "{}", report.text)?,
            }
            Ok(0)
        }
    }
}

/// Parse `argv`, run the command and return the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{}", text);
            } else {
                let _ = write!(err, "{}", text);
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = emit_json(out, &e.to_json());
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}
