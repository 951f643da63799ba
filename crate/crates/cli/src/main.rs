use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use krcyclo::export::{self, ExportFormat, ExportRequest, MetricKind, Object};
use krcyclo::{verify, Caps, CliError, Theorem, VerificationReport, VerifyOptions};
use krcyclo_core::arcs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "krcyclo", version, about = "Exact checks on cyclohedra, root polytopes and KR polytopes")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Config file with `max_n.<check> = N` entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List admissible arc families.
    Faces {
        #[arg(long)]
        n: usize,
        /// Family size; all sizes when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a theorem check over one n or its default range.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled metrics for `gp`.
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        /// Measure pairs per metric for `duality`.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Include wall-clock timings (output is then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write an object as JSON or OFF.
    Export {
        #[arg(value_enum)]
        object: Object,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = MetricKind::Cyclohedral)]
        metric: MetricKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
    },
    /// Read an exported JSON file and write it back in canonical form.
    Import { path: PathBuf },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let caps = Caps::load(cli.config.as_deref())?;
    match cli.command {
        Command::Faces { n, k, count_only, format } => {
            caps.check("faces", n)?;
            let fams = arcs::enumerate_admissible(n, k)?;
            let text = if count_only {
                format!("{}\n", fams.len())
            } else {
                match format {
                    Format::Table => fams.iter().map(|f| format!("{f}\n")).collect(),
                    Format::Json => {
                        let js: Vec<_> = fams.iter().map(|f| f.to_json()).collect();
                        serde_json::to_string_pretty(&js)? + "\n"
                    }
                }
            };
            emit(&cli.out, &text)?;
            Ok(true)
        }
        Command::Verify { theorem, n, seed, seeds, pairs, format, timings } => {
            let ns: Vec<usize> = match n {
                Some(n) => vec![n],
                None => theorem.default_range().collect(),
            };
            for &n in &ns {
                caps.check(theorem.name(), n)?;
            }
            let opts = VerifyOptions { seed, seeds, pairs, ..VerifyOptions::default() };
            let mut reports: Vec<VerificationReport> = Vec::new();
            for n in ns {
                let start = Instant::now();
                let mut r = verify(theorem, n, &opts)?;
                if timings {
                    r.timings_ms = Some(start.elapsed().as_millis() as u64);
                }
                reports.push(r);
            }
            let text = match format {
                Format::Table => reports.iter().map(|r| r.table_line() + "\n").collect(),
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
            };
            emit(&cli.out, &text)?;
            Ok(reports.iter().all(VerificationReport::passed))
        }
        Command::Export { object, n, k, metric, seed, format } => {
            caps.check("faces", n)?;
            let text = export::export(&ExportRequest { object, n, k, metric, seed, format })?;
            emit(&cli.out, &text)?;
            Ok(true)
        }
        Command::Import { path } => {
            let text = std::fs::read_to_string(&path)?;
            emit(&cli.out, &export::reimport(&text)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
