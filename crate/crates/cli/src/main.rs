//! `reembed`: command-line front end.
//!
//! Exit status is 0 on success, 2 when a budget made the answer
//! inconclusive and 1 on any error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reembed_core::groebner::PairStrategy;
use reembed_core::job::{parse_job_for, run_job, validate, Algorithm, Command, JobSpec, OrderingSpec};

#[derive(Parser)]
#[command(name = "reembed", version, about = "Separating re-embeddings of affine algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for candidate verification (0 = all cores).
    #[arg(long, env = "REEMBED_THREADS", global = true)]
    threads: Option<usize>,

    /// Reduction budget per Groebner basis computation.
    #[arg(long, env = "REEMBED_BUDGET", global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Gfan,
    Cotangent,
}

#[derive(Args)]
struct JobFile {
    /// Job file, or `-` for standard input.
    jobfile: PathBuf,
}

#[derive(Subcommand)]
enum Sub {
    /// Reduced Groebner basis, optionally with a separating check.
    Gb {
        #[command(flatten)]
        file: JobFile,
        /// `degrevlex`, `lex`, `elim(x,y)` or a JSON weight matrix.
        #[arg(long)]
        ordering: Option<String>,
        /// Comma-separated indeterminates to test for separation.
        #[arg(long)]
        z: Option<String>,
        /// Use the sugar pair-selection strategy.
        #[arg(long)]
        sugar: bool,
    },
    /// Groebner fan of an ideal generated by linear forms.
    GfanLinear {
        #[command(flatten)]
        file: JobFile,
    },
    /// Cotangent equivalence classes of the linear part.
    Cotangent {
        #[command(flatten)]
        file: JobFile,
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Search for a separating re-embedding.
    Reembed {
        #[command(flatten)]
        file: JobFile,
        #[arg(long, value_enum)]
        alg: Option<AlgArg>,
        /// Size of the tuple Z (defaults to dim Lin).
        #[arg(long)]
        size: Option<usize>,
        /// Only optimal candidates (cotangent search).
        #[arg(long)]
        optimal_only: bool,
        /// Report every verified candidate instead of the first.
        #[arg(long)]
        all: bool,
        /// Check this tuple only.
        #[arg(long)]
        z: Option<String>,
        /// Stop starting new candidates after this many seconds.
        #[arg(long)]
        wall: Option<f64>,
    },
    /// Border basis scheme of an order ideal.
    Bbs {
        #[command(flatten)]
        file: JobFile,
        /// Continue with the cotangent re-embedding search.
        #[arg(long)]
        reembed: bool,
        #[arg(long)]
        optimal_only: bool,
        #[arg(long)]
        all: bool,
    },
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

fn names(s: &str) -> Vec<String> {
    s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

fn build_spec(cli: &Cli) -> Result<JobSpec, String> {
    let (command, file) = match &cli.command {
        Sub::Gb { file, .. } => (Command::Gb, file),
        Sub::GfanLinear { file } => (Command::GfanLinear, file),
        Sub::Cotangent { file, .. } => (Command::Cotangent, file),
        Sub::Reembed { file, .. } => (Command::Reembed, file),
        Sub::Bbs { file, .. } => (Command::Bbs, file),
    };
    let text = read_input(&file.jobfile)?;
    let mut spec = parse_job_for(&text, Some(command)).map_err(|e| e.to_string())?;
    if cli.budget.is_some() {
        spec.budget = cli.budget;
    }
    match &cli.command {
        Sub::Gb { ordering, z, sugar, .. } => {
            if let Some(o) = ordering {
                spec.ordering = OrderingSpec::parse(o)?;
            }
            if let Some(z) = z {
                spec.z = Some(names(z));
            }
            if *sugar {
                spec.strategy = PairStrategy::Sugar;
            }
        }
        Sub::Cotangent { ordering: Some(o), .. } => spec.ordering = OrderingSpec::parse(o)?,
        Sub::Reembed {
            alg,
            size,
            optimal_only,
            all,
            z,
            wall,
            ..
        } => {
            if let Some(a) = alg {
                spec.alg = match a {
                    AlgArg::Gfan => Algorithm::Gfan,
                    AlgArg::Cotangent => Algorithm::Cotangent,
                };
            }
            if size.is_some() {
                spec.size = *size;
            }
            spec.optimal_only |= optimal_only;
            spec.all |= all;
            if let Some(z) = z {
                spec.z = Some(names(z));
            }
            if let Some(w) = wall {
                spec.wall = Some(Duration::try_from_secs_f64(*w).map_err(|e| format!("--wall: {e}"))?);
            }
        }
        Sub::Bbs {
            reembed,
            optimal_only,
            all,
            ..
        } => {
            spec.reembed |= reembed;
            spec.optimal_only |= optimal_only;
            spec.all |= all;
        }
        _ => {}
    }
    validate(&spec).map_err(|e| e.to_string())?;
    Ok(spec)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: configuring threads: {e}");
            return ExitCode::from(1);
        }
    }
    let spec = match build_spec(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run_job(&spec) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => print!("{}", report.json_string()),
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
