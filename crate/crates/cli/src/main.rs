//! `foldmaps`: verification, degree estimation and theory tables for
//! geodesic-folding maps.

mod commands;
mod config;
mod maps;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use foldmaps_core::numtopo::DEFAULT_STEP;
use foldmaps_core::verify::Suite;
use foldmaps_core::Parity;

use commands::{Failure, Output, Settings, TableFormat, TableSource, DEFAULT_J};
use config::FileConfig;
use maps::{parse_weyl_range, Manifold, MapSpec};

const DEFAULT_SEED: u64 = 42;
const DEFAULT_SAMPLES: usize = 100_000;
const DEFAULT_TABLE_SAMPLES: usize = 20_000;

#[derive(Parser, Debug)]
#[command(
    name = "foldmaps",
    version,
    about = "Geodesic-folding selfmaps: verify, estimate degrees, tabulate"
)]
struct Cli {
    /// Worker threads for sampling (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Omit the timestamp so identical inputs give byte-identical output.
    #[arg(long, global = true)]
    reproducible: bool,

    /// TOML file with defaults for seed, samples, step, workers, reproducible.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Sampling {
    /// Monte-Carlo sample count (at least 1000).
    #[arg(long)]
    samples: Option<usize>,

    #[arg(long)]
    seed: Option<u64>,

    /// Central-difference step.
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an invariant suite: halfangle, su3, sphere, cpm, theory or all.
    Verify {
        suite: Suite,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Monte-Carlo degree of a map.
    Degree {
        /// su3, s<n> or cp<m>.
        #[arg(long)]
        manifold: Manifold,
        /// psi:k, rho:k (SU(3)), power:k (spheres), fold:k (CP^m).
        #[arg(long, allow_hyphen_values = true)]
        map: MapSpec,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Apply a map to a point read from a JSON file.
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        map: MapSpec,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Degree and Lefschetz table from the exact engines.
    Table {
        /// Catalog entries (comma-separated); the whole catalog when no grid is given.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["weyl", "parities"])]
        catalog: Vec<String>,
        /// Weyl group orders of a synthetic grid: N or A..B (even values only).
        #[arg(long)]
        weyl: Option<String>,
        /// Codimension parities of N₀ and N₁, e.g. odd,even.
        #[arg(long, value_delimiter = ',', requires = "weyl")]
        parities: Vec<Parity>,
        /// Fold parameters j (comma-separated, nonzero).
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "j_even"
        )]
        j: Vec<i64>,
        /// Shorthand for j = ±2, ±4, ±6.
        #[arg(long)]
        j_even: bool,
        /// Add a Monte-Carlo degree column for entries with a numerical model.
        #[arg(long)]
        numeric: bool,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Realize a degree on SU(3) as a composite of power and fold maps.
    Realize {
        #[arg(allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn settings(
    file: &FileConfig,
    reproducible: bool,
    sampling: &Sampling,
    default_samples: usize,
) -> Settings {
    Settings {
        seed: sampling.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        samples: sampling.samples.or(file.samples).unwrap_or(default_samples),
        step: sampling.step.or(file.step).unwrap_or(DEFAULT_STEP),
        reproducible: reproducible || file.reproducible.unwrap_or(false),
    }
}

fn emit(out: &Output, path: Option<&PathBuf>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, &out.text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    if let Some(n) = cli.workers.or(file.workers) {
        if n == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {n} workers: {e}")))?;
    }
    let (output, path) = match &cli.command {
        Command::Verify {
            suite,
            seed,
            output,
        } => {
            let sampling = Sampling {
                seed: *seed,
                ..Sampling::default()
            };
            let s = settings(&file, cli.reproducible, &sampling, DEFAULT_SAMPLES);
            (commands::verify(*suite, &s), output.as_ref())
        }
        Command::Degree {
            manifold,
            map,
            sampling,
            output,
        } => {
            let s = settings(&file, cli.reproducible, sampling, DEFAULT_SAMPLES);
            (commands::degree(*manifold, *map, &s)?, output.as_ref())
        }
        Command::Apply { map, input, output } => return commands::apply(*map, input, output),
        Command::Table {
            catalog,
            weyl,
            parities,
            j,
            j_even,
            numeric,
            sampling,
            format,
            output,
        } => {
            let s = settings(&file, cli.reproducible, sampling, DEFAULT_TABLE_SAMPLES);
            let source = match weyl {
                Some(w) => TableSource::Grid {
                    weyl: parse_weyl_range(w).map_err(Failure::Usage)?,
                    parities: match parities.as_slice() {
                        [] => None,
                        [p0, p1] => Some((*p0, *p1)),
                        _ => {
                            return Err(Failure::Usage(
                                "--parities takes exactly two values".into(),
                            ))
                        }
                    },
                },
                None => TableSource::Catalog(commands::catalog_entries(catalog)?),
            };
            let js: Vec<i64> = if *j_even {
                vec![-6, -4, -2, 2, 4, 6]
            } else if j.is_empty() {
                DEFAULT_J.to_vec()
            } else {
                j.clone()
            };
            (
                commands::table(&source, &js, *numeric, *format, &s)?,
                output.as_ref(),
            )
        }
        Command::Realize { degree, output } => {
            let s = settings(
                &file,
                cli.reproducible,
                &Sampling::default(),
                DEFAULT_SAMPLES,
            );
            (commands::realize(*degree, &s), output.as_ref())
        }
    };
    emit(&output, path)?;
    output.failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("foldmaps: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
