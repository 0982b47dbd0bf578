use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spintensor::cli::{run_job_str, Overrides, EXIT_INTERNAL, EXIT_INVALID};
use spintensor::{DensityVariant, HalfInt};

/// Decompose π₁ ⊗ π₂ for Spin(m+1,1) from a JSON job document.
#[derive(Debug, Parser)]
#[command(name = "spintensor", version)]
struct Args {
    /// Job document path, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Result document path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    output: String,
    /// Truncation of the leading entry in spectrum reports, e.g. `5` or `7/2`.
    #[arg(long)]
    cutoff: Option<HalfInt>,
    /// Comma-separated sample points for density tables.
    #[arg(long, value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    #[arg(long, value_parser = ["proposition", "theorem"])]
    density_variant: Option<String>,
    /// Worker threads for the decomposition (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Largest Weyl group rank that may be enumerated.
    #[arg(long)]
    max_rank: Option<usize>,
}

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(PathBuf::from(path))
    }
}

fn write_output(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()
    } else {
        fs::write(path, text)
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let args = Args::parse();

    let input = match read_input(&args.input) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("spintensor: cannot read {}: {e}", args.input);
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let overrides = Overrides {
        cutoff: args.cutoff,
        t_grid: args.t_grid,
        density_variant: args.density_variant.map(|v| v.parse::<DensityVariant>().expect("validated by clap")),
        max_rank: args.max_rank,
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let outcome = match pool.build() {
        Ok(pool) => pool.install(|| run_job_str(&input, &overrides)),
        Err(e) => {
            eprintln!("spintensor: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_INTERNAL as u8);
        }
    };

    if let Err(e) = write_output(&args.output, &outcome.output) {
        eprintln!("spintensor: cannot write {}: {e}", args.output);
        return ExitCode::from(EXIT_INTERNAL as u8);
    }
    if outcome.exit_code != 0 {
        log::info!("job failed with exit code {}", outcome.exit_code);
    }
    ExitCode::from(outcome.exit_code as u8)
}
