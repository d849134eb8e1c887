use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use zetaforge_cli::commands::{
    run_count, run_lseries, run_verify, run_zeta, write_report, CountOptions, LseriesOptions,
    Outcome, VerifyOptions, ZetaOptions,
};
use zetaforge_cli::error::CliError;
use zetaforge_cli::input::Document;
use zetaforge_core::counting::DEFAULT_BUDGET;

/// Zeta functions of varieties over finite fields, Weil checks and
/// elliptic-curve L-series.
#[derive(Parser)]
#[command(name = "zetaforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args)]
struct CountArgs {
    /// Count over F_q, ..., F_{q^k}.
    #[arg(long)]
    ext_max: Option<usize>,

    /// Cap on enumerated candidate tuples.
    #[arg(long, env = "ZETAFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads used by enumeration.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl CountArgs {
    fn options(&self) -> CountOptions {
        CountOptions {
            ext_max: self.ext_max,
            budget: self.budget,
            threads: self.threads,
        }
    }
}

#[derive(Args)]
struct ZetaArgs {
    /// Numerator degree cap for the rational fit.
    #[arg(long, requires = "den_deg", conflicts_with = "genus")]
    num_deg: Option<usize>,

    /// Denominator degree cap for the rational fit.
    #[arg(long, requires = "num_deg")]
    den_deg: Option<usize>,

    /// Genus of a curve; only N_1..N_g are needed.
    #[arg(long)]
    genus: Option<usize>,
}

impl ZetaArgs {
    fn options(&self) -> ZetaOptions {
        ZetaOptions {
            caps: self.num_deg.zip(self.den_deg),
            genus: self.genus,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Point counts N_1..N_k and closed-point degrees.
    Count {
        input: PathBuf,
        #[command(flatten)]
        count: CountArgs,
    },
    /// Reconstruct the zeta function from point counts.
    Zeta {
        input: PathBuf,
        #[command(flatten)]
        count: CountArgs,
        #[command(flatten)]
        zeta: ZetaArgs,
    },
    /// Check W1-W5 for a spec, a count series or a zeta file.
    Verify {
        input: PathBuf,
        /// Dimension of the variety.
        #[arg(long)]
        dim: Option<usize>,
        /// Expected Betti numbers, comma separated.
        #[arg(long, value_delimiter = ',')]
        expected_betti: Option<Vec<usize>>,
        #[command(flatten)]
        count: CountArgs,
        #[command(flatten)]
        zeta: ZetaArgs,
    },
    /// L-series data of y^2 = x^3 + a x + b over Q.
    Lseries {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        /// Exact partial Euler product at this integer s.
        #[arg(long)]
        s: Option<i64>,
        /// Write n,a_n rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write p,a_p,theta rows with theta = arccos(a_p / 2 sqrt p).
        #[arg(long)]
        roots_csv: Option<PathBuf>,
    },
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Count { input, count } => run_count(&Document::load(input)?, &count.options()),
        Command::Zeta { input, count, zeta } => {
            run_zeta(&Document::load(input)?, &zeta.options(), &count.options())
        }
        Command::Verify {
            input,
            dim,
            expected_betti,
            count,
            zeta,
        } => {
            let vopts = VerifyOptions {
                dim: *dim,
                expected_betti: expected_betti.clone(),
            };
            run_verify(&Document::load(input)?, &vopts, &zeta.options(), &count.options())
        }
        Command::Lseries {
            a,
            b,
            pmax,
            nmax,
            s,
            csv,
            roots_csv,
        } => run_lseries(&LseriesOptions {
            a: *a,
            b: *b,
            pmax: *pmax,
            nmax: *nmax,
            s: *s,
            csv: csv.as_deref(),
            roots_csv: roots_csv.as_deref(),
        }),
    }
}

fn emit(cli: &Cli, outcome: &mut Outcome, start: Instant) -> Result<(), CliError> {
    if cli.timing {
        outcome.report["timing"] = json!({ "elapsed_ms": start.elapsed().as_millis() as u64 });
    }
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_report(&outcome.report, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_report(&outcome.report, &mut w)?;
        }
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let cli = Cli::parse();
    let result = dispatch(&cli.command).and_then(|mut outcome| {
        emit(&cli, &mut outcome, start)?;
        Ok(outcome.code)
    });
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("zetaforge: {e}");
            e.code
        }
    };
    process::exit(code as i32);
}
