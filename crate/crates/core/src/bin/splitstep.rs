//! Command-line front end. Exit status: 0 when every method agrees, 1 on
//! usage or schema errors, 2 when methods disagree.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use splitstep::error::Error;
use splitstep::operators::{
    assemble_coin, assemble_evolution_and_supercharge, assemble_gamma, assemble_q_plus, BandedMatrix, Window,
};
use splitstep::report::{fmt_f64, write_csv};
use splitstep::sweep::{run_sweep, summarize, GridRange, SweepGrid};
use splitstep::verify::{verify, SuiteCounts, VerifyConfig};
use splitstep::{analyze_spec, spectral, AnalyzeOptions, Scenario, WalkSpec};

#[derive(Parser)]
#[command(name = "splitstep", version, about = "Witten index of split-step quantum walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Index of one scenario by every selected method.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "formula,winding,transfer,spectral")]
        methods: String,
        /// CSV destination, stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase diagram over p and a(+inf) for step coins.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        p: GridRange,
        #[arg(long, allow_hyphen_values = true)]
        a_plus: GridRange,
        #[arg(long, allow_hyphen_values = true)]
        a_minus: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b_phase: f64,
        #[arg(long, default_value = "formula,winding")]
        methods: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded self-check suites.
    Verify {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        quick: bool,
        /// Override every suite's case count.
        #[arg(long)]
        counts: Option<usize>,
    },
    /// Eigenvalues of U and Q on the window [-N, N].
    Spectrum {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        window: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nonzero entries of an assembled operator on [-N, N] as CSV.
    DumpOperator {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        which: Which,
        #[arg(long)]
        window: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Gamma,
    Coin,
    U,
    Q,
    Qplus,
}

enum Failure {
    Usage(String),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MethodDisagreement(m) => Failure::Disagreement(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn load(path: &Path) -> Result<WalkSpec, Failure> {
    Ok(Scenario::load(path)?.to_spec()?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { config, methods, out } => {
            let spec = load(&config)?;
            let options = AnalyzeOptions::default().with_methods(&methods)?;
            let report = analyze_spec(&spec, &options)?;
            write_csv(output(&out)?, [&report])?;
            report.check()?;
        }
        Command::Sweep { p, a_plus, a_minus, b_phase, methods, out } => {
            let grid = SweepGrid { p, a_plus, a_minus, b_phase };
            let options = AnalyzeOptions::default().with_methods(&methods)?;
            let reports = run_sweep(&grid, &options)?;
            write_csv(output(&out)?, &reports)?;
            let summary = summarize(&reports);
            eprintln!("{summary}");
            if summary.disagreeing > 0 {
                return Err(Failure::Disagreement(format!("{} grid points disagree", summary.disagreeing)));
            }
        }
        Command::Verify { seed, quick, counts } => {
            let mut config = VerifyConfig::new(seed, quick);
            if let Some(n) = counts {
                config.counts = SuiteCounts::uniform(n);
            }
            let outcomes = verify(&config);
            let mut out = io::stdout().lock();
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            if let Some(f) = outcomes.iter().find_map(|o| o.failure.as_ref()) {
                writeln!(out, "first failure: {}", f.message)?;
                if let Some(json) = &f.scenario {
                    writeln!(out, "{json}")?;
                }
                return Err(Failure::Usage("verification failed".into()));
            }
        }
        Command::Spectrum { config, window, out } => {
            let spec = load(&config)?;
            let (u, q) = spectral::spectra(&spec, &Window::symmetric(window)?)?;
            let mut w = csv::Writer::from_writer(output(&out)?);
            w.write_record(["operator", "index", "re", "im"]).map_err(Error::from)?;
            for (i, z) in u.iter().enumerate() {
                w.write_record(["u", &i.to_string(), &fmt_f64(z.re), &fmt_f64(z.im)]).map_err(Error::from)?;
            }
            for (i, v) in q.iter().enumerate() {
                w.write_record(["q", &i.to_string(), &fmt_f64(*v), &fmt_f64(0.0)]).map_err(Error::from)?;
            }
            w.flush()?;
        }
        Command::DumpOperator { config, which, window, out } => {
            let spec = load(&config)?;
            let w = Window::symmetric(window)?;
            let mat: BandedMatrix = match which {
                Which::Gamma => assemble_gamma(&spec.shift, &w),
                Which::Coin => assemble_coin(&spec.coin, &w),
                Which::U => assemble_evolution_and_supercharge(&spec, &w).0,
                Which::Q => assemble_evolution_and_supercharge(&spec, &w).1,
                Which::Qplus => assemble_q_plus(&spec, &w),
            };
            mat.write_csv(output(&out)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("methods disagree: {msg}");
            ExitCode::from(2)
        }
    }
}
