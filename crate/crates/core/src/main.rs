use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use frw_entanglement::modesolver::{boson_coefficients_ode, fermion_coefficients_ode};
use frw_entanglement::pipeline::{
    evaluate_point, figure_data, run_sweep, run_verify, write_csv, Figure, SweepGrid, SweepRow,
    VerifyLevel,
};
use frw_entanglement::{
    canonical_boson_coefficients, paper_alpha_beta, ComplexVal, Error, ExpansionParams,
    IntegrationSettings, Method, ModeParams, Result, Spin, Statistics,
};

#[derive(Parser)]
#[command(name = "frw-entangle", version, about = "Mode entanglement in a tanh FRW expansion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of one mode, printed as a CSV row.
    Entropy {
        #[arg(long)]
        spin: Spin,
        #[command(flatten)]
        point: Point,
        /// Defaults to analytic for bosons, ode for fermions.
        #[arg(long)]
        method: Option<MethodArg>,
    },
    /// Bogoliubov coefficients of one mode as JSON.
    Bogoliubov {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        method: CoefficientMethod,
        #[arg(long)]
        statistics: Statistics,
    },
    /// Entropy over a grid read from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_path` from the config. Stdout when neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Data for one of the three figures.
    Figure {
        which: FigureArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Points along each varied axis.
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Run the self-check suite. Exits with 2 if any check fails.
    Verify {
        #[arg(long, default_value = "fast")]
        level: LevelArg,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Point {
    #[arg(long, allow_negative_numbers = true)]
    m: f64,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long, allow_negative_numbers = true)]
    rho: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Analytic,
    Ode,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoefficientMethod {
    Paper,
    Canonical,
    Ode,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<ComplexVal> for ComplexJson {
    fn from(z: ComplexVal) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct CoefficientReport {
    alpha: ComplexJson,
    beta: ComplexJson,
    abs_alpha_sq: f64,
    abs_beta_sq: f64,
    x: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Entropy { spin, point, method } => {
            let method = method.map(|m| match m {
                MethodArg::Analytic => Method::Analytic,
                MethodArg::Ode => Method::Ode,
            });
            let row = evaluate_point(point.epsilon, point.rho, point.m, point.k, spin, method);
            let failed = row.error.is_some();
            emit_csv(&[row], None)?;
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Bogoliubov { point, method, statistics } => {
            let report = coefficients(&point, method, statistics)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { config, out } => {
            let grid = SweepGrid::from_json(&std::fs::read_to_string(&config)?)?;
            let out = out.or_else(|| grid.output_path.as_ref().map(PathBuf::from));
            emit_csv(&run_sweep(&grid)?, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure { which, out, resolution } => {
            let which = match which {
                FigureArg::Fig1 => Figure::Fig1,
                FigureArg::Fig2 => Figure::Fig2,
                FigureArg::Fig3 => Figure::Fig3,
            };
            emit_csv(&figure_data(which, resolution)?, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { level, json } => {
            let level = match level {
                LevelArg::Fast => VerifyLevel::Fast,
                LevelArg::Full => VerifyLevel::Full,
            };
            let report = run_verify(level);
            for c in &report.checks {
                eprintln!("{} {} actual={} tol={:e}", if c.pass { "PASS" } else { "FAIL" }, c.check, c.actual, c.tol);
            }
            match json {
                Some(path) => std::fs::write(path, report.to_json() + "\n")?,
                None => println!("{}", report.to_json()),
            }
            Ok(if report.overall { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn coefficients(point: &Point, method: CoefficientMethod, statistics: Statistics) -> Result<CoefficientReport> {
    let p = ExpansionParams::new(point.epsilon, point.rho)?;
    let spin = match statistics {
        Statistics::Boson => Spin::Zero,
        Statistics::Fermion => Spin::Half,
    };
    let mode = ModeParams::new(point.m, point.k, spin)?;
    let (alpha, beta) = match (method, statistics) {
        (CoefficientMethod::Paper, Statistics::Boson) => paper_alpha_beta(&p, &mode)?,
        (CoefficientMethod::Canonical, Statistics::Boson) => {
            let c = canonical_boson_coefficients(&p, &mode)?;
            (c.alpha(), c.beta())
        }
        (CoefficientMethod::Ode, _) => {
            let s = IntegrationSettings::for_expansion(&p)?;
            let c = match statistics {
                Statistics::Boson => boson_coefficients_ode(&p, &mode, &s)?,
                Statistics::Fermion => fermion_coefficients_ode(&p, &mode, &s)?,
            };
            (c.alpha(), c.beta())
        }
        (_, Statistics::Fermion) => {
            return Err(Error::Precondition("fermionic coefficients are only available with --method ode".into()))
        }
    };
    Ok(CoefficientReport {
        alpha: alpha.into(),
        beta: beta.into(),
        abs_alpha_sq: alpha.norm_sqr(),
        abs_beta_sq: beta.norm_sqr(),
        x: beta.norm_sqr() / alpha.norm_sqr(),
    })
}

fn emit_csv(rows: &[SweepRow], out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => write_csv(rows, BufWriter::new(File::create(path)?)),
        None => write_csv(rows, io::stdout().lock()).or_else(ignore_broken_pipe),
    }
}

fn ignore_broken_pipe(e: Error) -> Result<()> {
    match &e {
        Error::Io(msg) if msg.contains("Broken pipe") => Ok(()),
        _ => Err(e),
    }
}
