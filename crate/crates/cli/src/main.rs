use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use starlambda_core::exact::{parse_rational, to_f64, Rational};
use starlambda_core::export::{self, Format, Table};
use starlambda_core::phase::{DeformParam, ModelParams};
use starlambda_core::verify::{run_suite, Suite};
use starlambda_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "starlambda",
    version,
    about = "Exact checks for the lambda-family of oscillator star products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of identity checks; exits nonzero if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Include per-check timings (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed form of the projector pi_n, optionally evaluated at mu.
    Pi {
        #[arg(long, value_parser = parse_lambda)]
        lambda: DeformParam,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_exact)]
        mu: Option<Rational>,
        #[command(flatten)]
        output: Output,
    },
    /// Energy levels (n + lambda) hbar omega.
    Spectrum {
        #[arg(long, value_parser = parse_lambda)]
        lambda: DeformParam,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, value_parser = parse_exact, default_value = "1")]
        hbar: Rational,
        #[arg(long, value_parser = parse_exact, default_value = "1")]
        omega: Rational,
        #[command(flatten)]
        output: Output,
    },
    /// Level weights of the basic distribution p_k.
    Weights {
        #[arg(long, value_parser = parse_lambda)]
        lambda: DeformParam,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Classical and quantum moments of p_k.
    Moments {
        #[arg(long, value_parser = parse_lambda)]
        lambda: DeformParam,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Gram matrix of pi_n^(lambda) against pi_m^(1 - lambda).
    Duality {
        #[arg(long, value_parser = parse_lambda)]
        lambda: DeformParam,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// First k at which the uncertainty inequality fails, per lambda.
    Scan {
        #[arg(long, default_value_t = 100)]
        k_max: u32,
        #[arg(long, default_value_t = 64)]
        denominator_max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Closed star exponential against its truncated series.
    Starexp {
        #[arg(long, value_parser = parse_lambda)]
        lambda: DeformParam,
        #[arg(long, value_parser = parse_exact)]
        mu: Rational,
        /// omega t
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 200)]
        terms: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Write one of the tables to a file or stdout.
    Export {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_parser = parse_lambda, default_value = "1/2")]
        lambda: DeformParam,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 10)]
        k_max: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, default_value_t = 64)]
        denominator_max: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, value_parser = parse_format, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits for floating-point columns.
    #[arg(long, default_value_t = 12)]
    float_prec: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Exact,
    Numeric,
    Errata,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Exact => Suite::Exact,
            SuiteArg::Numeric => Suite::Numeric,
            SuiteArg::Errata => Suite::Errata,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Fund,
    Weights,
    Duality,
    Scan,
    Spectrum,
    Laguerre,
    Moments,
    Gm,
}

fn parse_lambda(s: &str) -> Result<DeformParam> {
    DeformParam::new(parse_rational(s)?)
}

fn parse_exact(s: &str) -> Result<Rational> {
    parse_rational(s)
}

fn parse_format(s: &str) -> Result<Format> {
    s.parse()
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_table(table: &Table, output: &Output) -> Result<()> {
    emit(
        &table.render(output.format, output.float_prec),
        output.out.as_ref(),
    )
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            suite,
            seed,
            format,
            timings,
            out,
        } => {
            let mut report = run_suite(suite.into(), seed);
            if !timings {
                report = report.without_timings();
            }
            let text = match format {
                ReportFormat::Text => format!("{report}\n"),
                ReportFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            emit(&text, out.as_ref())?;
            return Ok(report.passed());
        }
        Command::Pi {
            lambda,
            n,
            mu,
            output,
        } => emit_table(&export::projector_table(&lambda, n, mu.as_ref()), &output)?,
        Command::Spectrum {
            lambda,
            n_max,
            hbar,
            omega,
            output,
        } => {
            let model = ModelParams::new(hbar, omega)?;
            emit_table(&export::spectrum_table(&lambda, n_max, &model), &output)?
        }
        Command::Weights { lambda, k, output } => {
            emit_table(&export::weights_table(&lambda, k), &output)?
        }
        Command::Moments { lambda, k, output } => {
            emit_table(&export::moments_table(&lambda, k)?, &output)?
        }
        Command::Duality {
            lambda,
            n_max,
            output,
        } => emit_table(&export::duality_table(&lambda, n_max)?, &output)?,
        Command::Scan {
            k_max,
            denominator_max,
            output,
        } => emit_table(&export::scan_table(k_max, denominator_max)?, &output)?,
        Command::Starexp {
            lambda,
            mu,
            t,
            terms,
            output,
        } => emit_table(
            &export::star_exp_table(&lambda, to_f64(&mu), t, terms)?,
            &output,
        )?,
        Command::Export {
            what,
            lambda,
            k,
            k_max,
            n_max,
            denominator_max,
            output,
        } => {
            let table = match what {
                What::Fund => export::fund_table(k_max, n_max),
                What::Weights => export::weights_table(&lambda, k),
                What::Duality => export::duality_table(&lambda, n_max)?,
                What::Scan => export::scan_table(k_max, denominator_max)?,
                What::Spectrum => export::spectrum_table(&lambda, n_max, &ModelParams::default()),
                What::Laguerre => export::laguerre_table(n_max),
                What::Moments => export::moments_table(&lambda, k)?,
                What::Gm => export::gm_table(k_max),
            };
            emit_table(&table, &output)?
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
