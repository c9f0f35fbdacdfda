use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qbessel::quadrature::integrate;
use qbessel_cli::config::{Settings, TOL_ENV};
use qbessel_cli::suite::{closed_value, sink, write_report};
use qbessel_cli::{
    emit_table, parse_spec, run_suite, CliResult, Format, SuiteName, SuiteOptions, TableFamily,
};

/// Closed-form Mellin transforms of Bessel and Airy products, checked
/// against a double-exponential quadrature oracle.
///
/// Specs read `x^<s> * <factor> (* <factor>)*` with factors I(order,scale),
/// K(order,scale), Ai(scale), Bi(scale), each optionally raised to ^k.
/// The integrand carries x^{s−1}: `x^2 * K(0,1)^4` is ∫₀^∞ x K₀(x)⁴ dx.
/// Orders written as integers or p/q are kept exact.
#[derive(Parser)]
#[command(name = "qb", version)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    /// key=value file (rel_tol, abs_tol, seed, timestamp), applied under flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TolArgs {
    /// Oracle relative tolerance (and the pass threshold of `verify`)
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Oracle absolute tolerance
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form value
    Eval {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Quadrature value
    Oracle {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Both, with their relative gap; fails above --rel-tol
    Verify {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Run a verification suite
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Reproduce a table of elementary values
    Table {
        #[arg(value_enum)]
        family: TableFamily,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn settings(cli: &Cli) -> CliResult<Settings> {
    let mut s = Settings::from_env(std::env::var(TOL_ENV).ok().as_deref())?;
    if let Some(p) = &cli.config {
        s.merge_file(p)?;
    }
    if let Some(t) = cli.tol.rel_tol {
        s.rel_tol = t;
    }
    if let Some(t) = cli.tol.abs_tol {
        s.abs_tol = t;
    }
    Ok(s)
}

fn run(cli: Cli) -> CliResult<bool> {
    let mut set = settings(&cli)?;
    let quad = set.quadrature();
    match cli.cmd {
        Cmd::Eval { spec, format } => {
            let r = closed_value(&parse_spec(&spec)?)?;
            match format {
                Output::Json => println!("{}", serde_json::to_string_pretty(&r)?),
                Output::Text => {
                    println!(
                        "{} = {:.17e} (est. error {:.1e})",
                        r.formula_id, r.value, r.est_error
                    );
                    for (k, v) in &r.diagnostics {
                        println!("  {k} = {v}");
                    }
                }
            }
            Ok(true)
        }
        Cmd::Oracle { spec, format } => {
            let r = integrate(&parse_spec(&spec)?, &quad)?;
            match format {
                Output::Json => println!("{}", serde_json::to_string_pretty(&r)?),
                Output::Text => println!(
                    "{:.17e} (error estimate {:.1e}, tail bound {:.1e}, {} evaluations)",
                    r.value, r.err_estimate, r.tail_bound, r.evaluations
                ),
            }
            Ok(true)
        }
        Cmd::Verify { spec, format } => {
            let spec = parse_spec(&spec)?;
            let c = closed_value(&spec)?;
            // the oracle runs tighter than the threshold it is judged by
            let q = integrate(
                &spec,
                &qbessel::quadrature::QuadratureOptions {
                    rel_tol: quad.rel_tol.min(1e-12),
                    ..quad
                },
            )?;
            let gap = (c.value - q.value).abs() / q.value.abs().max(1e-300);
            let pass = gap <= set.rel_tol;
            match format {
                Output::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "formula_id": c.formula_id,
                        "closed_value": c.value,
                        "oracle_value": q.value,
                        "rel_gap": gap,
                        "tolerance": set.rel_tol,
                        "status": if pass { "pass" } else { "fail" },
                    }))?
                ),
                Output::Text => println!(
                    "{}: closed {:.17e}, oracle {:.17e}, gap {gap:.2e} -> {}",
                    c.formula_id,
                    c.value,
                    q.value,
                    if pass { "pass" } else { "fail" }
                ),
            }
            Ok(pass)
        }
        Cmd::Suite {
            name,
            seed,
            format,
            out,
            no_timestamp,
        } => {
            if let Some(s) = seed {
                set.seed = s;
            }
            let opts = SuiteOptions {
                quadrature: quad,
                seed: set.seed,
                timestamp: set.timestamp && !no_timestamp,
            };
            let report = run_suite(name, &opts);
            write_report(&report, format, sink(out.as_deref())?)?;
            eprintln!(
                "{}: {} pass, {} fail, {} skipped",
                report.metadata.suite,
                report.count(qbessel_cli::Status::Pass),
                report.count(qbessel_cli::Status::Fail),
                report.count(qbessel_cli::Status::Skipped)
            );
            Ok(report.all_pass())
        }
        Cmd::Table {
            family,
            format,
            out,
        } => {
            let opts = SuiteOptions {
                quadrature: quad,
                seed: set.seed,
                timestamp: false,
            };
            let report = emit_table(family, format, &opts, sink(out.as_deref())?)?;
            Ok(report.all_pass())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qb: {e}");
            ExitCode::from(2)
        }
    }
}
