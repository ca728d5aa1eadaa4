//! `timevalue`: command-line access to discounting, knowledge weights,
//! divergence probes, rate solving and figure curves.
//!
//! Exit codes: 0 on success, 2 for usage or domain errors, 3 for numerical
//! failures (no sign change, non-convergence, quadrature failure).

mod format;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use timevalue::curves::{sample, Figure, Grid, ProfileSpec};
use timevalue::stream_io::load_stream;
use timevalue::{
    fv_of_pv, indifference_select, irr, limit_probe, pv_of_fv, pv_of_stream, weight, Bracket,
    Error, Periods, Rate, ValuationResult,
};

use crate::format::significant10;

#[derive(Parser, Debug)]
#[command(name = "timevalue", version, about, allow_negative_numbers = true)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output encoding for curve tables.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Present value of a single future amount.
    #[command(allow_negative_numbers = true)]
    Pv(TransformArgs),
    /// Future value of a single present amount.
    #[command(allow_negative_numbers = true)]
    Fv(TransformArgs),
    /// Present value of a cash-flow stream file.
    #[command(allow_negative_numbers = true)]
    Npv {
        #[arg(long)]
        stream: PathBuf,
        #[arg(long)]
        rate: f64,
    },
    /// Internal rate of return of a cash-flow stream file.
    #[command(allow_negative_numbers = true)]
    Irr {
        #[arg(long)]
        stream: PathBuf,
        #[arg(long, default_value_t = -0.99)]
        lo: f64,
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        /// Residual tolerance relative to the sum of absolute amounts.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Knowledge weight (1 + k)^n.
    #[command(allow_negative_numbers = true)]
    Weight {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        periods: f64,
    },
    /// Follow base * (1 + k)^n until it passes a threshold.
    #[command(allow_negative_numbers = true)]
    Probe {
        #[arg(long, default_value_t = 1.0)]
        base: f64,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 1e6)]
        threshold: f64,
        #[arg(long, default_value_t = 10_000)]
        nmax: u64,
    },
    /// Pick one option at random among the best-valued ones.
    #[command(allow_negative_numbers = true)]
    Select {
        /// Comma-separated options: a number is a finite value,
        /// `probe:BASE:K:THRESHOLD:NMAX` is the outcome of a divergence probe.
        #[arg(long)]
        values: String,
        #[arg(long, default_value_t = timevalue::DEFAULT_INDIFFERENCE_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample a figure or a profile spec on a grid.
    #[command(allow_negative_numbers = true)]
    Curve(CurveArgs),
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long)]
    amount: f64,
    #[arg(long)]
    rate: f64,
    #[arg(long)]
    periods: f64,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct CurveSource {
    /// Figure number, 1 to 7.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
    figure: Option<u8>,
    /// Profile descriptor as inline JSON or a path to a JSON file.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    source: CurveSource,
    /// Sample grid as start:end:steps.
    #[arg(long)]
    range: Option<String>,
    /// Override a figure parameter, e.g. `--param rate=0`. Repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("`{value}` is not a number"))?;
    Ok((name.trim().to_owned(), value))
}

fn parse_option(item: &str) -> Result<ValuationResult, Error> {
    let item = item.trim();
    if let Some(rest) = item.strip_prefix("probe:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::OutOfDomain(format!(
                "expected probe:BASE:K:THRESHOLD:NMAX, got `{item}`"
            )));
        }
        let num = |p: &str| {
            p.parse::<f64>()
                .map_err(|_| Error::OutOfDomain(format!("`{p}` is not a number in `{item}`")))
        };
        let nmax = parts[3]
            .parse::<u64>()
            .map_err(|_| Error::OutOfDomain(format!("`{}` is not a period count", parts[3])))?;
        return limit_probe(num(parts[0])?, Rate::knowledge(num(parts[1])?)?, num(parts[2])?, nmax);
    }
    let v = item
        .parse::<f64>()
        .map_err(|_| Error::OutOfDomain(format!("`{item}` is neither a number nor a probe")))?;
    if !v.is_finite() {
        return Err(Error::OutOfDomain(format!("finite option values only, got `{item}`")));
    }
    Ok(ValuationResult::Finite(v))
}

fn curve(args: &CurveArgs, format: OutputFormat) -> Result<String, Error> {
    let grid = args.range.as_deref().map(Grid::parse).transpose()?;
    let (table, title) = match (&args.source.figure, &args.source.spec) {
        (Some(id), _) => {
            let fig = Figure::from_id(*id)?;
            (fig.table(grid, &args.params)?, fig.title().to_owned())
        }
        (None, Some(spec)) => {
            if !args.params.is_empty() {
                return Err(Error::OutOfDomain("--param applies to --figure only".into()));
            }
            let trimmed = spec.trim_start();
            let json = if trimmed.starts_with('{') || trimmed.starts_with('[') {
                spec.clone()
            } else {
                std::fs::read_to_string(spec)
                    .map_err(|e| Error::OutOfDomain(format!("cannot read spec {spec}: {e}")))?
            };
            let series = ProfileSpec::parse(&json)?.into_series();
            let grid = grid.ok_or_else(|| Error::OutOfDomain("--spec needs --range".into()))?;
            (sample(&series, &grid)?, "Weight profile".to_owned())
        }
        (None, None) => unreachable!("clap requires one curve source"),
    };
    Ok(match format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Svg => table.to_svg(&title),
    })
}

fn run(cli: &Cli) -> Result<String, Error> {
    let line = |s: String| s + "\n";
    match &cli.command {
        Command::Pv(a) => Ok(line(significant10(pv_of_fv(
            a.amount,
            Rate::interest(a.rate)?,
            Periods::new(a.periods)?,
        )))),
        Command::Fv(a) => Ok(line(significant10(fv_of_pv(
            a.amount,
            Rate::interest(a.rate)?,
            Periods::new(a.periods)?,
        )))),
        Command::Npv { stream, rate } => {
            let rate = Rate::interest(*rate)?;
            let stream = load_stream(stream)?;
            Ok(line(significant10(pv_of_stream(&stream, rate))))
        }
        Command::Irr { stream, lo, hi, tol } => {
            let bracket = Bracket::new(*lo, *hi)?;
            let stream = load_stream(stream)?;
            let r = irr(&stream, bracket, *tol)?;
            Ok(line(significant10(r.value())))
        }
        Command::Weight { k, periods } => {
            let w = weight(Rate::knowledge(*k)?, Periods::new(*periods)?);
            Ok(line(significant10(w.value())))
        }
        Command::Probe { base, k, threshold, nmax } => {
            let verdict = match limit_probe(*base, Rate::knowledge(*k)?, *threshold, *nmax) {
                Ok(ValuationResult::Divergent(c)) => format!("DIVERGENT N={}", c.crossing_period()),
                Ok(ValuationResult::Finite(v)) => format!("FINITE {v}"),
                Err(Error::Inconclusive { value_at_n_max }) => {
                    format!("INCONCLUSIVE value_at_nmax={value_at_n_max}")
                }
                Err(e) => return Err(e),
            };
            Ok(line(verdict))
        }
        Command::Select { values, tol, seed } => {
            let options = values
                .split(',')
                .map(parse_option)
                .collect::<Result<Vec<_>, _>>()?;
            let index = indifference_select(&options, *tol, *seed)?;
            Ok(line(index.to_string()))
        }
        Command::Curve(args) => curve(args, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_numerical() { 3 } else { 2 });
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, output.as_bytes()),
        None => std::io::stdout().lock().write_all(output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
