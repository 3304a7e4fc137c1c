//! Command-line front-end: `wsr score` and `wsr curve`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration or input
//! validation, 3 undefined scores under --strict.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use wsr::cli::{
    parse_grid, render_score_csv, render_score_json, run_curve, run_score, Archive, CurveConfig,
    OutputFormat, RunConfig, ScoreKind, WeightFamily,
};
use wsr::diagnostics::{CurveScore, ThresholdSide};
use wsr::error::{Error, Result};
use wsr::io::{
    ingest_multivariate_path, ingest_univariate_path, read_matrix_path, read_weight_rows_path,
};

#[derive(Parser)]
#[command(
    name = "wsr",
    version,
    about = "Score ensemble forecasts with weighted scoring rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every case in a forecast archive with one scoring rule.
    Score(ScoreArgs),
    /// Average twCRPS/owCRPS as a function of an interval-weight threshold.
    Curve(CurveArgs),
}

#[derive(Args)]
struct ScoreArgs {
    /// Scoring rule to apply
    #[arg(long, value_enum)]
    kind: ScoreKind,
    /// Forecast archive: CSV (univariate) or NDJSON (multivariate)
    #[arg(long)]
    input: PathBuf,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Lower interval bound(s); scalar or comma-separated per dimension
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Upper interval bound(s); scalar or comma-separated per dimension
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Gaussian weight location(s)
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Gaussian weight scale(s)
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Weight/chaining family for weighted kinds (default: interval)
    #[arg(long, value_enum)]
    weight_family: Option<WeightFamily>,
    /// KDE bandwidth for logs/cols/cels; default: Silverman's rule
    #[arg(long, allow_hyphen_values = true)]
    bw: Option<f64>,
    /// Variogram order (default 0.5)
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// CSV file with the d-by-d variogram scaling matrix
    #[arg(long)]
    vs_weights: Option<PathBuf>,
    /// CSV file with member weights: one row, or one row per case
    #[arg(long)]
    member_weights: Option<PathBuf>,
    /// Significant digits in the output (1-17)
    #[arg(long, default_value_t = 17)]
    digits: usize,
    /// Exit with code 3 when any score is undefined
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct CurveArgs {
    /// Curve score: twcrps or owcrps
    #[arg(long, value_enum)]
    kind: ScoreKind,
    /// Univariate forecast archive (CSV)
    #[arg(long)]
    input: PathBuf,
    /// Threshold grid as start:stop:step
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Which side of the threshold to emphasise
    #[arg(long, value_enum, default_value = "above")]
    side: SideArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV file with member weights: one row, or one row per case
    #[arg(long)]
    member_weights: Option<PathBuf>,
    /// Significant digits in the output (1-17)
    #[arg(long, default_value_t = 17)]
    digits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum SideArg {
    Above,
    Below,
}

fn parse_num_list(arg: &Option<String>, name: &str) -> Result<Option<Vec<f64>>> {
    let Some(raw) = arg else { return Ok(None) };
    let values = raw
        .split(',')
        .map(|token| {
            token.trim().parse::<f64>().map_err(|_| {
                Error::Config(format!("cannot parse {name} component '{}'", token.trim()))
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.is_empty() {
        return Err(Error::Config(format!("{name} must not be empty")));
    }
    Ok(Some(values))
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run_score_command(args: &ScoreArgs) -> Result<i32> {
    let mut config = RunConfig::new(args.kind);
    config.family = args.weight_family;
    config.a = parse_num_list(&args.a, "--a")?;
    config.b = parse_num_list(&args.b, "--b")?;
    config.mu = parse_num_list(&args.mu, "--mu")?;
    config.sigma = parse_num_list(&args.sigma, "--sigma")?;
    config.bandwidth = args.bw;
    config.vs_order = args.p;
    config.format = args.format;
    config.digits = args.digits;
    config.strict = args.strict;
    if let Some(path) = &args.vs_weights {
        config.vs_scaling = Some(read_matrix_path(path)?);
    }
    if let Some(path) = &args.member_weights {
        config.member_weights = Some(read_weight_rows_path(path)?);
    }

    let archive = if args.kind.is_univariate() {
        Archive::Univariate(ingest_univariate_path(&args.input)?)
    } else {
        Archive::Multivariate(ingest_multivariate_path(&args.input)?)
    };

    let table = run_score(&config, &archive)?;
    let rendered = match config.format {
        OutputFormat::Csv => render_score_csv(&table, config.digits),
        OutputFormat::Json => render_score_json(&table, config.digits),
    };
    write_output(&args.out, &rendered)?;

    if config.strict && table.n_undefined > 0 {
        eprintln!(
            "error: {} of {} scores are undefined (strict mode)",
            table.n_undefined,
            table.n()
        );
        return Ok(3);
    }
    Ok(0)
}

fn run_curve_command(args: &CurveArgs) -> Result<i32> {
    let score = match args.kind {
        ScoreKind::Twcrps => CurveScore::TwCrps,
        ScoreKind::Owcrps => CurveScore::OwCrps,
        other => {
            return Err(Error::Config(format!(
                "curve supports twcrps and owcrps, not '{}'",
                other.as_str()
            )))
        }
    };
    let config = CurveConfig {
        score,
        side: match args.side {
            SideArg::Above => ThresholdSide::Above,
            SideArg::Below => ThresholdSide::Below,
        },
        thresholds: parse_grid(&args.grid)?,
        digits: args.digits,
        member_weights: match &args.member_weights {
            Some(path) => Some(read_weight_rows_path(path)?),
            None => None,
        },
    };
    let cases = ingest_univariate_path(&args.input)?;
    let curve = run_curve(&config, &cases)?;
    write_output(&args.out, &curve.to_csv(config.digits))?;
    Ok(0)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Score(args) => run_score_command(args),
        Command::Curve(args) => run_curve_command(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    };
    std::process::exit(code);
}
