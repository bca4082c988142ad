//! Command-line front end: JSON reports on stdout, CSV grids to files or
//! stdout. Exit codes: 0 success, 1 numerical failure (non-convergence or a
//! failed verification), 2 parameter/usage errors.

mod commands;
mod json;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use fuss_catalan::Error as FcError;
use json::Json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fuss-catalan",
    version,
    about = "Fuss-Catalan distributions: moments, cumulants, densities, classification, mode scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Root of the closed transition equation (p = 2 only)
    ARoot,
    /// Bisection on scanned mode counts
    Scan,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Binom,
    WeightedBinom,
    LkPp,
    LkPPminus1,
    LkGeneral,
    MomentCumulant,
    All,
}

impl Suite {
    fn as_str(&self) -> &'static str {
        match self {
            Suite::Binom => "binom",
            Suite::WeightedBinom => "weighted-binom",
            Suite::LkPp => "lk-pp",
            Suite::LkPPminus1 => "lk-p-pminus1",
            Suite::LkGeneral => "lk-general",
            Suite::MomentCumulant => "moment-cumulant",
            Suite::All => "all",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fuss-Catalan numbers A_0 .. A_n (the moment sequence)
    Numbers {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        n: usize,
    },
    /// Free cumulants r_1 .. r_n
    Cumulants {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        n: usize,
    },
    /// Density at a point (--x) or on a grid (--grid)
    Density {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, conflicts_with = "grid")]
        x: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        /// Output format for grids (point output is always JSON)
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classification report with Hankel evidence
    Classify {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 6)]
        hankel_size: usize,
    },
    /// Mode scan of the density
    Modes {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 20_000)]
        grid: usize,
    },
    /// Phase-transition estimate on the r axis
    Transition {
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Method::ARoot)]
        method: Method,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run a verification battery; exit 0 iff all checks pass
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

fn envelope(command: &str, params: Json, result: Json, warnings: Vec<String>) -> String {
    let mut s = Json::obj(vec![
        ("schema_version", Json::Str("1".into())),
        ("command", Json::Str(command.into())),
        ("params", params),
        ("result", result),
        (
            "warnings",
            Json::Array(warnings.into_iter().map(Json::Str).collect()),
        ),
    ])
    .render();
    s.push('\n');
    s
}

fn exit_code_for(e: &FcError) -> u8 {
    match e {
        FcError::InvalidParams(_)
        | FcError::Domain(_)
        | FcError::UnsupportedFamily { .. }
        | FcError::DegenerateMeasure
        | FcError::OutsideSupport { .. }
        | FcError::SequenceTooShort { .. } => 2,
        _ => 1,
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, FcError> {
    match cli.command {
        Command::Numbers { p, r, n } => {
            let result = commands::numbers(p, r, n)?;
            let params = Json::obj(vec![
                ("p", Json::Num(p)),
                ("r", Json::Num(r)),
                ("n", Json::Int(n as i64)),
            ]);
            print!("{}", envelope("numbers", params, result, vec![]));
            Ok(ExitCode::SUCCESS)
        }
        Command::Cumulants { p, r, n } => {
            let result = commands::cumulants(p, r, n)?;
            let params = Json::obj(vec![
                ("p", Json::Num(p)),
                ("r", Json::Num(r)),
                ("n", Json::Int(n as i64)),
            ]);
            print!("{}", envelope("cumulants", params, result, vec![]));
            Ok(ExitCode::SUCCESS)
        }
        Command::Density {
            p,
            r,
            x,
            grid,
            format,
            out,
        } => {
            match (x, grid) {
                (Some(x), None) => {
                    let result = commands::density_point(p, r, x)?;
                    let params = Json::obj(vec![
                        ("p", Json::Num(p)),
                        ("r", Json::Num(r)),
                        ("x", Json::Num(x)),
                    ]);
                    let text = envelope("density", params, result, vec![]);
                    emit(&out, &text).map_err(|e| FcError::InvalidParams(e.to_string()))?;
                }
                (None, Some(n)) => {
                    let data = commands::density_grid_data(p, r, n)?;
                    let text = match format.unwrap_or(OutputFormat::Csv) {
                        OutputFormat::Csv => commands::grid_to_csv(&data),
                        OutputFormat::Json => {
                            let params = Json::obj(vec![
                                ("p", Json::Num(p)),
                                ("r", Json::Num(r)),
                                ("grid", Json::Int(n as i64)),
                            ]);
                            envelope("density", params, commands::grid_to_json(&data), vec![])
                        }
                    };
                    emit(&out, &text).map_err(|e| FcError::InvalidParams(e.to_string()))?;
                }
                _ => {
                    return Err(FcError::InvalidParams(
                        "density requires exactly one of --x or --grid".into(),
                    ))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { p, r, hankel_size } => {
            let result = commands::classify(p, r, hankel_size)?;
            let params = Json::obj(vec![
                ("p", Json::Num(p)),
                ("r", Json::Num(r)),
                ("hankel_size", Json::Int(hankel_size as i64)),
            ]);
            print!("{}", envelope("classify", params, result, vec![]));
            Ok(ExitCode::SUCCESS)
        }
        Command::Modes { p, r, grid } => {
            let result = commands::modes(p, r, grid)?;
            let params = Json::obj(vec![
                ("p", Json::Num(p)),
                ("r", Json::Num(r)),
                ("grid", Json::Int(grid as i64)),
            ]);
            print!("{}", envelope("modes", params, result, vec![]));
            Ok(ExitCode::SUCCESS)
        }
        Command::Transition { p, method, tol } => {
            let method_name = match method {
                Method::ARoot => "a-root",
                Method::Scan => "scan",
            };
            let (result, warnings) = commands::transition(p, method_name, tol)?;
            let params = Json::obj(vec![
                ("p", Json::Num(p)),
                ("method", Json::Str(method_name.into())),
                ("tol", tol.map(Json::Num).unwrap_or(Json::Null)),
            ]);
            print!("{}", envelope("transition", params, result, warnings));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let batteries = verify::run_suite(suite.as_str())?;
            let (result, all_pass) = commands::verify_result(&batteries);
            let params = Json::obj(vec![("suite", Json::Str(suite.as_str().into()))]);
            print!("{}", envelope("verify", params, result, vec![]));
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
