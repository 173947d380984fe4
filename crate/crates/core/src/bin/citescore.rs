use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use citescore::report::{self, Mode, OutputFormat, RankRequest};

/// Eigenvector influence scores for citation and league files.
#[derive(Parser)]
#[command(name = "citescore", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the nodes of an edge file.
    Rank(Opts),
    /// Rank, and also print the block structure and reducible-case checks.
    Analyze(Opts),
    /// Structure and column-sum checks only, without solving.
    Validate(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Citations,
    League,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Edge file: `citer,cited[,count]` per line (comma or tab separated).
    input: PathBuf,
    /// `league` reads lines as `winner,loser[,count]` and treats each win as
    /// the loser citing the winner: "tigers,lions,2" becomes lions -> tigers.
    #[arg(long, value_enum, default_value = "citations")]
    mode: ModeArg,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Print one ranking per recurrent class when the ranking is not unique.
    #[arg(long)]
    per_class: bool,
}

impl Opts {
    fn request(&self) -> RankRequest {
        RankRequest {
            input_path: self.input.clone(),
            mode: match self.mode {
                ModeArg::Citations => Mode::Citations,
                ModeArg::League => Mode::League,
            },
            tolerance: self.tol,
            max_iter: self.max_iter,
            output_format: match self.format {
                FormatArg::Text => OutputFormat::Text,
                FormatArg::Json => OutputFormat::Json,
            },
            per_class: self.per_class,
        }
    }
}

fn emit<T: serde::Serialize>(
    req: &RankRequest,
    outcome: citescore::Result<T>,
    text: impl Fn(&T) -> (String, String),
    code: impl Fn(&T) -> i32,
) -> ExitCode {
    let json = req.output_format == OutputFormat::Json;
    match outcome {
        Ok(report) => {
            if json {
                print!("{}", report::to_json(&report));
            } else {
                let (out, diag) = text(&report);
                print!("{out}");
                eprint!("{diag}");
            }
            ExitCode::from(code(&report) as u8)
        }
        Err(err) => {
            if json {
                print!("{}", report::error_json(&err));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Rank(opts) => {
            let req = opts.request();
            emit(
                &req,
                report::run_rank(&req),
                |r| (report::render_rank_text(r), report::render_diagnostics_text(&r.diagnostics)),
                |r| r.exit_code(),
            )
        }
        Command::Analyze(opts) => {
            let req = opts.request();
            emit(
                &req,
                report::run_analyze(&req),
                |a| (report::render_analysis_text(a), report::render_diagnostics_text(&a.rank.diagnostics)),
                |a| a.rank.exit_code(),
            )
        }
        Command::Validate(opts) => {
            let req = opts.request();
            emit(
                &req,
                report::run_validate(&req),
                |v| (report::render_validation_text(v), report::render_diagnostics_text(&v.diagnostics)),
                |v| v.exit_code(),
            )
        }
    }
}
