use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use poissonlie::problem::Problem;
use poissonlie::report::{self as commands, Failure, Outcome, Status};

#[derive(Parser)]
#[command(name = "poissonlie", version, about = "Exact Poisson algebras of solvable Lie algebras")]
struct Cli {
    /// Degree bound for every search (overrides the problem file).
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Suppress the human summary on stderr.
    #[arg(long, global = true)]
    json: bool,
    /// Write the decomposition trace to this file.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi, solvability and nilpotency.
    Verify {
        file: PathBuf,
    },
    /// Bracket of two elements.
    Bracket {
        file: PathBuf,
        #[arg(short)]
        p: String,
        #[arg(short)]
        q: String,
    },
    /// Weight spaces of semi-invariants.
    SemiInvariants {
        file: PathBuf,
    },
    /// Poisson center.
    Center {
        file: PathBuf,
    },
    /// The kernel of all semi-invariant weights and the skew-extension presentation over it.
    Ghat {
        file: PathBuf,
    },
    /// Weyl-factor decomposition of the localization.
    Decompose {
        file: PathBuf,
    },
    /// Trivial center versus Weyl shape for nilpotent algebras.
    Check84 {
        file: PathBuf,
    },
    BvwgSimple {
        file: PathBuf,
    },
    BvwgInvariants {
        file: PathBuf,
    },
    BvwgEmbed {
        file: PathBuf,
    },
    BvwgRealize {
        file: PathBuf,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Verify { file }
            | Command::Bracket { file, .. }
            | Command::SemiInvariants { file }
            | Command::Center { file }
            | Command::Ghat { file }
            | Command::Decompose { file }
            | Command::Check84 { file }
            | Command::BvwgSimple { file }
            | Command::BvwgInvariants { file }
            | Command::BvwgEmbed { file }
            | Command::BvwgRealize { file } => file,
        }
    }
}

fn run(cmd: &Command, problem: &Problem, d: u32) -> Result<Outcome, Failure> {
    match cmd {
        Command::Verify { .. } => commands::verify(problem, d),
        Command::Bracket { p, q, .. } => commands::bracket(problem, p, q, d),
        Command::SemiInvariants { .. } => commands::semi_invariants(problem, d),
        Command::Center { .. } => commands::center(problem, d),
        Command::Ghat { .. } => commands::ghat(problem, d),
        Command::Decompose { .. } => commands::decompose(problem, d, problem.options().nilpotency_cap),
        Command::Check84 { .. } => commands::check84(problem, d),
        Command::BvwgSimple { .. } => commands::bvwg_simple(problem, d),
        Command::BvwgInvariants { .. } => commands::bvwg_invariants(problem, d),
        Command::BvwgEmbed { .. } => commands::bvwg_embed(problem, d),
        Command::BvwgRealize { .. } => commands::bvwg_realize(problem, d),
    }
}

fn emit(report: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let problem = match Problem::load(cli.command.file()) {
        Ok(p) => p,
        Err(e) => {
            let f = Failure::input(e);
            emit(&f.report(cli.max_degree.unwrap_or(6)));
            if !cli.json {
                eprintln!("error: {}", f.message);
            }
            return ExitCode::from(f.status.code());
        }
    };
    let d = cli.max_degree.unwrap_or(problem.options().max_degree);
    match run(&cli.command, &problem, d) {
        Ok(out) => {
            emit(&out.report);
            if let (Some(path), Some(trace)) = (&cli.trace, &out.trace) {
                let text = serde_json::to_string_pretty(trace).expect("trace serializes");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(Status::Input.code());
                }
            }
            if !cli.json {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(out.status.code())
        }
        Err(f) => {
            emit(&f.report(d));
            if !cli.json {
                eprintln!("{}: {}", f.kind, f.message);
            }
            ExitCode::from(f.status.code())
        }
    }
}
