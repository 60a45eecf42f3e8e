use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vanishing_cli::commands::{
    bracket, coxeter, discriminant_cmd, fold_cmd, groebner_config, steinberg_cmd, CliError, CoxeterCheck, Outcome,
    SteinbergCheck,
};
use vanishing_cli::report::Format;
use vanishing_cli::suite::{run_suite, SuiteConfig};
use vanishing_core::monodromy::DEFAULT_BFS_CAP;

#[derive(Parser)]
#[command(name = "vanishing", version, about = "Discriminants, monodromy and Steinberg maps of integrable germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poisson bracket {f_i, f_j} of two components (1-based).
    Bracket { file: PathBuf, i: usize, j: usize },
    /// Discriminant of a germ, or multiplicity of a given plane curve.
    Discriminant {
        file: Option<PathBuf>,
        /// Maximum number of S-pairs processed.
        #[arg(long)]
        budget: Option<usize>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Discriminant equation in s1, s2 instead of elimination.
        #[arg(long)]
        given: Option<String>,
    },
    /// Weyl group checks for a Dynkin type such as A3, B2, G2, E6.
    Coxeter {
        #[arg(value_name = "TYPE")]
        label: String,
        #[arg(long, value_enum, default_value = "all")]
        check: CoxeterCheck,
        /// Group enumeration cap.
        #[arg(long, default_value_t = DEFAULT_BFS_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Fold a simply-laced diagram by automorphisms (identity, flip, triality, full, perm:...).
    Fold {
        source: String,
        autospec: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Steinberg map of sl(r+1).
    Steinberg {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, value_enum, default_value = "all")]
        check: SteinbergCheck,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Run the reproducibility checks.
    Suite {
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Bracket { file, i, j } => bracket(&file, i, j),
        Command::Discriminant { file, budget, time_limit, given } => {
            discriminant_cmd(file.as_deref(), given.as_deref(), &groebner_config(budget, time_limit))
        }
        Command::Coxeter { label, check, cap, format } => {
            let (report, header) = coxeter(&label, check, cap)?;
            Ok(Outcome { stdout: with_header(&header, report.render(format), format), code: report.exit_code() })
        }
        Command::Fold { source, autospec, format } => {
            let (report, header) = fold_cmd(&source, &autospec)?;
            Ok(Outcome { stdout: with_header(&header, report.render(format), format), code: report.exit_code() })
        }
        Command::Steinberg { rank, check, format } => {
            let report = steinberg_cmd(rank, check)?;
            Ok(Outcome { stdout: report.render(format), code: report.exit_code() })
        }
        Command::Suite { budget, format } => {
            let report = run_suite(&SuiteConfig::with_budget(budget));
            Ok(Outcome { stdout: report.render(format), code: report.exit_code() })
        }
    }
}

fn with_header(header: &str, body: String, format: Format) -> String {
    match format {
        Format::Human if !header.is_empty() => format!("{header}\n{body}"),
        _ => body,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
