use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use descent_ss_cli::{error_message, run, Command, Options};

#[derive(Parser)]
#[command(name = "descent-ss", version, about = "Spectral sequence and Čech descent computations over the integers")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Smith normal form of a MATRIX, with its checks
    Snf(Flags),
    /// Cohomology of a COMPLEX
    Cohomology(Flags),
    /// Cohomotopy groups of an abelian COSIMPLICIAL group
    Cohomotopy(Flags),
    /// π¹ of a cosimplicial finite group as a pointed orbit set
    Pi1(Flags),
    /// Compare the holim and Postnikov spectral sequences
    SsCompare(Flags),
    /// Čech cohomology of a PRESHEAF on a COVER
    Cech(Flags),
    /// Period, d₂ table and étale index of the classes in Ȟ²
    Brauer(Flags),
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<i64>,
    #[arg(long)]
    page_max: Option<usize>,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    nerve_bound: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, flags) = match cli.command {
        Cmd::Snf(f) => (Command::Snf, f),
        Cmd::Cohomology(f) => (Command::Cohomology, f),
        Cmd::Cohomotopy(f) => (Command::Cohomotopy, f),
        Cmd::Pi1(f) => (Command::Pi1, f),
        Cmd::SsCompare(f) => (Command::SsCompare, f),
        Cmd::Cech(f) => (Command::Cech, f),
        Cmd::Brauer(f) => (Command::Brauer, f),
    };
    let input = match &flags.input {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(s) => Some(s),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => None,
    };
    let opts = Options {
        degree: flags.degree,
        page_max: flags.page_max,
        truncation: flags.truncation,
        nerve_bound: flags.nerve_bound,
        seed: flags.seed,
    };
    match run(cmd, input.as_deref(), &opts) {
        Ok(report) => {
            if let Some(p) = &flags.output {
                if let Err(e) = std::fs::write(p, &report.text) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{}", error_message(&e));
            ExitCode::from(2)
        }
    }
}
