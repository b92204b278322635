use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyquot::families::FamilyTag;
use cyquot::report::{run, split_generators, Command, Format, ReportError, RunConfig, Selector};

#[derive(Parser)]
#[command(name = "cyquot", version, about = "Automorphisms, fixed loci, quotients and fundamental groups of type-A Calabi-Yau threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, global = true, value_parser = ["d4", "z2z2"])]
    family: Option<String>,
    #[arg(long, global = true, value_parser = ["md", "csv", "json"])]
    format: Option<String>,
    /// Generators of Υ in the map DSL, separated by `;`.
    #[arg(long, global = true)]
    subgroup: Option<String>,
    #[arg(long, global = true, conflicts_with = "subgroup")]
    all_subgroups: bool,
    /// Check fixed loci against exhaustive search on the 1/N grid.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true)]
    grid: Option<i64>,
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Fixed loci of the automorphisms of the D4 family.
    Fixtable,
    /// Hodge numbers, class and π₁ of quotients X/Υ.
    Quotients,
    /// Automorphism classes of X.
    Auts,
    /// Fundamental group of X or of X/Υ.
    Pi1,
    /// Runs the invariant suite.
    Selfcheck,
}

fn config(cli: &Cli) -> Result<RunConfig, ReportError> {
    let mut cfg = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| ReportError::Usage(format!("{}: {e}", p.display())))?;
            RunConfig::parse(&text).map_err(|e| match e {
                ReportError::Parse { line, column, message } => ReportError::Usage(format!("{}:{line}:{column}: {message}", p.display())),
                other => other,
            })?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = &cli.family {
        cfg.family = f.parse::<FamilyTag>().map_err(ReportError::Usage)?;
    }
    if let Some(f) = &cli.format {
        cfg.format = f.parse::<Format>().map_err(ReportError::Usage)?;
    }
    if let Some(s) = &cli.subgroup {
        cfg.subgroup = Selector::Generators(split_generators(s));
    }
    if cli.all_subgroups {
        cfg.subgroup = Selector::AllSubgroups;
    }
    cfg.oracle |= cli.oracle;
    if let Some(n) = cli.grid {
        cfg.grid = n;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let command = match cli.command {
        Cmd::Fixtable => Command::Fixtable,
        Cmd::Quotients => Command::Quotients,
        Cmd::Auts => Command::Auts,
        Cmd::Pi1 => Command::Pi1,
        Cmd::Selfcheck => Command::Selfcheck,
    };
    match config(&cli).and_then(|cfg| run(command, &cfg)) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("selfcheck failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("cyquot: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
