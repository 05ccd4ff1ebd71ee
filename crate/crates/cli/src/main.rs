mod args;
mod campaign;
mod cmd;
mod config;
mod error;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use config::Config;
use error::CliResult;

fn run(cli: Cli) -> CliResult<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Generate(a) => cmd::generate(a, &cfg),
        Command::Table1(a) => cmd::table1(a, &cfg),
        Command::Theory(a) => cmd::theory(a, &cfg),
        Command::Fit(a) => cmd::fit(a, &cfg),
        Command::Distplot(a) => cmd::distplot(a, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
