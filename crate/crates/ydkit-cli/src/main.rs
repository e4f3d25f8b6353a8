mod cli;
mod commands;
mod error;
mod input;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command, Format, TablesAction};
use commands::Session;
use error::CliError;

fn run(cli: &Cli) -> Result<u8, CliError> {
    let session = Session::new(&cli.global)?;
    let format = |default: Format| cli.global.format.unwrap_or(default);
    let report = match &cli.command {
        Command::Construct(p) => commands::construct_cmd(&session, p)?,
        Command::Verify(p) => commands::verify_cmd(&session, p)?,
        Command::Comatrix { params, size } => commands::comatrix_cmd(&session, params, *size)?,
        Command::Hilbert { params, companion, diagonal } => {
            commands::hilbert_cmd(&session, params, *companion, diagonal.as_deref())?
        }
        Command::Classify { grid: Some(grid), jobs, .. } => {
            return commands::classify_grid(&session, grid, *jobs, format(Format::Json));
        }
        Command::Classify { params, grid: None, .. } => commands::classify_single(&session, params)?,
        Command::CrossValidate(p) => commands::cross_validate_cmd(&session, p)?,
        Command::Tables { action: TablesAction::List } => {
            let r = commands::tables_list(&session);
            commands::emit(&r.render(format(Format::Tsv)));
            return Ok(r.code);
        }
        Command::Selftest { criteria } => {
            let r = commands::selftest(&session, criteria)?;
            commands::emit(&r.render(format(Format::Text)));
            if r.code != 0 {
                eprintln!("{}", r.text.lines().last().unwrap_or_default());
            }
            return Ok(r.code);
        }
    };
    commands::emit(&report.render(format(Format::Json)));
    Ok(report.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
