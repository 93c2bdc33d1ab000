mod args;
mod commands;
mod instance;

use args::{Cli, Command};
use clap::Parser;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] aqgi::Error),
    #[error("{0}")]
    Usage(String),
    #[error("report serialization: {0}")]
    Json(#[from] serde_json::Error),
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let c = &cli.common;
    let outcome = match &cli.command {
        Command::Gi { input, evolve, dynamics } => commands::gi(c, input, *evolve, dynamics),
        Command::Aut { input } => commands::aut(c, input),
        Command::Sgi { paths, fixture, evolve, dynamics } => commands::sgi(c, paths, fixture.as_deref(), *evolve, dynamics),
        Command::Oracle { input } => commands::oracle(c, input),
        Command::Gapscan { input, grid } => commands::gapscan(c, input, *grid),
        Command::Evolve { input, t_total, dynamics } => commands::evolve(c, input, *t_total, dynamics),
        Command::Compile { input, compile } => commands::compile(c, input, compile),
    }?;
    let json = serde_json::to_string_pretty(&outcome.report)?;
    if let Some(dir) = &c.out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
        write_file(&dir.join("report.json"), &(json.clone() + "\n"))?;
        for (name, contents) in &outcome.artifacts {
            write_file(&dir.join(name), contents)?;
        }
    }
    if c.json {
        println!("{json}");
    } else {
        print!("{}", outcome.text);
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
