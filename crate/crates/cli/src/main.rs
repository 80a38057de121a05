use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use deprit_cli::config::{Cli, Command};
use deprit_cli::report::{render, run};
use deprit_cli::{CliError, RunConfig};
use deprit_core::kato::{kato_words, OperatorKind};

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => {
            let cfg = RunConfig::from_args(&args)?;
            let report = run(&cfg)?;
            let text = render(&report, cfg.format)?;
            match &args.out {
                Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?,
                None => {
                    let _ = std::io::stdout().write_all(text.as_bytes());
                }
            }
        }
        Command::Words { kind, n } => {
            let kind: OperatorKind = kind.parse()?;
            let mut out = std::io::stdout().lock();
            for w in kato_words(kind, n) {
                let _ = writeln!(out, "{w}");
            }
        }
        Command::Models => {
            for name in deprit_core::models::BUILTIN {
                println!("{name}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("deprit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
