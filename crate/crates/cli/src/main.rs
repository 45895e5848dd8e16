use std::process::ExitCode;

use clap::Parser;
use dicke_cli::commands::configure_threads;
use dicke_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage errors exit 1, not clap's default 2, which is reserved for separable verdicts.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads(cli.threads)
        .and_then(|()| run(&cli))
        .and_then(|(text, outcome)| {
            match &cli.output {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(outcome)
        });
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
