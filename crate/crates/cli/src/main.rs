use std::process::ExitCode;

use clap::Parser;
use rabi_cli::args::Cli;
use rabi_cli::{exit, run, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::from_cli(cli.command) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INVALID_CONFIG);
        }
    };

    let report = run(&cfg);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &report.text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(report.text.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }

    if report.converged {
        ExitCode::from(exit::SUCCESS)
    } else {
        eprintln!("error: numerical non-convergence, see status/error fields in the output");
        ExitCode::from(exit::NOT_CONVERGED)
    }
}
