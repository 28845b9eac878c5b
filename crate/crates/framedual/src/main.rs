use std::process::ExitCode;

use clap::Parser;
use framedual::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    match cli::run(&args) {
        Ok(report) => {
            print!("{}", report.human());
            if let Some(path) = &args.report {
                let text = serde_json::to_string_pretty(&report).expect("serializable report");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
