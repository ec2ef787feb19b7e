use std::process::ExitCode;

use homquad::cli::{parse_args, run, CliError};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match parse_args(&args).and_then(|cmd| run(&cmd)) {
        Ok(out) => {
            print!("{}", out.stdout);
            if let Some(summary) = &out.summary {
                eprintln!("{summary}");
            }
            ExitCode::from(out.exit_code())
        }
        Err(CliError::Help(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                // clap already formats its own "error: ..." message.
                CliError::Usage(msg) if msg.starts_with("error:") || msg.contains("Usage:") => {
                    eprintln!("{}", msg.trim_end())
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
