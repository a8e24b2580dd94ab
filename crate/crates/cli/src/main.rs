use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use kmf_cli::{execute, Cli, CliError, Command};

fn read_input(path: &str) -> Result<String, CliError> {
    let mut buf = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut buf).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
    } else {
        buf = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    }
    Ok(buf)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match cli.command {
        Command::Selftest { .. } => String::new(),
        _ => match read_input(&cli.input) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("kmf: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        },
    };
    let response = execute(&cli, &input);
    print!("{}", response.stdout);
    ExitCode::from(response.code as u8)
}
