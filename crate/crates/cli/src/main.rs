use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use weyl_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    let code = match run(&cli.command, &mut out) {
        Ok(code) => code,
        Err(weyl_cli::CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
