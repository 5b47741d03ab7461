use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use infimax_cli::render::render;
use infimax_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = render(&outcome.report, cli.format);
            let mut out = io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("infimax: {e}");
                    return ExitCode::from(4);
                }
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("infimax: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
