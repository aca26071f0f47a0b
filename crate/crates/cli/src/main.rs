use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use kprabhakar_cli::args::Cli;
use kprabhakar_cli::error::exit;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(exit::OK),
                _ => ExitCode::from(exit::USAGE),
            };
        }
    };
    match kprabhakar_cli::run(&cli) {
        Ok(out) => {
            println!("{}", out.json.as_str());
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
