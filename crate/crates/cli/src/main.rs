use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::Parser;
use dehn::app::{CliError, ErrorKind};
use dehn::Cli;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DEHN_LOG", "off")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let err = CliError::new(ErrorKind::Usage, e.render().to_string().trim_end());
            eprintln!("{}", err.to_json());
            return ExitCode::from(ErrorKind::Usage.exit_code() as u8);
        }
    };
    let code = dehn::run(&cli.into_config(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
