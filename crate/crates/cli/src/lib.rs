//! Command-line front end: experiment configs, figure presets and
//! CSV/JSON output.

pub mod args;
pub mod commands;
pub mod config;
pub mod dist;
pub mod error;
pub mod presets;
pub mod table;

use clap::Parser;

pub use commands::{compute, run, Outcome};
pub use config::{CommandKind, ExperimentConfig, Format, GridSpec};
pub use error::{CliError, CliResult};

/// Parse arguments, run, print the summary and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let save = cli.save_config.clone();
    let result = cli.into_config().and_then(|config| {
        if let Some(path) = &save {
            table::write_file(path, config.to_json().as_bytes())?;
        }
        run(&config)
    });
    match result {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
