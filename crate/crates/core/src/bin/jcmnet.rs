use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use jcmnet::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own usage status is 2, which is reserved for violations here
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out_path = cli.out.clone();
    let result = cli.into_config().and_then(|config| {
        let mut sink: Box<dyn Write> = match &out_path {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        };
        let outcome = run(&config, &mut sink)?;
        sink.flush()?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
