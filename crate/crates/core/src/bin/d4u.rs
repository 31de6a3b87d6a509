use std::process::ExitCode;

use clap::Parser;
use d4_unipotent::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("d4u: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("d4u: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &out.text),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("d4u: {e}");
        return ExitCode::from(2);
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
