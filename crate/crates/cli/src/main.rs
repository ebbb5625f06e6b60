mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};

fn format_of(command: &Command) -> Format {
    match command {
        Command::Minor { common, .. }
        | Command::Expand { common, .. }
        | Command::Census { common, .. }
        | Command::CountAb { common, .. }
        | Command::CountGalois { common, .. }
        | Command::Triangles { common, .. }
        | Command::Count4 { common, .. }
        | Command::SpanningTrees { common, .. } => common.output,
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("CYCLOGRAPH_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    configure_threads();
    match commands::run(&cli.command) {
        Ok(report) => {
            match format_of(&cli.command) {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                ),
                Format::Text => print!("{}", report.text),
            }
            if let Some(w) = report.warning {
                eprintln!("error: {w}");
            }
            ExitCode::from(report.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
