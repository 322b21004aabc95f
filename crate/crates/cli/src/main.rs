use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qkud_cli::args::{Cli, Command};
use qkud_cli::commands::{accuracy_warning, cmd_exact, cmd_run, cmd_sweep, exit_code, spectrum_csv};
use qkud_cli::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors, which would read as "max iterations reached"
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Exact { model, spectrum, out } => {
            let res = cmd_exact(&model)?;
            println!("{}", res.ground);
            if spectrum {
                let text = spectrum_csv(&res.spectrum);
                match out {
                    Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io { path, source: e })?,
                    None => print!("{text}"),
                }
            }
            Ok(0)
        }
        Command::Run(args) => {
            let spec = args.run_overrides()?.resolve(None)?;
            let run = cmd_run(&spec)?;
            if spec.output_path.is_none() {
                std::io::stdout()
                    .write_all(run.to_csv_string()?.as_bytes())
                    .map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })?;
            }
            if let Some(w) = accuracy_warning(&run) {
                eprintln!("{w}");
            }
            Ok(exit_code(run.preamble.status) as u8)
        }
        Command::Sweep(args) => {
            let (template, params, out_dir) = args.run.sweep_overrides()?;
            let report = cmd_sweep(&template, &params, args.jobs, &out_dir)?;
            for row in report.rows.iter().filter(|r| r.error.is_some()) {
                eprintln!("error: parameter {}: {}", row.parameter, row.error.as_deref().unwrap_or(""));
            }
            println!("{}", report.summary_path.display());
            Ok(if report.has_errors() { 1 } else { 0 })
        }
    }
}
