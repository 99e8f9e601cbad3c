use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use surreal_cli::{parse_zeta, run_batch_file, Config, Format, Session};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Structured,
}

/// Exact surreal-number calculator.
///
/// Angles for sin, cos and e(x) are in turns: sin(1/4) = 1.
/// Exit codes: 0 success, 1 evaluation error, 2 syntax error, 3 config error.
#[derive(Debug, Parser)]
#[command(name = "surreal", version)]
struct Args {
    /// Number of series terms kept by truncated operations.
    #[arg(long, default_value_t = 8)]
    trunc: u32,
    /// Main ordinal bounding the field used by :infield.
    #[arg(long, default_value = "w^(w)")]
    zeta: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    /// Evaluate every line of a file instead of starting the REPL.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Append REPL input lines to this file.
    #[arg(long)]
    history: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let zeta = match parse_zeta(&args.zeta) {
        Ok(z) => z,
        Err(e) => {
            eprintln!("error: --zeta: {e}");
            return ExitCode::from(3);
        }
    };
    let cfg = Config {
        trunc: args.trunc,
        zeta,
        format: match args.format {
            OutputFormat::Human => Format::Human,
            OutputFormat::Structured => Format::Structured,
        },
    };
    if let Some(path) = args.batch {
        return match run_batch_file(&path, &cfg) {
            Ok(report) => {
                print!("{}", report.output);
                eprint!("{}", report.errors);
                let _ = io::stdout().flush();
                ExitCode::from(report.exit_code as u8)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        };
    }
    let mut session = Session::new(cfg);
    if let Some(h) = args.history {
        session = session.with_history(h);
    }
    let stdin = io::stdin();
    let prompt = stdin.is_terminal();
    match session.repl(stdin.lock(), io::stdout(), io::stderr(), prompt) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
