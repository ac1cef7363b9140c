use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sasaki::report::{render_text, verify, VerifyOptions, EXIT_INPUT_ERROR};
use sasaki::spec::{parse_coefficients, parse_potential, ManifoldSpecFile, SpecError};

#[derive(Parser)]
#[command(name = "sasaki", version, about = "Exact verification of trans-Sasakian η-Yamabe soliton instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a manifold spec file or a built-in manifold (`paper-example`, `flat-example`).
    Verify {
        /// Path to a JSON spec, or a built-in name.
        target: String,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Quasi-conformal coefficients `a,b`.
        #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
        quasi_conformal: Option<String>,
        /// `xi`, or comma-separated frame components of a potential field.
        #[arg(long, value_name = "NAME|EXPRS", allow_hyphen_values = true)]
        potential_field: Option<String>,
    },
}

fn run(cli: Cli) -> Result<(String, i32), SpecError> {
    let Command::Verify {
        target,
        json,
        quasi_conformal,
        potential_field,
    } = cli.command;
    let spec = ManifoldSpecFile::resolve(&target)?.build()?;
    let options = VerifyOptions {
        quasi_conformal: quasi_conformal.as_deref().map(parse_coefficients).transpose()?,
        potential: potential_field.as_deref().map(|p| parse_potential(&spec, p)).transpose()?,
    };
    let report = verify(&spec, &options);
    let out = if json {
        report.to_json() + "\n"
    } else {
        render_text(&report)
    };
    Ok((out, report.exit_code()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
