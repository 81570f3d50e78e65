//! Command-line front door: `dfsl run <script> [flags]`.
//!
//! Exit codes: 0 success, 1 lex/parse error, 2 semantic error, 3 runtime
//! error, 4 I/O or usage error. Diagnostics go to standard error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::bitstream::{BitSource, BitstreamError};
use crate::emitter::{to_text, to_xml};
use crate::frontend::{parse_error_report, parse_source};
use crate::interpreter::{execute, ExecErrorKind, ExecOptions};
use crate::semantics::{analyze, render_elaboration};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_SEMANTIC: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "dfsl",
    version,
    about = "Interpreter for DFSL, a language describing the bit-level layout of binary data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a binary stream as described by a script
    Run(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Script file to execute
    script: PathBuf,

    /// Binary file replacing the first executed domain's bound data
    #[arg(long, value_name = "FILE", conflicts_with = "hex")]
    data: Option<PathBuf>,

    /// Hex string replacing the first executed domain's bound data
    #[arg(long, value_name = "HEXSTRING")]
    hex: Option<String>,

    /// Write the XML document of the parsed structure to this path
    #[arg(long, value_name = "PATH")]
    xml: Option<PathBuf>,

    /// Write text output to this path instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Show the elaborated structure table with size annotations
    #[arg(long)]
    dump_ast: bool,

    /// Append one `name = value` line per leaf field
    #[arg(long)]
    dump_fields: bool,

    /// Warn when the run leaves trailing bits unread
    #[arg(long)]
    strict: bool,
}

/// Full CLI entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version exit cleanly; anything else is a usage error
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_IO,
            };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Run(args) => run(&args),
    }
}

fn run(args: &RunArgs) -> i32 {
    let source = match std::fs::read_to_string(&args.script) {
        Ok(text) => text,
        Err(err) => {
            eprintln!(
                "error: cannot read script `{}`: {err}",
                args.script.display()
            );
            return EXIT_IO;
        }
    };

    let ast = match parse_source(&source) {
        Ok(ast) => ast,
        Err(err) => {
            eprintln!("{}", parse_error_report(&err, &source));
            return EXIT_PARSE;
        }
    };

    let table = match analyze(&ast) {
        Ok(table) => table,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_SEMANTIC;
        }
    };

    let data_override = match load_override(args) {
        Ok(source) => source,
        Err(code) => return code,
    };
    let opts = ExecOptions {
        data_override,
        file_base: args.script.parent().map(Path::to_path_buf),
        ..ExecOptions::default()
    };

    let report = match execute(&table, &opts) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return match &err.kind {
                ExecErrorKind::Stream(BitstreamError::Io { .. }) => EXIT_IO,
                _ => EXIT_RUNTIME,
            };
        }
    };

    let mut text = String::new();
    if args.dump_ast {
        text.push_str(&render_elaboration(&table));
    }
    text.push_str(&to_text(&report, args.dump_fields));
    if let Err(code) = write_text(args.out.as_deref(), &text) {
        return code;
    }

    if let Some(xml_path) = &args.xml {
        let name = args
            .script
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| args.script.display().to_string());
        let doc = to_xml(&report, &name);
        if let Err(err) = std::fs::write(xml_path, doc) {
            eprintln!("error: cannot write XML to `{}`: {err}", xml_path.display());
            return EXIT_IO;
        }
    }

    if args.strict && report.bits_consumed < report.stream_bits {
        eprintln!(
            "warning: {} of {} bits were never read",
            report.stream_bits - report.bits_consumed,
            report.stream_bits
        );
    }

    EXIT_OK
}

fn load_override(args: &RunArgs) -> Result<Option<BitSource>, i32> {
    if let Some(path) = &args.data {
        return match BitSource::from_file(path) {
            Ok(source) => Ok(Some(source)),
            Err(err) => {
                eprintln!("error: {err}");
                Err(EXIT_IO)
            }
        };
    }
    if let Some(hex) = &args.hex {
        return match BitSource::from_hex_str(hex) {
            Ok(source) => Ok(Some(source)),
            Err(err) => {
                eprintln!("error: {err}");
                Err(EXIT_IO)
            }
        };
    }
    Ok(None)
}

fn write_text(out: Option<&Path>, text: &str) -> Result<(), i32> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|err| {
            eprintln!("error: cannot write output to `{}`: {err}", path.display());
            EXIT_IO
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
