//! Batch front end: structure documents in, versioned reports out.
//!
//! Exit codes: 0 when every check passes or is unsupported, 1 when a check
//! fails or errors, 2 when the input cannot be read or parsed.

mod commands;
pub mod doc;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

pub use commands::class_label;
pub use doc::{parse_point, InputError, Loaded, StructureDoc};
pub use report::{Check, Report, Status, SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Algebraic constraints, integrability and the eigenspace data.
    Check,
    /// The Poisson bivector and the Jacobi identity on monomials.
    Poisson,
    /// Splitting of the structure at a point into symplectic and complex parts.
    Decompose,
    /// The orthogonal complement of a named subspace.
    Orthcomp,
    /// The complex Lie algebra at a point where the Poisson tensor vanishes.
    Linearize,
    /// B-field constructions on a product chart.
    Normalform,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Poisson => "poisson",
            Command::Decompose => "decompose",
            Command::Orthcomp => "orthcomp",
            Command::Linearize => "linearize",
            Command::Normalform => "normalform",
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "gckit", version, about = "Exact checks for generalized complex structures")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Structure document (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Comma-separated rational coordinates, e.g. "0,1/2".
    #[arg(long)]
    pub point: Option<String>,
    /// Name of a subspace declared in the document.
    #[arg(long)]
    pub subspace: Option<String>,
    /// Degree bound for identity suites.
    #[arg(long, default_value_t = 3)]
    pub degree: u32,
    /// Compact JSON report (default).
    #[arg(long, conflicts_with = "pretty")]
    pub json: bool,
    /// Human-readable report.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub point: Option<String>,
    pub subspace: Option<String>,
    pub degree: u32,
}

fn echo(document: &Value, opts: &Options) -> Value {
    json!({
        "document": document,
        "point": opts.point,
        "subspace": opts.subspace,
        "degree": opts.degree,
    })
}

fn input_report(command: Command, input: Value, e: &InputError) -> Report {
    let mut r = Report::new(command.name(), input);
    r.error("input", e.to_string());
    r
}

/// Runs a command on document text; the code is the process exit code.
pub fn run_text(command: Command, text: &str, opts: &Options) -> (Report, i32) {
    let raw: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            let err = InputError(format!("invalid document: {e}"));
            return (input_report(command, echo(&Value::Null, opts), &err), 2);
        }
    };
    let input = echo(&raw, opts);
    let loaded = StructureDoc::from_json(text).and_then(|d| d.load()).and_then(|doc| {
        let point = opts.point.as_deref().map(|p| parse_point(p, doc.dim)).transpose()?;
        let subspace = match (command, &opts.subspace) {
            (Command::Orthcomp, None) => return Err(InputError("orthcomp needs --subspace".into())),
            (_, Some(name)) => Some(
                doc.subspaces
                    .get(name)
                    .cloned()
                    .ok_or_else(|| InputError(format!("document declares no subspace `{name}`")))?,
            ),
            (_, None) => None,
        };
        if command == Command::Normalform && doc.chart.is_none() {
            return Err(InputError("normalform needs a chart declaration".into()));
        }
        Ok((doc, point, subspace))
    });
    let (doc, point, subspace) = match loaded {
        Ok(x) => x,
        Err(e) => return (input_report(command, input, &e), 2),
    };
    let mut r = Report::new(command.name(), input);
    match command {
        Command::Check => commands::check(&mut r, &doc, point.as_ref()),
        Command::Poisson => commands::poisson(&mut r, &doc, opts.degree),
        Command::Decompose => commands::decompose(&mut r, &doc, point.as_ref()),
        Command::Orthcomp => commands::orthcomp(&mut r, &doc, point.as_ref(), subspace.as_ref().expect("checked")),
        Command::Linearize => commands::linearize(&mut r, &doc, point.as_ref()),
        Command::Normalform => commands::normalform(&mut r, &doc),
    }
    let code = r.exit_code();
    (r, code)
}

/// Parses arguments, runs the command, prints the report and returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let opts = Options { point: cli.point.clone(), subspace: cli.subspace.clone(), degree: cli.degree };
    let (report, code) = match std::fs::read_to_string(&cli.input) {
        Ok(text) => run_text(cli.command, &text, &opts),
        Err(e) => {
            let err = InputError(format!("cannot read {}: {e}", cli.input.display()));
            (input_report(cli.command, echo(&Value::Null, &opts), &err), 2)
        }
    };
    if cli.pretty {
        print!("{}", report.to_pretty());
    } else {
        println!("{}", report.to_json());
    }
    code
}
