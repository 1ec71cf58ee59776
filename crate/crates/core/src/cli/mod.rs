//! Command-line front end: argument parsing, dispatch and report output.

mod commands;
pub mod input;
pub mod schemas;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}

input_error!(
    crate::vla::VlaError,
    crate::vertex::VertexError,
    crate::brst::BrstError,
    crate::equivariant::EquivariantError,
    crate::operads::OperadError,
    crate::kernel::KernelError
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "chiralg",
    version,
    about = "Exact computations with vertex algebras, BRST complexes, equivariant Koszul duality and operads"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// built-in vertex Lie algebra (see `presets`)
    #[arg(long, conflicts_with = "input")]
    pub preset: Option<String>,
    /// vla.v1 document
    #[arg(long)]
    pub input: Option<String>,
    /// level or central charge: a rational number or a symbol such as c
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a vertex Lie algebra
    VlaCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        cutoff: i64,
    },
    /// Singular part of the OPE of two generators
    Ope {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Weight-space dimensions of the enveloping vertex algebra
    EnvelopeDims {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        cutoff: i64,
    },
    /// BRST charge, d² and cohomology for a Lie algebra with matter
    Brst {
        /// lie.v1 document, or one of sl2, abelian, abelian2, ...
        #[arg(long)]
        lie: String,
        /// none, heisenberg, kacmoody, betagamma, or a sum such as betagamma+kacmoody
        #[arg(long, default_value = "none")]
        matter: String,
        #[arg(long, allow_hyphen_values = true)]
        level: Option<String>,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        cutoff: i64,
    },
    /// Koszul complex t(N) of a mixed complex and its cohomology over Q[u]
    Koszul {
        /// mixed.v1 document
        #[arg(long)]
        input: String,
    },
    /// Cartan model of a torus acting diagonally on affine space
    Cartan {
        /// cartan.v1 document
        #[arg(long, conflicts_with = "weights")]
        input: Option<String>,
        /// weights per torus factor, e.g. "1,0;0,1"
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        cutoff: i64,
    },
    /// Whether a map of mixed complexes is an isomorphism after localization
    Localize {
        /// localize.v1 document
        #[arg(long)]
        input: String,
    },
    /// Check an algebra instance against an operad's relations
    OperadCheck {
        /// alg.v1 document
        #[arg(long, conflicts_with = "fixture")]
        input: Option<String>,
        /// built-in instance (see `presets`)
        #[arg(long)]
        fixture: Option<String>,
        /// Ass, Comm, Lie, P_d, BD_0, BD_0^u, BD_1 or BV; overrides the document
        #[arg(long)]
        preset: Option<String>,
        /// substitute a value for ħ or u before checking
        #[arg(long, allow_hyphen_values = true)]
        specialize: Option<String>,
        /// print the instance as alg.v1 instead of checking it
        #[arg(long)]
        emit: bool,
    },
    /// Cohomology ring of the configuration space of n points in R^d
    Conf {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// List the built-in presets and fixtures
    Presets,
}

/// A finished report: exit code 0 on success, 1 when a mathematical check
/// failed.
pub struct Report {
    pub ok: bool,
    pub value: Value,
}

pub fn cutoff(flag: &str, v: i64) -> Result<usize, CliError> {
    usize::try_from(v).map_err(|_| CliError::Usage(format!("--{flag} must be >= 0, got {v}")))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    commands::dispatch(&cli.command)
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        table(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", flat(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", flat(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    table(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items
            .iter()
            .all(|x| !matches!(x, Value::Array(_) | Value::Object(_))),
        Value::Object(map) => map
            .values()
            .all(|x| !matches!(x, Value::Array(_) | Value::Object(_))),
        _ => true,
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| format!("{k}={}", scalar_text(x)))
            .collect::<Vec<_>>()
            .join("  "),
        other => scalar_text(other),
    }
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n",
        Format::Table => {
            let mut out = String::new();
            table(value, 0, &mut out);
            out
        }
    }
}

/// Run with the given arguments; returns (exit code, stdout, stderr).
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    match execute(&cli) {
        Ok(r) => (
            if r.ok { 0 } else { 1 },
            render(&r.value, cli.format),
            String::new(),
        ),
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}
