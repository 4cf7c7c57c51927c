use std::fmt;
use std::fs;
use std::io::{self, Write};

use serde::Serialize;

use crate::args::{Format, Global};

pub enum CliError {
    Usage(String),
    Core(flaglab::Error),
    Io(io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
}

impl CliError {
    /// 1 for a failed mathematical check, 2 for usage or environment.
    pub fn exit_code(&self) -> u8 {
        use flaglab::Error::*;
        match self {
            CliError::Core(NotACoclique(..) | NotMaximal(_) | NonMaximalWeightSpectrum { .. }) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "invalid JSON: {e}"),
            CliError::Csv(e) => write!(f, "{e}"),
        }
    }
}

impl From<flaglab::Error> for CliError {
    fn from(e: flaglab::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Fields shared by every report. Only `timestamp` varies between runs.
#[derive(Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub verb: String,
    pub n: Option<usize>,
    pub q: Option<u8>,
    pub vertex_hash: Option<String>,
    pub seed: Option<String>,
    pub timestamp: String,
}

impl Header {
    pub fn new(verb: &str, n: Option<usize>, q: Option<u8>, vertex_hash: Option<&str>, seed: Option<u64>) -> Self {
        Header {
            tool: "flaglab",
            version: env!("CARGO_PKG_VERSION"),
            verb: verb.to_string(),
            n,
            q,
            vertex_hash: vertex_hash.map(str::to_string),
            seed: seed.map(|s| s.to_string()),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    #[serde(flatten)]
    header: &'a Header,
    #[serde(flatten)]
    body: &'a T,
}

/// Rows for `--format csv`.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn sink(g: &Global) -> CliResult<Box<dyn Write>> {
    Ok(match &g.output {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

/// Writes the report as one JSON line, or `table` as CSV.
pub fn emit<T: Serialize>(g: &Global, header: &Header, body: &T, table: Option<Table>) -> CliResult<()> {
    let mut out = sink(g)?;
    match g.format {
        Format::Json => {
            serde_json::to_writer(&mut out, &Report { header, body })?;
            writeln!(out)?;
        }
        Format::Csv => {
            let table = table.ok_or_else(|| CliError::Usage(format!("--format csv is not available for {}", header.verb)))?;
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}
