//! CSV and JSON artifacts. Every CSV starts with a header row and numbers
//! use Rust's shortest round-trip formatting, independent of locale.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::SimError;
use crate::harness::BlerPoint;

/// A CSV file flushed after every row, so interrupted runs keep what they
/// finished.
pub struct CsvSink {
    path: PathBuf,
    writer: csv::Writer<File>,
}

impl CsvSink {
    pub fn create<S: AsRef<str>>(path: impl AsRef<Path>, header: &[S]) -> Result<Self, SimError> {
        let path = path.as_ref().to_path_buf();
        let file = File::create(&path).map_err(|e| SimError::io(&path, e))?;
        let mut sink = Self {
            path,
            writer: csv::Writer::from_writer(file),
        };
        sink.row(header)?;
        Ok(sink)
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) -> Result<(), SimError> {
        self.writer.write_record(fields.iter().map(AsRef::as_ref))?;
        self.writer.flush().map_err(|e| SimError::io(&self.path, e))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

/// Writes a whole table at once.
pub fn write_csv<H: AsRef<str>, S: AsRef<str>, R: AsRef<[S]>>(
    path: impl AsRef<Path>,
    header: &[H],
    rows: impl IntoIterator<Item = R>,
) -> Result<(), SimError> {
    let mut sink = CsvSink::create(path, header)?;
    for r in rows {
        sink.row(r.as_ref())?;
    }
    Ok(())
}

/// Header of the merged comparison table: `decoder` then the point columns.
pub fn comparison_header() -> Vec<&'static str> {
    std::iter::once("decoder").chain(BlerPoint::CSV_HEADER).collect()
}

pub fn comparison_fields(decoder: &str, p: &BlerPoint) -> Vec<String> {
    std::iter::once(decoder.to_owned()).chain(p.csv_fields()).collect()
}

/// Points that failed, kept in the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct PointFailure {
    pub decoder: String,
    pub snr_db: f64,
    pub error: String,
}

/// `manifest.json`: what ran, with which inputs, and what it wrote.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub seed: u64,
    pub workers: usize,
    pub config: &'a RunConfig,
    pub files: Vec<String>,
    pub failures: Vec<PointFailure>,
    pub codeword_violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<serde_json::Value>,
}

impl<'a> Manifest<'a> {
    pub fn new(command: &'a str, config: &'a RunConfig) -> Self {
        Self {
            tool: "grand",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed: config.seed,
            workers: config.workers,
            config,
            files: Vec::new(),
            failures: Vec::new(),
            codeword_violations: 0,
            summary: None,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf, SimError> {
        let path = dir.join("manifest.json");
        let mut file = File::create(&path).map_err(|e| SimError::io(&path, e))?;
        serde_json::to_writer_pretty(&mut file, self)?;
        file.write_all(b"\n").map_err(|e| SimError::io(&path, e))?;
        Ok(path)
    }
}
