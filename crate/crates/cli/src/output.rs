use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::args::Command;
use crate::error::CliResult;

/// Full-precision decimal (17 significant digits) for CSV cells.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

/// Empty cell for an absent value.
pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Writes to `out`, or to stdout when `None`.
    pub fn write(&self, out: Option<&Path>) -> CliResult<()> {
        let sink: Box<dyn Write> = match out {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        };
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Everything needed to reproduce one run.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Command,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub outputs: Vec<PathBuf>,
    pub wall_time_seconds: f64,
}

impl RunManifest {
    pub fn new(cmd: &Command, wall_time_seconds: f64) -> Self {
        Self {
            command: cmd.name().to_string(),
            parameters: cmd.clone(),
            seed: cmd.seed(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: cmd.out().cloned().into_iter().collect(),
            wall_time_seconds,
        }
    }

    /// `<out>.manifest.json` next to the data file, or stderr when the data
    /// went to stdout.
    pub fn emit(&self) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self)?;
        match self.outputs.first() {
            Some(p) => std::fs::write(manifest_path(p), text + "\n")?,
            None => eprintln!("{text}"),
        }
        Ok(())
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
