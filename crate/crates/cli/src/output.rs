//! CSV and JSON artifacts.
//!
//! Every CSV starts with a block of `#` lines:
//!
//! ```text
//! # schema: mantel4-<kind>/<version>
//! # build: <crate version and build id>
//! # config: <config as JSON, without output path and thread count>
//! # constants: <effective constants as JSON>
//! # note: <free text, zero or more lines>
//! ```
//!
//! followed by an ordinary CSV table with a header row. Wall-clock timings
//! are kept out of these files (they go to the timing sidecar) so that
//! reruns are byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use mantel4::proplab::PaperConstants;
use serde::Serialize;

use crate::config::{ExperimentConfig, Kind};

pub const SCHEMA_VERSION: u32 = 1;

pub fn build_id() -> String {
    format!("mantel4 {} ({})", env!("CARGO_PKG_VERSION"), option_env!("MANTEL4_BUILD_ID").unwrap_or("unknown"))
}

pub fn header_block(kind: Kind, cfg: &ExperimentConfig, consts: &PaperConstants, notes: &[&str]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# schema: mantel4-{}/{}\n", kind.name(), SCHEMA_VERSION));
    out.push_str(&format!("# build: {}\n", build_id()));
    out.push_str(&format!("# config: {}\n", cfg.echo()));
    out.push_str(&format!("# constants: {}\n", serde_json::to_string(consts).expect("constants serialize")));
    for note in notes {
        out.push_str(&format!("# note: {note}\n"));
    }
    out
}

pub fn csv_table<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().context("flushing CSV")?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

/// Wall time of one stage of one trial.
#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub n: usize,
    pub p: f64,
    pub trial: u64,
    pub stage: &'static str,
    pub seconds: f64,
}

/// Everything an experiment produces. `csv` and `json` are deterministic
/// functions of the config; `timing` is not.
#[derive(Debug, Clone)]
pub struct Report {
    pub csv: String,
    pub json: Option<String>,
    pub timing: Vec<Timing>,
    /// Trials or cells that were skipped, with the reason.
    pub skipped: Vec<String>,
}

impl Report {
    pub fn timing_csv(&self) -> Result<String> {
        csv_table(&self.timing)
    }

    /// Writes the CSV to `out` (stdout if `None`), the JSON next to it with
    /// a `.json` extension, and timings to `<out>.timing.csv`.
    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        let Some(out) = out else {
            print!("{}", self.csv);
            if self.json.is_some() {
                log::warn!("no output path: JSON report not written");
            }
            return Ok(());
        };
        fs::write(out, &self.csv).with_context(|| format!("writing {}", out.display()))?;
        if let Some(json) = &self.json {
            let path = out.with_extension("json");
            fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
        }
        let timing = timing_path(out);
        fs::write(&timing, self.timing_csv()?).with_context(|| format!("writing {}", timing.display()))?;
        Ok(())
    }
}

pub fn timing_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".timing.csv");
    PathBuf::from(name)
}
