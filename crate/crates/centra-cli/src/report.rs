//! JSON report emitted by `maximize` and `bound`: the full flag echo (any
//! run is reproducible from the config block alone) plus the engine result.

use serde::Serialize;
use std::path::{Path, PathBuf};

use centra::engine::RunResult;

#[derive(Serialize)]
pub struct ConfigEcho {
    pub graph: PathBuf,
    pub directed: bool,
    pub k: usize,
    pub eps: Option<f64>,
    pub delta: f64,
    pub t: usize,
    pub variant: String,
    pub seed: u64,
    pub alpha: Option<f64>,
    pub m: Option<u64>,
    pub m_max: Option<u64>,
    pub m_first: Option<u64>,
    pub b: Option<u64>,
    pub c_star: Option<f64>,
    pub c_const: Option<f64>,
    pub threads: usize,
}

#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: ConfigEcho,
    pub result: RunResult,
}

impl Report {
    pub fn new(command: &'static str, config: ConfigEcho, result: RunResult) -> Self {
        Report {
            tool: "centra",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            result,
        }
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        let json = serde_json::to_string_pretty(self).expect("report serialization");
        std::fs::write(path, json)
    }
}
