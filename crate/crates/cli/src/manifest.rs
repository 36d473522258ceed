use std::io;
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::Cli;

/// Record of one invocation: what ran, with which resolved parameters, and
/// what it wrote.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: Vec<String>,
    pub parameters: Map<String, Value>,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub jobs: Option<usize>,
    pub started: String,
    pub finished: String,
    pub outputs: Vec<String>,
    pub exit_code: u8,
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

impl Manifest {
    pub fn start(cli: &Cli) -> Self {
        let argv: Vec<String> = std::env::args().collect();
        let command = cli.command.name().to_string();
        Manifest {
            command,
            argv,
            inputs: Vec::new(),
            parameters: Map::new(),
            seed: None,
            version: env!("CARGO_PKG_VERSION"),
            jobs: cli.jobs,
            started: now(),
            finished: String::new(),
            outputs: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn input(&mut self, p: &Path) {
        self.inputs.push(p.display().to_string());
    }

    pub fn output(&mut self, p: &Path) {
        self.outputs.push(p.display().to_string());
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
    }

    pub fn finish(mut self, explicit: Option<&Path>) -> io::Result<()> {
        self.finished = now();
        let text = serde_json::to_string_pretty(&self).map_err(io::Error::other)? + "\n";
        let target: Option<PathBuf> = explicit
            .map(Path::to_path_buf)
            .or_else(|| self.outputs.first().map(|o| PathBuf::from(format!("{o}.manifest.json"))));
        match target {
            Some(p) => std::fs::write(p, text),
            None => {
                eprint!("{text}");
                Ok(())
            }
        }
    }
}
