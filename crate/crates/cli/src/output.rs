//! Output plumbing: stdout-or-file writing, CSV field quoting, and the run
//! manifest emitted next to output files.

use std::path::Path;

use bigwreath_core::scalar::Backend;
use serde::Serialize;

/// Writes to the given path, or to stdout when none is given.
pub fn write_output(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// RFC-4180 quoting: fields containing commas or quotes get wrapped, quotes
/// doubled.
pub fn quote_csv(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Everything needed to reproduce a run: re-running the recorded command
/// reproduces outputs bit-exactly in the exact backend and RNG-exactly for
/// sampling commands.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub group_file: Option<String>,
    pub parameters: Option<String>,
    pub backend: String,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
    pub tool_version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        group_file: Option<String>,
        parameters: Option<String>,
        backend: Backend,
        seed: Option<u64>,
        stream: Option<u64>,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            group_file,
            parameters,
            backend: backend.to_string(),
            seed,
            stream,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    /// Writes `<out>.manifest.json`; with stdout output the manifest goes to
    /// `run.manifest.json` in the working directory.
    pub fn write_next_to(&self, out: Option<&Path>) -> std::io::Result<()> {
        let path = match out {
            Some(p) => {
                let mut name = p.file_name().unwrap_or_default().to_os_string();
                name.push(".manifest.json");
                p.with_file_name(name)
            }
            None => std::path::PathBuf::from("run.manifest.json"),
        };
        std::fs::write(
            path,
            serde_json::to_string_pretty(self).expect("serializable"),
        )
    }
}
