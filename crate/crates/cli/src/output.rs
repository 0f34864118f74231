//! Deterministic output: CSV with a `#` metadata line, JSON, or stdout.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::{Failure, EXIT_DATA};

/// `# hdc <version> <subcommand> --flag value ...`, in the given flag order.
pub fn metadata_line(subcommand: &str, flags: &[(&str, String)]) -> String {
    let mut line = format!("# hdc {} {}", env!("CARGO_PKG_VERSION"), subcommand);
    for (name, value) in flags {
        line.push_str(&format!(" --{name} {value}"));
    }
    line
}

/// Fails with a usage error when `path` would land in a missing directory.
pub fn check_parent(path: &Path) -> Result<(), Failure> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(Failure::usage(format!(
            "output directory {} does not exist",
            dir.display()
        ))),
        _ => Ok(()),
    }
}

/// Renders a CSV document preceded by the metadata comment.
pub fn render_csv(meta: &str, header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    writeln!(buf, "{meta}").expect("writing to a Vec cannot fail");
    let mut w = csv::Writer::from_writer(buf);
    let internal = |e: csv::Error| Failure {
        code: crate::EXIT_INTERNAL,
        message: e.to_string(),
    };
    w.write_record(header).map_err(internal)?;
    for row in rows {
        w.write_record(row).map_err(internal)?;
    }
    w.into_inner().map_err(|e| Failure {
        code: crate::EXIT_INTERNAL,
        message: e.to_string(),
    })
}

/// Writes `bytes` to `out`, or to standard output when `out` is `None`.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure {
            code: EXIT_DATA,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => std::io::stdout().write_all(bytes).map_err(|e| Failure {
            code: EXIT_DATA,
            message: format!("cannot write to standard output: {e}"),
        }),
    }
}

/// `runs/metrics.json` → `runs/metrics.confusion.csv`.
pub fn confusion_path(metrics: &Path) -> PathBuf {
    let stem = metrics
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    metrics.with_file_name(format!("{stem}.confusion.csv"))
}

/// Shortest round-trip decimal form, so equal floats print identically.
pub fn float(x: f64) -> String {
    format!("{x}")
}
