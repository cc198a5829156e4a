//! Deterministic file emission: fixed-precision CSV fields and atomic
//! write-then-rename so a failed run never leaves a partial file.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::CliError;

/// Format a value with 9 significant digits for CSV cells; exact zero prints
/// as plain `0`, and counters print as integers.
pub fn csv_num(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.fract() == 0.0 && x.abs() < 1e9 {
        format!("{x}")
    } else {
        format!("{x:.8e}")
    }
}

/// Write `content` to `path` atomically: the bytes land in `path.tmp` first
/// and are renamed into place only on success.
pub fn atomic_write(path: &Path, content: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.tmp", ext.to_string_lossy()),
        None => "tmp".to_string(),
    });
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(content)?;
        f.sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(())
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::usage(format!("cannot write {}: {e}", path.display()))
    })
}

/// Emit to the output path when given, otherwise to standard output.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => atomic_write(path, content.as_bytes()),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(value: &impl serde::Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::numeric(format!("json serialization failed: {e}")))
}
