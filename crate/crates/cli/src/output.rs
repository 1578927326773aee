//! Deterministic output formatting and atomic file writes.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::CliResult;

/// Fixed 10-significant-digit scientific formatting: the one float format
/// used in every emitted file, so identical runs are byte-identical.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.9e}")
}

/// CSV line from already-formatted fields, `\n`-terminated.
pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

/// Writes via a temp file in the target directory plus rename, so an
/// interrupted run never leaves a partial file at the destination.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| {
        std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "output path has no file name",
        )
    })?;
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_ten_significant_digits() {
        assert_eq!(fmt_float(0.05), "5.000000000e-2");
        assert_eq!(fmt_float(1.0), "1.000000000e0");
        assert_eq!(fmt_float(-0.25), "-2.500000000e-1");
        assert_eq!(fmt_float(0.0), "0.000000000e0");
    }

    #[test]
    fn atomic_write_replaces_and_cleans_up() {
        let dir = std::env::temp_dir().join(format!("qkdsim-out-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let target = dir.join("out.csv");
        write_atomic(&target, b"one\n").unwrap();
        write_atomic(&target, b"two\n").unwrap();
        assert_eq!(fs::read(&target).unwrap(), b"two\n");
        let leftovers: Vec<_> = fs::read_dir(&dir)
            .unwrap()
            .filter(|e| {
                e.as_ref()
                    .unwrap()
                    .file_name()
                    .to_string_lossy()
                    .contains("tmp")
            })
            .collect();
        assert!(leftovers.is_empty());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn atomic_write_to_missing_dir_fails_without_partial_file() {
        let dir = std::env::temp_dir().join(format!("qkdsim-missing-{}", std::process::id()));
        let target = dir.join("out.csv");
        assert!(write_atomic(&target, b"x").is_err());
        assert!(!target.exists());
    }
}
