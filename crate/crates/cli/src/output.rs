//! File output.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::{CliError, Result};

pub use haarqmc::estimator::format_float;

/// Writes `contents` next to `path` and renames it into place, so readers
/// never see a half-written file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    let mut file = fs::File::create(&tmp).map_err(io)?;
    file.write_all(contents.as_bytes()).map_err(io)?;
    file.sync_all().map_err(io)?;
    drop(file);
    fs::rename(&tmp, path).map_err(io)
}

/// Joins already formatted fields into one CSV line.
pub fn csv_line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut line = fields.into_iter().fold(String::new(), |mut acc, f| {
        if !acc.is_empty() {
            acc.push(',');
        }
        acc.push_str(f.as_ref());
        acc
    });
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.csv");
        write_atomic(&path, "x\n").unwrap();
        write_atomic(&path, "y\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "y\n");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn csv_fields() {
        assert_eq!(csv_line(["a", "b"]), "a,b\n");
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
    }
}
