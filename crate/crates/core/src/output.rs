//! CSV formatting and atomic file writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Twelve significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Renders equal-length columns as CSV text with a header row.
pub fn render_csv(headers: &[&str], columns: &[&[f64]]) -> String {
    debug_assert_eq!(headers.len(), columns.len());
    let rows = columns.first().map_or(0, |c| c.len());
    let mut out = String::with_capacity(rows * columns.len() * 20 + 64);
    out.push_str(&headers.join(","));
    out.push('\n');
    for r in 0..rows {
        for (i, col) in columns.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", format_value(col[r]));
        }
        out.push('\n');
    }
    out
}

/// Parses CSV text produced by [`render_csv`] back into a header and columns.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::invalid("csv", "empty input"))?
        .split(',')
        .map(str::to_owned)
        .collect();
    let mut columns = vec![Vec::new(); header.len()];
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(Error::invalid(
                "csv",
                format!("row {} has {} fields, expected {}", lineno + 1, fields.len(), header.len()),
            ));
        }
        for (col, field) in columns.iter_mut().zip(fields) {
            let v = field
                .parse()
                .map_err(|e| Error::invalid("csv", format!("row {}: {e}", lineno + 1)))?;
            col.push(v);
        }
    }
    Ok((header, columns))
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so the target either holds the full contents or is untouched.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_value(1.0), "1.00000000000e0");
        assert_eq!(format_value(-1.307_498_123_456_789e-4), "-1.30749812346e-4");
        assert_eq!(format_value(0.0), "0.00000000000e0");
    }

    #[test]
    fn render_and_parse() {
        let a = [1.0, 2.5, -3.0];
        let b = [1e-7, 0.0, 4.25e10];
        let text = render_csv(&["a", "b"], &[&a, &b]);
        assert!(text.starts_with("a,b\n"));
        let (h, cols) = parse_csv(&text).unwrap();
        assert_eq!(h, vec!["a", "b"]);
        assert_eq!(cols[0], a);
        assert_eq!(cols[1], b);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(parse_csv("a,b\n1,2\n3\n").is_err());
    }

    #[test]
    fn atomic_write_replaces_target() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
