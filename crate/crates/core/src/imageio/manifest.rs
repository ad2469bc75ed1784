//! `position_mm,filename` stack manifests.

use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ManifestError {
    #[error("manifest line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("manifest line {line}: position {position} does not exceed the previous position {previous}")]
    NonIncreasingPositions {
        line: usize,
        previous: f64,
        position: f64,
    },
    #[error("manifest has no entries")]
    EmptyManifest,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub position_mm: f64,
    /// Image file resolved against the manifest's base directory.
    pub path: PathBuf,
}

/// Parses manifest text. Blank lines and lines starting with `#` are skipped;
/// filenames are resolved relative to `base_dir`.
pub fn read_manifest(text: &str, base_dir: &Path) -> Result<Vec<ManifestEntry>, ManifestError> {
    let mut entries: Vec<ManifestEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |reason: &str| ManifestError::MalformedLine {
            line: line_no,
            reason: reason.to_string(),
        };
        let (pos, file) = line
            .split_once(',')
            .ok_or_else(|| malformed("expected `position_mm,filename`"))?;
        let position_mm: f64 = pos
            .trim()
            .parse()
            .map_err(|_| malformed(&format!("invalid position {:?}", pos.trim())))?;
        if !position_mm.is_finite() {
            return Err(malformed("position must be finite"));
        }
        let file = file.trim();
        if file.is_empty() {
            return Err(malformed("missing filename"));
        }
        if let Some(prev) = entries.last() {
            if position_mm <= prev.position_mm {
                return Err(ManifestError::NonIncreasingPositions {
                    line: line_no,
                    previous: prev.position_mm,
                    position: position_mm,
                });
            }
        }
        entries.push(ManifestEntry {
            position_mm,
            path: base_dir.join(file),
        });
    }
    if entries.is_empty() {
        return Err(ManifestError::EmptyManifest);
    }
    Ok(entries)
}

/// Renders manifest text, one `position_mm,filename` line per entry.
pub fn write_manifest<'a>(entries: impl IntoIterator<Item = (f64, &'a str)>) -> String {
    let mut out = String::from("# position_mm,filename\n");
    for (pos, file) in entries {
        out.push_str(&format!("{pos},{file}\n"));
    }
    out
}
