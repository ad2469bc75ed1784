//! `position,score` curve files.

use thiserror::Error;

use crate::stack::FocusCurve;

const HEADER: &str = "position,score";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CsvError {
    #[error("curve has no points")]
    EmptyCurve,
    #[error("csv line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// Serialises a curve. Numbers use the shortest representation that parses
/// back to the identical `f64`, so the file is lossless.
pub fn write_curve_csv(curve: &FocusCurve) -> Result<String, CsvError> {
    if curve.is_empty() {
        return Err(CsvError::EmptyCurve);
    }
    let rows: Vec<String> = curve
        .points()
        .iter()
        .map(|p| format!("{},{}", p.position, p.score))
        .collect();
    Ok(format!("{HEADER}\n{}", rows.join("\n")))
}

/// Parses the output of [`write_curve_csv`] into `(position, score)` pairs.
pub fn parse_curve_csv(text: &str) -> Result<Vec<(f64, f64)>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        _ => {
            return Err(CsvError::Malformed {
                line: 1,
                reason: format!("expected header `{HEADER}`"),
            })
        }
    }
    let mut out = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: &str| CsvError::Malformed {
            line: idx + 1,
            reason: reason.to_string(),
        };
        let (p, s) = line
            .split_once(',')
            .ok_or_else(|| bad("expected two fields"))?;
        let p: f64 = p.trim().parse().map_err(|_| bad("invalid position"))?;
        let s: f64 = s.trim().parse().map_err(|_| bad("invalid score"))?;
        out.push((p, s));
    }
    if out.is_empty() {
        return Err(CsvError::EmptyCurve);
    }
    Ok(out)
}
