//! Binary (P5) PGM with maxval 255.

use super::{GrayImage, ImageError};

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, ImageError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImageError::CorruptFile(format!("missing PGM {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ImageError::CorruptFile(format!("PGM {what} out of range")))
    }
}

pub(super) fn decode_pgm(bytes: &[u8]) -> Result<GrayImage, ImageError> {
    match bytes.get(..2) {
        Some(b"P5") => {}
        Some([b'P', kind]) => {
            return Err(ImageError::UnsupportedFormat(format!(
                "netpbm variant P{} (only binary P5 is supported)",
                *kind as char
            )))
        }
        _ => return Err(ImageError::CorruptFile("missing PGM magic".into())),
    }
    let mut cur = HeaderCursor { bytes, pos: 2 };
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(ImageError::CorruptFile(format!(
            "PGM dimensions {width}x{height}"
        )));
    }
    if maxval != 255 {
        return Err(ImageError::UnsupportedFormat(format!(
            "PGM maxval {maxval} (only 255 is supported)"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(ImageError::CorruptFile("PGM header not terminated".into())),
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| ImageError::CorruptFile("PGM dimensions overflow".into()))?;
    let raster = bytes
        .get(cur.pos..)
        .and_then(|rest| rest.get(..count))
        .ok_or_else(|| {
            ImageError::CorruptFile(format!(
                "PGM raster truncated: need {count} bytes, have {}",
                bytes.len().saturating_sub(cur.pos)
            ))
        })?;
    GrayImage::new(
        width,
        height,
        raster.iter().map(|&b| f64::from(b)).collect(),
    )
}

/// Encodes as binary PGM, rounding each sample to the nearest integer.
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.samples().len());
    out.extend_from_slice(header.as_bytes());
    out.extend(
        img.samples()
            .iter()
            .map(|&v| v.round().clamp(0.0, 255.0) as u8),
    );
    out
}
