//! Image decoding (PGM, BMP), stack manifests and curve CSV files.

mod bmp;
mod csv;
mod gray;
mod manifest;
mod pgm;

use thiserror::Error;

pub use self::csv::{parse_curve_csv, write_curve_csv, CsvError};
pub use self::gray::GrayImage;
pub use self::manifest::{read_manifest, write_manifest, ManifestEntry, ManifestError};
pub use self::pgm::encode_pgm;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ImageError {
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt image file: {0}")]
    CorruptFile(String),
    #[error("invalid image dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },
    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("sample {index} has value {value}, outside [0, 255]")]
    SampleOutOfRange { index: usize, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Pgm,
    Bmp,
}

impl ImageFormat {
    /// Guesses the format from the leading magic bytes.
    pub fn sniff(bytes: &[u8]) -> Option<Self> {
        match bytes {
            [b'B', b'M', ..] => Some(Self::Bmp),
            [b'P', _, ..] => Some(Self::Pgm),
            _ => None,
        }
    }
}

/// Decodes an 8-bit binary PGM or an uncompressed 8/24-bit BMP.
///
/// With a `format_hint` the bytes must carry that format's magic.
pub fn decode_image(
    bytes: &[u8],
    format_hint: Option<ImageFormat>,
) -> Result<GrayImage, ImageError> {
    let sniffed = ImageFormat::sniff(bytes);
    let format = match (format_hint, sniffed) {
        (Some(hint), Some(found)) if hint != found => {
            return Err(ImageError::UnsupportedFormat(format!(
                "expected {hint:?} data but found {found:?} magic"
            )))
        }
        (_, Some(found)) => found,
        (Some(_), None) | (None, None) => {
            if bytes.len() < 2 {
                return Err(ImageError::CorruptFile(
                    "file shorter than magic number".into(),
                ));
            }
            return Err(ImageError::UnsupportedFormat(
                "unrecognised magic number".into(),
            ));
        }
    };
    match format {
        ImageFormat::Pgm => pgm::decode_pgm(bytes),
        ImageFormat::Bmp => bmp::decode_bmp(bytes),
    }
}
