//! Uncompressed Windows BMP (BITMAPINFOHEADER or later), 8-bit palette or 24-bit.

use super::{GrayImage, ImageError};

const FILE_HEADER_LEN: usize = 14;
const INFO_HEADER_LEN: usize = 40;

fn u16_at(bytes: &[u8], at: usize) -> Option<u16> {
    bytes
        .get(at..at + 2)
        .map(|b| u16::from_le_bytes([b[0], b[1]]))
}

fn u32_at(bytes: &[u8], at: usize) -> Option<u32> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
}

fn i32_at(bytes: &[u8], at: usize) -> Option<i32> {
    u32_at(bytes, at).map(|v| v as i32)
}

fn truncated(what: &str) -> ImageError {
    ImageError::CorruptFile(format!("BMP truncated in {what}"))
}

/// BT.601 luma. Integer weights keep gray and white inputs exact.
pub(super) fn luma(r: u8, g: u8, b: u8) -> f64 {
    let weighted = 299 * u32::from(r) + 587 * u32::from(g) + 114 * u32::from(b);
    (f64::from(weighted) / 1000.0).clamp(0.0, 255.0)
}

pub(super) fn decode_bmp(bytes: &[u8]) -> Result<GrayImage, ImageError> {
    if bytes.get(..2) != Some(b"BM") {
        return Err(ImageError::CorruptFile("missing BMP magic".into()));
    }
    let data_offset = u32_at(bytes, 10).ok_or_else(|| truncated("file header"))? as usize;
    let info_len = u32_at(bytes, FILE_HEADER_LEN).ok_or_else(|| truncated("info header"))? as usize;
    if info_len < INFO_HEADER_LEN {
        return Err(ImageError::UnsupportedFormat(format!(
            "BMP info header of {info_len} bytes (BITMAPINFOHEADER or later required)"
        )));
    }
    let h = FILE_HEADER_LEN;
    let raw_width = i32_at(bytes, h + 4).ok_or_else(|| truncated("info header"))?;
    let raw_height = i32_at(bytes, h + 8).ok_or_else(|| truncated("info header"))?;
    let bit_count = u16_at(bytes, h + 14).ok_or_else(|| truncated("info header"))?;
    let compression = u32_at(bytes, h + 16).ok_or_else(|| truncated("info header"))?;
    let colors_used = u32_at(bytes, h + 32).ok_or_else(|| truncated("info header"))?;

    if compression != 0 {
        return Err(ImageError::UnsupportedFormat(format!(
            "BMP compression {compression} (only uncompressed is supported)"
        )));
    }
    if raw_width <= 0 || raw_height == 0 {
        return Err(ImageError::CorruptFile(format!(
            "BMP dimensions {raw_width}x{raw_height}"
        )));
    }
    let width = raw_width as usize;
    // negative height marks a top-down raster
    let top_down = raw_height < 0;
    let height = raw_height.unsigned_abs() as usize;

    let palette: Option<Vec<f64>> = match bit_count {
        8 => {
            let entries = if colors_used == 0 {
                256
            } else {
                colors_used as usize
            };
            if entries > 256 {
                return Err(ImageError::CorruptFile(format!(
                    "BMP palette of {entries} entries"
                )));
            }
            let start = FILE_HEADER_LEN + info_len;
            let table = bytes
                .get(start..start + 4 * entries)
                .ok_or_else(|| truncated("palette"))?;
            Some(
                table
                    .chunks_exact(4)
                    .map(|bgrx| {
                        let (b, g, r) = (bgrx[0], bgrx[1], bgrx[2]);
                        if r == g && g == b {
                            f64::from(r)
                        } else {
                            luma(r, g, b)
                        }
                    })
                    .collect(),
            )
        }
        24 => None,
        other => {
            return Err(ImageError::UnsupportedFormat(format!(
                "BMP bit depth {other} (only 8 and 24 are supported)"
            )))
        }
    };

    let bytes_per_pixel = usize::from(bit_count / 8);
    let row_len = width
        .checked_mul(bytes_per_pixel)
        .ok_or_else(|| ImageError::CorruptFile("BMP dimensions overflow".into()))?;
    let stride = row_len.div_ceil(4) * 4;
    let needed = stride
        .checked_mul(height)
        .and_then(|n| n.checked_add(data_offset))
        .ok_or_else(|| ImageError::CorruptFile("BMP dimensions overflow".into()))?;
    if bytes.len() < needed {
        return Err(truncated("pixel data"));
    }

    let mut samples = vec![0.0; width * height];
    for file_row in 0..height {
        let src = &bytes[data_offset + file_row * stride..][..row_len];
        let out_row = if top_down {
            file_row
        } else {
            height - 1 - file_row
        };
        let dst = &mut samples[out_row * width..(out_row + 1) * width];
        match &palette {
            Some(table) => {
                for (d, &index) in dst.iter_mut().zip(src) {
                    *d = *table.get(usize::from(index)).ok_or_else(|| {
                        ImageError::CorruptFile(format!("BMP palette index {index} out of range"))
                    })?;
                }
            }
            None => {
                for (d, bgr) in dst.iter_mut().zip(src.chunks_exact(3)) {
                    *d = luma(bgr[2], bgr[1], bgr[0]);
                }
            }
        }
    }
    GrayImage::new(width, height, samples)
}
