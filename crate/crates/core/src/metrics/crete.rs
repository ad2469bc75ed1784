//! No-reference perceptual blur estimate, reported as sharpness.
//!
//! The image is re-blurred with 9-tap averaging filters along each axis.
//! Neighbour differences that survive the re-blur indicate the original
//! was sharp; the ratio of lost variation to total variation is the blur
//! index of that axis, and the returned sharpness is `1 - max(blur_v, blur_h)`.

use super::MetricConfig;
use crate::filter;
use crate::imageio::GrayImage;

/// Sum of neighbour differences and of the variation kept by the original
/// relative to its blurred copy, along one axis.
struct AxisSums {
    variation: f64,
    kept: f64,
}

impl AxisSums {
    fn blur_index(&self) -> Option<f64> {
        (self.variation > 0.0).then(|| (self.variation - self.kept) / self.variation)
    }
}

fn axis_sums(
    orig: &[f64],
    blurred: &[f64],
    offset: usize,
    pairs: impl Iterator<Item = usize>,
) -> AxisSums {
    let mut sums = AxisSums {
        variation: 0.0,
        kept: 0.0,
    };
    for i in pairs {
        let d_orig = (orig[i] - orig[i - offset]).abs();
        let d_blur = (blurred[i] - blurred[i - offset]).abs();
        sums.variation += d_orig;
        sums.kept += (d_orig - d_blur).max(0.0);
    }
    sums
}

/// Sharpness in `[0, 1]`; 1 is sharp. Returns 0 when either axis has no
/// variation at all (including single-row or single-column images).
pub fn crete_sharpness(img: &GrayImage) -> f64 {
    let (w, h) = img.dims();
    let px = img.samples();
    let kernel = [1.0 / MetricConfig::CRETE_FILTER_LEN as f64; MetricConfig::CRETE_FILTER_LEN];

    // "vertical": along the row index
    let blurred_v = filter::along_columns(px, w, &kernel);
    let vertical = axis_sums(px, &blurred_v, w, w..w * h);

    let blurred_h = filter::along_rows(px, w, &kernel);
    let horizontal = axis_sums(
        px,
        &blurred_h,
        1,
        (0..h).flat_map(|r| (r * w + 1)..(r * w + w)),
    );

    match (vertical.blur_index(), horizontal.blur_index()) {
        (Some(bv), Some(bh)) => 1.0 - bv.max(bh),
        _ => 0.0,
    }
}
