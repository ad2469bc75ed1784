use super::{check_threshold, require_size, MetricError, MetricId};
use crate::imageio::GrayImage;

/// Energy of image gradient: sum of squared forward differences along both
/// axes, over pixels where both differences exist.
pub fn eog(img: &GrayImage) -> Result<f64, MetricError> {
    require_size(img, MetricId::Eog, 2, 2)?;
    let w = img.width();
    let mut sum = 0.0;
    for r in 0..img.height() - 1 {
        let row = img.row(r);
        let next = img.row(r + 1);
        for c in 0..w - 1 {
            let fx = next[c] - row[c];
            let fy = row[c + 1] - row[c];
            sum += fx * fx + fy * fy;
        }
    }
    Ok(sum)
}

/// Tenengrad: sum of squared 3x3 Sobel gradient magnitudes over interior
/// pixels whose magnitude is strictly above `threshold`.
pub fn tenengrad(img: &GrayImage, threshold: f64) -> Result<f64, MetricError> {
    check_threshold("tenengrad threshold", threshold)?;
    require_size(img, MetricId::Tenengrad, 3, 3)?;
    let w = img.width();
    let mut sum = 0.0;
    for r in 1..img.height() - 1 {
        let (up, mid, down) = (img.row(r - 1), img.row(r), img.row(r + 1));
        for c in 1..w - 1 {
            // derivative across rows
            let gx =
                (down[c - 1] + 2.0 * down[c] + down[c + 1]) - (up[c - 1] + 2.0 * up[c] + up[c + 1]);
            // derivative across columns
            let gy = (up[c + 1] + 2.0 * mid[c + 1] + down[c + 1])
                - (up[c - 1] + 2.0 * mid[c - 1] + down[c - 1]);
            let energy = gx * gx + gy * gy;
            if energy.sqrt() > threshold {
                sum += energy;
            }
        }
    }
    Ok(sum)
}
