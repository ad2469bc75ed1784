use super::{check_threshold, require_size, MetricError, MetricId};
use crate::imageio::GrayImage;

/// Energy of Laplacian using the 3x3 kernel
/// `[[-1, -4, -1], [-4, 20, -4], [-1, -4, -1]]` over interior pixels.
pub fn eol(img: &GrayImage) -> Result<f64, MetricError> {
    require_size(img, MetricId::Eol, 3, 3)?;
    let w = img.width();
    let mut sum = 0.0;
    for r in 1..img.height() - 1 {
        let (up, mid, down) = (img.row(r - 1), img.row(r), img.row(r + 1));
        for c in 1..w - 1 {
            let corners = up[c - 1] + up[c + 1] + down[c - 1] + down[c + 1];
            let edges = up[c] + down[c] + mid[c - 1] + mid[c + 1];
            let response = 20.0 * mid[c] - 4.0 * edges - corners;
            sum += response * response;
        }
    }
    Ok(sum)
}

/// Sum-modified Laplacian over the whole image.
///
/// At each pixel with all four `step`-offset neighbours inside the image,
/// `ML = |2I - I(up) - I(down)| + |2I - I(left) - I(right)|`; values with
/// `ML >= threshold` are summed.
pub fn sml(img: &GrayImage, threshold: f64, step: usize) -> Result<f64, MetricError> {
    if step < 1 {
        return Err(MetricError::InvalidStep(step));
    }
    check_threshold("sml threshold", threshold)?;
    let min = 2 * step + 1;
    require_size(img, MetricId::Sml, min, min)?;
    let w = img.width();
    let mut sum = 0.0;
    for r in step..img.height() - step {
        let (up, mid, down) = (img.row(r - step), img.row(r), img.row(r + step));
        for c in step..w - step {
            let twice = 2.0 * mid[c];
            let ml =
                (twice - up[c] - down[c]).abs() + (twice - mid[c - step] - mid[c + step]).abs();
            if ml >= threshold {
                sum += ml;
            }
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn center_impulse() -> GrayImage {
        GrayImage::new(3, 3, vec![0., 0., 0., 0., 1., 0., 0., 0., 0.]).unwrap()
    }

    #[test]
    fn eol_impulse() {
        assert_eq!(eol(&center_impulse()).unwrap(), 400.0);
    }

    #[test]
    fn eol_constant() {
        assert_eq!(
            eol(&GrayImage::constant(7, 5, 200.0).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn sml_impulse_only_center_is_valid() {
        assert_eq!(sml(&center_impulse(), 0.0, 1).unwrap(), 4.0);
        // inclusive threshold
        assert_eq!(sml(&center_impulse(), 4.0, 1).unwrap(), 4.0);
        assert_eq!(sml(&center_impulse(), 4.5, 1).unwrap(), 0.0);
    }

    #[test]
    fn sml_step_and_size_errors() {
        let img = GrayImage::constant(4, 4, 1.0).unwrap();
        assert_eq!(sml(&img, 0.0, 0), Err(MetricError::InvalidStep(0)));
        assert!(matches!(
            sml(&img, 0.0, 2),
            Err(MetricError::ImageTooSmall { .. })
        ));
        let five = GrayImage::constant(5, 5, 1.0).unwrap();
        assert_eq!(sml(&five, 0.0, 2).unwrap(), 0.0);
    }
}
