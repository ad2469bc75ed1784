use super::ImageError;

/// Row-major grayscale image with samples in `[0, 255]`.
///
/// Rows run along the first image axis (`x` in the focus-measure formulas),
/// columns along the second (`y`).
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    samples: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, samples: Vec<f64>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::InvalidDimensions { width, height });
        }
        let expected = width
            .checked_mul(height)
            .ok_or(ImageError::InvalidDimensions { width, height })?;
        if samples.len() != expected {
            return Err(ImageError::SampleCount {
                expected,
                got: samples.len(),
            });
        }
        if let Some(index) = samples
            .iter()
            .position(|v| !v.is_finite() || *v < 0.0 || *v > 255.0)
        {
            return Err(ImageError::SampleOutOfRange {
                index,
                value: samples[index],
            });
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    /// Image filled with a single value (clamped into `[0, 255]`).
    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self, ImageError> {
        let v = value.clamp(0.0, 255.0);
        Self::new(width, height, vec![v; width * height])
    }

    /// Builds an image by evaluating `f(row, col)`; results are clamped into `[0, 255]`.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, ImageError> {
        let mut samples = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                let v = f(r, c);
                samples.push(if v.is_nan() { v } else { v.clamp(0.0, 255.0) });
            }
        }
        Self::new(width, height, samples)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.samples[row * self.width + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.samples[row * self.width..(row + 1) * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.samples.chunks_exact(self.width)
    }

    /// Applies `f` to every sample, clamping the result into `[0, 255]`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|&v| f(v).clamp(0.0, 255.0))
            .collect();
        Self {
            width: self.width,
            height: self.height,
            samples,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            GrayImage::new(0, 3, vec![]),
            Err(ImageError::InvalidDimensions { .. })
        ));
        assert!(matches!(
            GrayImage::new(2, 2, vec![0.0; 3]),
            Err(ImageError::SampleCount {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(
            GrayImage::new(1, 2, vec![0.0, 256.0]),
            Err(ImageError::SampleOutOfRange { index: 1, .. })
        ));
        assert!(GrayImage::new(1, 1, vec![f64::NAN]).is_err());
    }

    #[test]
    fn row_major_layout() {
        let img = GrayImage::from_fn(3, 2, |r, c| (r * 10 + c) as f64).unwrap();
        assert_eq!(img.get(1, 2), 12.0);
        assert_eq!(img.row(1), &[10.0, 11.0, 12.0]);
        assert_eq!(img.rows().count(), 2);
    }
}
