//! Focus measures: scalar functions of an image that peak at best focus.
//!
//! Every measure is oriented so that a larger score means a sharper image.

mod crete;
mod gradient;
mod laplacian;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::imageio::GrayImage;

pub use self::crete::crete_sharpness;
pub use self::gradient::{eog, tenengrad};
pub use self::laplacian::{eol, sml};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("{metric} needs at least {min_width}x{min_height} pixels, image is {width}x{height}")]
    ImageTooSmall {
        metric: MetricId,
        width: usize,
        height: usize,
        min_width: usize,
        min_height: usize,
    },
    #[error("SML step must be at least 1, got {0}")]
    InvalidStep(usize),
    #[error("{name} must be finite and non-negative, got {value}")]
    InvalidThreshold { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricId {
    Variance,
    Eog,
    Tenengrad,
    Eol,
    Sml,
    Crete,
}

impl MetricId {
    pub const ALL: [MetricId; 6] = [
        MetricId::Variance,
        MetricId::Eog,
        MetricId::Tenengrad,
        MetricId::Eol,
        MetricId::Sml,
        MetricId::Crete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricId::Variance => "variance",
            MetricId::Eog => "eog",
            MetricId::Tenengrad => "tenengrad",
            MetricId::Eol => "eol",
            MetricId::Sml => "sml",
            MetricId::Crete => "crete",
        }
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown metric {0:?} (expected variance, eog, tenengrad, eol, sml or crete)")]
pub struct UnknownMetric(pub String);

impl FromStr for MetricId {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MetricId::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownMetric(s.to_string()))
    }
}

/// Free parameters of the focus measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricConfig {
    /// Tenengrad keeps pixels whose Sobel magnitude is strictly above this.
    pub tenengrad_threshold: f64,
    /// SML keeps modified-Laplacian values at or above this.
    pub sml_threshold: f64,
    /// Pixel spacing of the modified Laplacian.
    pub sml_step: usize,
}

impl MetricConfig {
    /// Length of the averaging filters used by the Crete re-blur.
    pub const CRETE_FILTER_LEN: usize = 9;

    pub fn validate(&self) -> Result<(), MetricError> {
        check_threshold("tenengrad threshold", self.tenengrad_threshold)?;
        check_threshold("sml threshold", self.sml_threshold)?;
        if self.sml_step < 1 {
            return Err(MetricError::InvalidStep(self.sml_step));
        }
        Ok(())
    }
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            tenengrad_threshold: 0.0,
            sml_threshold: 0.0,
            sml_step: 1,
        }
    }
}

fn check_threshold(name: &'static str, value: f64) -> Result<(), MetricError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(MetricError::InvalidThreshold { name, value })
    }
}

fn require_size(
    img: &GrayImage,
    metric: MetricId,
    min_width: usize,
    min_height: usize,
) -> Result<(), MetricError> {
    if img.width() < min_width || img.height() < min_height {
        return Err(MetricError::ImageTooSmall {
            metric,
            width: img.width(),
            height: img.height(),
            min_width,
            min_height,
        });
    }
    Ok(())
}

/// Population variance of all samples (single-pass Welford update).
pub fn variance(img: &GrayImage) -> f64 {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &x) in img.samples().iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    m2 / img.samples().len() as f64
}

/// Scores `img` with the selected measure.
pub fn score(img: &GrayImage, metric: MetricId, config: &MetricConfig) -> Result<f64, MetricError> {
    match metric {
        MetricId::Variance => Ok(variance(img)),
        MetricId::Eog => eog(img),
        MetricId::Tenengrad => tenengrad(img, config.tenengrad_threshold),
        MetricId::Eol => eol(img),
        MetricId::Sml => sml(img, config.sml_threshold, config.sml_step),
        MetricId::Crete => Ok(crete_sharpness(img)),
    }
}
