//! Synthetic focus stacks with a known in-focus position.
//!
//! A scene is rendered once and then defocused with a Gaussian whose sigma
//! grows linearly with the lens distance from the true focus. Random scenes
//! use ChaCha8 seeded from the scene seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::filter;
use crate::imageio::GrayImage;
use crate::stack::FocusStack;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("scene must be at least 16x16, got {width}x{height}")]
    SceneTooSmall { width: usize, height: usize },
    #[error("checkerboard cell must be at least 1 pixel")]
    BadCell,
    #[error("stack needs at least 3 positions, got {0}")]
    TooFewPositions(usize),
    #[error("true focus index {index} outside 0..{positions}")]
    FocusOutOfRange { index: usize, positions: usize },
    #[error("{name} must be finite and positive, got {value}")]
    BadParameter { name: &'static str, value: f64 },
    #[error("blur sigma must be finite and non-negative, got {0}")]
    BadSigma(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneKind {
    /// Alternating 0/255 squares of `cell` pixels.
    Checkerboard { cell: usize },
    /// Independent uniform integer samples in 0..=255.
    RandomTexture { seed: u64 },
    /// Smooth ramp plus a few soft blobs: little edge content.
    LowDetail { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SceneSpec {
    pub kind: SceneKind,
    pub width: usize,
    pub height: usize,
}

impl SceneSpec {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.width < 16 || self.height < 16 {
            return Err(SynthError::SceneTooSmall {
                width: self.width,
                height: self.height,
            });
        }
        if let SceneKind::Checkerboard { cell: 0 } = self.kind {
            return Err(SynthError::BadCell);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackSpec {
    pub scene: SceneSpec,
    pub n_positions: usize,
    pub true_focus_index: usize,
    /// Millimetres between neighbouring lens positions.
    pub position_step: f64,
    /// Gaussian sigma (pixels) per millimetre of defocus.
    pub blur_rate: f64,
}

impl StackSpec {
    /// 96 positions 1 mm apart, 160x120 pixels, focus at index 40, sigma 0.15 px/mm.
    pub fn desk(kind: SceneKind) -> Self {
        Self {
            scene: SceneSpec {
                kind,
                width: 160,
                height: 120,
            },
            n_positions: 96,
            true_focus_index: 40,
            position_step: 1.0,
            blur_rate: 0.15,
        }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        self.scene.validate()?;
        if self.n_positions < 3 {
            return Err(SynthError::TooFewPositions(self.n_positions));
        }
        if self.true_focus_index >= self.n_positions {
            return Err(SynthError::FocusOutOfRange {
                index: self.true_focus_index,
                positions: self.n_positions,
            });
        }
        for (name, value) in [
            ("position step", self.position_step),
            ("blur rate", self.blur_rate),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(SynthError::BadParameter { name, value });
            }
        }
        Ok(())
    }

    pub fn position(&self, index: usize) -> f64 {
        index as f64 * self.position_step
    }

    /// Defocus sigma of the image at `index`.
    pub fn sigma_at(&self, index: usize) -> f64 {
        self.blur_rate * index.abs_diff(self.true_focus_index) as f64 * self.position_step
    }
}

pub fn generate_scene(spec: &SceneSpec) -> Result<GrayImage, SynthError> {
    spec.validate()?;
    let (w, h) = (spec.width, spec.height);
    let img = match spec.kind {
        SceneKind::Checkerboard { cell } => GrayImage::from_fn(w, h, |r, c| {
            if (r / cell + c / cell) % 2 == 0 {
                0.0
            } else {
                255.0
            }
        }),
        SceneKind::RandomTexture { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples = (0..w * h)
                .map(|_| f64::from(rng.gen_range(0u8..=255)))
                .collect();
            GrayImage::new(w, h, samples)
        }
        SceneKind::LowDetail { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let short = w.min(h) as f64;
            let blobs: Vec<(f64, f64, f64, f64)> = (0..rng.gen_range(2..=5))
                .map(|_| {
                    (
                        rng.gen_range(0.0..h as f64),
                        rng.gen_range(0.0..w as f64),
                        rng.gen_range(short / 10.0..short / 5.0),
                        rng.gen_range(-40.0..60.0),
                    )
                })
                .collect();
            GrayImage::from_fn(w, h, |r, c| {
                let (rf, cf) = (r as f64, c as f64);
                let ramp = 60.0 + 80.0 * cf / (w - 1) as f64 + 40.0 * rf / (h - 1) as f64;
                let bumps: f64 = blobs
                    .iter()
                    .map(|&(br, bc, s, a)| {
                        let d2 = (rf - br).powi(2) + (cf - bc).powi(2);
                        a * (-d2 / (2.0 * s * s)).exp()
                    })
                    .sum();
                ramp + bumps
            })
        }
    };
    Ok(img.expect("generated samples are clamped into range"))
}

/// Normalised Gaussian taps of radius `ceil(3 sigma)`; `sigma` must be positive.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as isize;
    let mut taps: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= total);
    taps
}

/// Separable Gaussian blur with edge-replicate borders. `sigma == 0` is the identity.
pub fn gaussian_blur(img: &GrayImage, sigma: f64) -> Result<GrayImage, SynthError> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(SynthError::BadSigma(sigma));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let kernel = gaussian_kernel(sigma);
    let rows = filter::along_rows(img.samples(), img.width(), &kernel);
    let both = filter::along_columns(&rows, img.width(), &kernel);
    let samples = both.into_iter().map(|v| v.clamp(0.0, 255.0)).collect();
    Ok(GrayImage::new(img.width(), img.height(), samples).expect("blur preserves shape and range"))
}

pub fn generate_stack(spec: &StackSpec) -> Result<FocusStack, SynthError> {
    spec.validate()?;
    let scene = generate_scene(&spec.scene)?;
    let entries = (0..spec.n_positions)
        .into_par_iter()
        .map(|i| Ok((spec.position(i), gaussian_blur(&scene, spec.sigma_at(i))?)))
        .collect::<Result<Vec<_>, SynthError>>()?;
    Ok(FocusStack::new(entries).expect("synthetic stacks satisfy stack invariants"))
}
