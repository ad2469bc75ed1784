//! Focus measures for grayscale images, focus-stack curves, curve
//! diagnostics, autofocus search and per-metric timing.

mod filter;

pub mod bench;
pub mod cli;
pub mod imageio;
pub mod metrics;
pub mod search;
pub mod stack;
pub mod synth;

pub use imageio::{decode_image, GrayImage, ImageError, ImageFormat};
pub use metrics::{score, MetricConfig, MetricError, MetricId};
pub use stack::{best_focus, compute_curve, diagnose, CurveDiagnostics, FocusCurve, FocusStack};
