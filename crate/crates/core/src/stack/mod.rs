//! Focus stacks, focus curves, peak finding and curve diagnostics.

mod diagnostics;
mod files;

use rayon::prelude::*;
use thiserror::Error;

use crate::imageio::GrayImage;
use crate::metrics::{self, MetricConfig, MetricError, MetricId};

pub use self::diagnostics::{best_focus, diagnose, smooth, BestFocus, CurveDiagnostics};
pub use self::files::{load_stack, save_stack, LoadError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StackError {
    #[error("a focus stack needs at least 2 images, got {0}")]
    TooFewEntries(usize),
    #[error("position {position} at index {index} is not finite")]
    NonFinitePosition { index: usize, position: f64 },
    #[error("positions must strictly increase (index {index})")]
    NonIncreasingPositions { index: usize },
    #[error("image {index} is {got:?}, expected {expected:?} like the first image")]
    DimensionMismatch {
        index: usize,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("scoring image {index}: {source}")]
    Metric {
        index: usize,
        #[source]
        source: MetricError,
    },
    #[error("score {score} at index {index} is not finite")]
    NonFiniteScore { index: usize, score: f64 },
    #[error("curve has no points")]
    EmptyCurve,
    #[error("diagnostics need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("smoothing width {width} must be odd and within 1..={points}")]
    BadSmoothingWidth { width: usize, points: usize },
}

fn check_positions(positions: impl Iterator<Item = f64>) -> Result<(), StackError> {
    let mut prev: Option<f64> = None;
    for (index, position) in positions.enumerate() {
        if !position.is_finite() {
            return Err(StackError::NonFinitePosition { index, position });
        }
        if prev.is_some_and(|p| position <= p) {
            return Err(StackError::NonIncreasingPositions { index });
        }
        prev = Some(position);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackEntry {
    /// Lens position in millimetres.
    pub position: f64,
    pub image: GrayImage,
}

/// Images of one scene at strictly increasing lens positions, all the same size.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusStack {
    entries: Vec<StackEntry>,
}

impl FocusStack {
    pub fn new(entries: Vec<(f64, GrayImage)>) -> Result<Self, StackError> {
        if entries.len() < 2 {
            return Err(StackError::TooFewEntries(entries.len()));
        }
        check_positions(entries.iter().map(|(p, _)| *p))?;
        let expected = entries[0].1.dims();
        if let Some((index, (_, img))) = entries
            .iter()
            .enumerate()
            .find(|(_, (_, img))| img.dims() != expected)
        {
            return Err(StackError::DimensionMismatch {
                index,
                expected,
                got: img.dims(),
            });
        }
        Ok(Self {
            entries: entries
                .into_iter()
                .map(|(position, image)| StackEntry { position, image })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[StackEntry] {
        &self.entries
    }

    pub fn position(&self, index: usize) -> f64 {
        self.entries[index].position
    }

    pub fn image(&self, index: usize) -> &GrayImage {
        &self.entries[index].image
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.position)
    }

    /// Width and height shared by every image.
    pub fn dims(&self) -> (usize, usize) {
        self.entries[0].image.dims()
    }

    /// Scores a single entry, annotating errors with its index.
    pub fn score_at(
        &self,
        index: usize,
        metric: MetricId,
        config: &MetricConfig,
    ) -> Result<f64, StackError> {
        let score = metrics::score(self.image(index), metric, config)
            .map_err(|source| StackError::Metric { index, source })?;
        if !score.is_finite() {
            return Err(StackError::NonFiniteScore { index, score });
        }
        Ok(score)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub position: f64,
    pub score: f64,
}

/// Focus score as a function of lens position for one metric.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusCurve {
    metric: MetricId,
    points: Vec<CurvePoint>,
}

impl FocusCurve {
    pub fn new(metric: MetricId, points: Vec<(f64, f64)>) -> Result<Self, StackError> {
        check_positions(points.iter().map(|(p, _)| *p))?;
        if let Some((index, &(_, score))) =
            points.iter().enumerate().find(|(_, (_, s))| !s.is_finite())
        {
            return Err(StackError::NonFiniteScore { index, score });
        }
        Ok(Self {
            metric,
            points: points
                .into_iter()
                .map(|(position, score)| CurvePoint { position, score })
                .collect(),
        })
    }

    pub fn metric(&self) -> MetricId {
        self.metric
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn scores(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.score).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Scores every image of the stack, in parallel, keeping stack order.
pub fn compute_curve(
    stack: &FocusStack,
    metric: MetricId,
    config: &MetricConfig,
) -> Result<FocusCurve, StackError> {
    compute_curve_with(stack, metric, config, Execution::Parallel)
}

pub fn compute_curve_with(
    stack: &FocusStack,
    metric: MetricId,
    config: &MetricConfig,
    execution: Execution,
) -> Result<FocusCurve, StackError> {
    let indices = 0..stack.len();
    let scores: Vec<f64> = match execution {
        Execution::Sequential => indices
            .map(|i| stack.score_at(i, metric, config))
            .collect::<Result<_, _>>()?,
        Execution::Parallel => indices
            .into_par_iter()
            .map(|i| stack.score_at(i, metric, config))
            .collect::<Result<_, _>>()?,
    };
    Ok(FocusCurve {
        metric,
        points: stack
            .positions()
            .zip(scores)
            .map(|(position, score)| CurvePoint { position, score })
            .collect(),
    })
}
