//! Autofocus search over a stack that is probed one lens position at a time.

use thiserror::Error;

use crate::metrics::{MetricConfig, MetricId};
use crate::stack::{FocusStack, StackError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("coarse step {step} must be at least 2 and below the {positions} stack positions")]
    BadStep { step: usize, positions: usize },
    #[error(transparent)]
    Stack(#[from] StackError),
}

/// Record of which positions a search evaluated and what it picked.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrace {
    /// Indices in the order they were evaluated, without repeats.
    pub probed_indices: Vec<usize>,
    pub chosen_index: usize,
    pub chosen_position: f64,
    pub evaluations: usize,
}

/// Evaluates each index at most once and tracks the best score seen.
struct Prober<'a> {
    stack: &'a FocusStack,
    metric: MetricId,
    config: &'a MetricConfig,
    scores: Vec<Option<f64>>,
    order: Vec<usize>,
}

impl<'a> Prober<'a> {
    fn new(stack: &'a FocusStack, metric: MetricId, config: &'a MetricConfig) -> Self {
        Self {
            stack,
            metric,
            config,
            scores: vec![None; stack.len()],
            order: Vec::new(),
        }
    }

    fn probe(&mut self, index: usize) -> Result<f64, StackError> {
        if let Some(s) = self.scores[index] {
            return Ok(s);
        }
        let s = self.stack.score_at(index, self.metric, self.config)?;
        self.scores[index] = Some(s);
        self.order.push(index);
        Ok(s)
    }

    fn finish(self) -> SearchTrace {
        let mut chosen: Option<(usize, f64)> = None;
        for (i, s) in self.scores.iter().enumerate() {
            if let Some(s) = *s {
                if chosen.is_none_or(|(_, best)| s > best) {
                    chosen = Some((i, s));
                }
            }
        }
        let (chosen_index, _) = chosen.expect("at least one index probed");
        SearchTrace {
            evaluations: self.order.len(),
            probed_indices: self.order,
            chosen_index,
            chosen_position: self.stack.position(chosen_index),
        }
    }
}

/// Probes every position in order and picks the first maximum.
pub fn full_sweep(
    stack: &FocusStack,
    metric: MetricId,
    config: &MetricConfig,
) -> Result<SearchTrace, SearchError> {
    let mut prober = Prober::new(stack, metric, config);
    for i in 0..stack.len() {
        prober.probe(i)?;
    }
    Ok(prober.finish())
}

/// Two-phase search: probe every `coarse_step`-th index (plus the last),
/// then every index strictly between the coarse neighbours of the coarse
/// maximum.
///
/// When several coarse probes tie for the maximum, the indices between the
/// first and last tied probe are refined first. If one of them beats the
/// coarse maximum the peak lies there (for a unimodal curve) and the search
/// stops; otherwise the curve is flat between them and the gaps before the
/// first and after the last tied probe are refined as well.
pub fn coarse_to_fine(
    stack: &FocusStack,
    metric: MetricId,
    config: &MetricConfig,
    coarse_step: usize,
) -> Result<SearchTrace, SearchError> {
    let n = stack.len();
    if coarse_step < 2 || coarse_step >= n {
        return Err(SearchError::BadStep {
            step: coarse_step,
            positions: n,
        });
    }
    let mut grid: Vec<usize> = (0..n).step_by(coarse_step).collect();
    if grid.last() != Some(&(n - 1)) {
        grid.push(n - 1);
    }

    let mut prober = Prober::new(stack, metric, config);
    let mut coarse = Vec::with_capacity(grid.len());
    for &i in &grid {
        coarse.push(prober.probe(i)?);
    }
    let best = coarse.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let first = coarse
        .iter()
        .position(|&s| s == best)
        .expect("grid is non-empty");
    let last = coarse
        .iter()
        .rposition(|&s| s == best)
        .expect("grid is non-empty");

    let mut inner_best = f64::NEG_INFINITY;
    for i in grid[first] + 1..grid[last] {
        inner_best = inner_best.max(prober.probe(i)?);
    }
    if inner_best <= best {
        let lo = if first == 0 { 0 } else { grid[first - 1] + 1 };
        let hi = if last + 1 == grid.len() {
            n - 1
        } else {
            grid[last + 1] - 1
        };
        for i in (lo..grid[first]).chain(grid[last] + 1..=hi) {
            prober.probe(i)?;
        }
    }
    Ok(prober.finish())
}
