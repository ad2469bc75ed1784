//! Wall-clock cost of each focus measure on a single image.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::imageio::GrayImage;
use crate::metrics::{self, MetricConfig, MetricError, MetricId};

pub const WARMUP_RUNS: usize = 3;
pub const DEFAULT_REPETITIONS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct TimingReport {
    pub metric: MetricId,
    pub image_dims: (usize, usize),
    pub repetitions: usize,
    pub median: Duration,
    pub min: Duration,
    pub mean: Duration,
    /// Score from the last timed run.
    pub checksum: f64,
}

impl TimingReport {
    pub const CSV_HEADER: &'static str = "metric,width,height,reps,min_us,median_us,mean_us";

    pub fn csv_row(&self) -> String {
        let us = |d: Duration| d.as_secs_f64() * 1e6;
        format!(
            "{},{},{},{},{:.3},{:.3},{:.3}",
            self.metric,
            self.image_dims.0,
            self.image_dims.1,
            self.repetitions,
            us(self.min),
            us(self.median),
            us(self.mean)
        )
    }
}

fn median(sorted: &[Duration]) -> Duration {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2
    }
}

/// Runs `metric` `WARMUP_RUNS` times untimed, then `repetitions` timed runs.
pub fn time_metric(
    img: &GrayImage,
    metric: MetricId,
    config: &MetricConfig,
    repetitions: usize,
) -> Result<TimingReport, MetricError> {
    let repetitions = repetitions.max(1);
    for _ in 0..WARMUP_RUNS {
        black_box(metrics::score(black_box(img), metric, config)?);
    }
    let mut samples = Vec::with_capacity(repetitions);
    let mut checksum = 0.0;
    for _ in 0..repetitions {
        let start = Instant::now();
        checksum = black_box(metrics::score(black_box(img), metric, config)?);
        samples.push(start.elapsed());
    }
    let total: Duration = samples.iter().sum();
    samples.sort_unstable();
    Ok(TimingReport {
        metric,
        image_dims: img.dims(),
        repetitions,
        median: median(&samples),
        min: samples[0],
        mean: total / repetitions as u32,
        checksum,
    })
}

/// Times every metric in `MetricId::ALL` order, one after another.
pub fn time_all(
    img: &GrayImage,
    config: &MetricConfig,
    repetitions: usize,
) -> Result<Vec<TimingReport>, MetricError> {
    MetricId::ALL
        .into_iter()
        .map(|m| time_metric(img, m, config, repetitions))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texture() -> GrayImage {
        GrayImage::from_fn(40, 30, |r, c| ((r * 131 + c * 71) % 256) as f64).unwrap()
    }

    #[test]
    fn single_repetition_collapses_statistics() {
        let r = time_metric(&texture(), MetricId::Eog, &MetricConfig::default(), 1).unwrap();
        assert_eq!(r.repetitions, 1);
        assert_eq!(r.min, r.median);
        assert_eq!(r.min, r.mean);
    }

    #[test]
    fn checksum_matches_plain_call() {
        let img = texture();
        let cfg = MetricConfig::default();
        for m in MetricId::ALL {
            let r = time_metric(&img, m, &cfg, 3).unwrap();
            assert_eq!(
                r.checksum.to_bits(),
                metrics::score(&img, m, &cfg).unwrap().to_bits()
            );
            assert!(r.min <= r.median && r.min <= r.mean);
        }
    }

    #[test]
    fn median_even_count() {
        let d = |ms| Duration::from_millis(ms);
        assert_eq!(median(&[d(1), d(3)]), d(2));
        assert_eq!(median(&[d(1), d(2), d(9)]), d(2));
    }

    #[test]
    fn csv_row_shape() {
        let r = time_metric(&texture(), MetricId::Crete, &MetricConfig::default(), 2).unwrap();
        let row = r.csv_row();
        assert!(row.starts_with("crete,40,30,2,"));
        assert_eq!(
            row.split(',').count(),
            TimingReport::CSV_HEADER.split(',').count()
        );
    }

    #[test]
    fn errors_propagate() {
        let tiny = GrayImage::constant(2, 2, 0.0).unwrap();
        assert!(time_metric(&tiny, MetricId::Eol, &MetricConfig::default(), 5).is_err());
    }
}
