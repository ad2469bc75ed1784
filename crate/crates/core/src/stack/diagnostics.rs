use super::{FocusCurve, StackError};

/// Global maximum of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestFocus {
    pub position: f64,
    pub index: usize,
}

/// Shape statistics of a focus curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDiagnostics {
    /// Raw (unsmoothed) argmax.
    pub best_position: f64,
    pub best_index: usize,
    /// Local maxima of the smoothed curve; flat runs count once.
    pub local_maxima_count: usize,
    pub is_unimodal: bool,
    /// Smoothed peak over smoothed mean, 0 when the mean is 0.
    pub peak_sharpness_ratio: f64,
    /// Share of adjacent pairs left of the smoothed peak that do not decrease.
    pub left_monotone_fraction: f64,
    /// Share of adjacent pairs right of the smoothed peak that do not increase.
    pub right_monotone_fraction: f64,
}

/// Index of the first maximum.
pub(crate) fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v > values[b]) {
            best = Some(i);
        }
    }
    best
}

pub fn best_focus(curve: &FocusCurve) -> Result<BestFocus, StackError> {
    let scores = curve.scores();
    let index = argmax(&scores).ok_or(StackError::EmptyCurve)?;
    Ok(BestFocus {
        position: curve.points()[index].position,
        index,
    })
}

/// Centred moving average of odd `width`, replicating the end values.
pub fn smooth(values: &[f64], width: usize) -> Vec<f64> {
    let n = values.len() as isize;
    let half = (width / 2) as isize;
    (0..n)
        .map(|i| {
            let sum: f64 = (-half..=half)
                .map(|k| values[(i + k).clamp(0, n - 1) as usize])
                .sum();
            sum / width as f64
        })
        .collect()
}

/// Counts maximal runs of equal values whose neighbours on both sides are
/// strictly lower. The curve ends count as lower neighbours; a run covering
/// the whole sequence is not a maximum.
pub(crate) fn count_local_maxima(values: &[f64]) -> usize {
    let n = values.len();
    let mut count = 0;
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && values[end + 1] == values[start] {
            end += 1;
        }
        let left_lower = start == 0 || values[start - 1] < values[start];
        let right_lower = end == n - 1 || values[end + 1] < values[end];
        let whole = start == 0 && end == n - 1;
        if left_lower && right_lower && !whole {
            count += 1;
        }
        start = end + 1;
    }
    count
}

fn fraction(good: usize, total: usize) -> f64 {
    if total == 0 {
        1.0
    } else {
        good as f64 / total as f64
    }
}

pub fn diagnose(
    curve: &FocusCurve,
    smoothing_width: usize,
) -> Result<CurveDiagnostics, StackError> {
    let n = curve.len();
    if n < 3 {
        return Err(StackError::TooFewPoints(n));
    }
    if smoothing_width.is_multiple_of(2) || smoothing_width == 0 || smoothing_width > n {
        return Err(StackError::BadSmoothingWidth {
            width: smoothing_width,
            points: n,
        });
    }
    let best = best_focus(curve)?;
    let smoothed = smooth(&curve.scores(), smoothing_width);
    let local_maxima_count = count_local_maxima(&smoothed);

    let peak = argmax(&smoothed).expect("non-empty");
    let mean = smoothed.iter().sum::<f64>() / n as f64;
    let peak_sharpness_ratio = if mean == 0.0 {
        0.0
    } else {
        smoothed[peak] / mean
    };

    let rising = smoothed[..=peak]
        .windows(2)
        .filter(|w| w[1] >= w[0])
        .count();
    let falling = smoothed[peak..].windows(2).filter(|w| w[1] <= w[0]).count();

    Ok(CurveDiagnostics {
        best_position: best.position,
        best_index: best.index,
        local_maxima_count,
        is_unimodal: local_maxima_count == 1,
        peak_sharpness_ratio,
        left_monotone_fraction: fraction(rising, peak),
        right_monotone_fraction: fraction(falling, n - 1 - peak),
    })
}
