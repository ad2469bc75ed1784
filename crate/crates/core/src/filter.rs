//! Separable 1-D filtering with edge-replicate borders.
//!
//! Kernels must be odd-length and sum to 1. Each output is computed as
//! `center + sum(w_k * (x_k - center))`, which is algebraically the weighted
//! sum but returns constant regions bit-exactly.

#[inline]
fn apply(line: &[f64], out: &mut [f64], kernel: &[f64]) {
    let n = line.len() as isize;
    let radius = (kernel.len() / 2) as isize;
    for (i, o) in out.iter_mut().enumerate() {
        let center = line[i];
        let mut acc = 0.0;
        for (k, &w) in kernel.iter().enumerate() {
            let j = (i as isize + k as isize - radius).clamp(0, n - 1) as usize;
            acc += w * (line[j] - center);
        }
        *o = center + acc;
    }
}

/// Filters along each row (across columns).
pub(crate) fn along_rows(samples: &[f64], width: usize, kernel: &[f64]) -> Vec<f64> {
    debug_assert_eq!(kernel.len() % 2, 1);
    let mut out = vec![0.0; samples.len()];
    for (src, dst) in samples.chunks_exact(width).zip(out.chunks_exact_mut(width)) {
        apply(src, dst, kernel);
    }
    out
}

/// Filters along each column (across rows).
pub(crate) fn along_columns(samples: &[f64], width: usize, kernel: &[f64]) -> Vec<f64> {
    debug_assert_eq!(kernel.len() % 2, 1);
    let height = samples.len() / width;
    let mut out = vec![0.0; samples.len()];
    let mut column = vec![0.0; height];
    let mut filtered = vec![0.0; height];
    for c in 0..width {
        for (r, v) in column.iter_mut().enumerate() {
            *v = samples[r * width + c];
        }
        apply(&column, &mut filtered, kernel);
        for (r, v) in filtered.iter().enumerate() {
            out[r * width + c] = *v;
        }
    }
    out
}
