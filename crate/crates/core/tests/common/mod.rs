//! Naive reference implementations used as test oracles.
//!
//! These deliberately use plain index arithmetic and explicit kernels so
//! they share no code path with the library.

#![allow(dead_code)]

use focuskit::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn px(img: &GrayImage, x: usize, y: usize) -> f64 {
    img.samples()[x * img.width() + y]
}

pub fn random_image(rng: &mut ChaCha8Rng, width: usize, height: usize, max: f64) -> GrayImage {
    let samples = (0..width * height)
        .map(|_| rng.gen_range(0.0..=max))
        .collect();
    GrayImage::new(width, height, samples).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn variance(img: &GrayImage) -> f64 {
    let n = img.samples().len() as f64;
    let mean = img.samples().iter().sum::<f64>() / n;
    img.samples()
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / n
}

pub fn eog(img: &GrayImage) -> f64 {
    let (m, n) = (img.height(), img.width());
    let mut total = 0.0;
    for x in 0..m - 1 {
        for y in 0..n - 1 {
            let fx = px(img, x + 1, y) - px(img, x, y);
            let fy = px(img, x, y + 1) - px(img, x, y);
            total += fx.powi(2) + fy.powi(2);
        }
    }
    total
}

fn correlate3(img: &GrayImage, x: usize, y: usize, k: &[[f64; 3]; 3]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in k.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            acc += w * px(img, x + i - 1, y + j - 1);
        }
    }
    acc
}

pub const SOBEL_X: [[f64; 3]; 3] = [[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]];
pub const SOBEL_Y: [[f64; 3]; 3] = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];
pub const LAPLACIAN: [[f64; 3]; 3] = [[-1.0, -4.0, -1.0], [-4.0, 20.0, -4.0], [-1.0, -4.0, -1.0]];

pub fn tenengrad(img: &GrayImage, threshold: f64) -> f64 {
    let mut total = 0.0;
    for x in 1..img.height() - 1 {
        for y in 1..img.width() - 1 {
            let gx = correlate3(img, x, y, &SOBEL_X);
            let gy = correlate3(img, x, y, &SOBEL_Y);
            let mag = (gx * gx + gy * gy).sqrt();
            if mag > threshold {
                total += mag * mag;
            }
        }
    }
    total
}

pub fn eol(img: &GrayImage) -> f64 {
    let mut total = 0.0;
    for x in 1..img.height() - 1 {
        for y in 1..img.width() - 1 {
            total += correlate3(img, x, y, &LAPLACIAN).powi(2);
        }
    }
    total
}

pub fn sml(img: &GrayImage, threshold: f64, step: usize) -> f64 {
    let (m, n) = (img.height() as isize, img.width() as isize);
    let s = step as isize;
    let at = |x: isize, y: isize| px(img, x as usize, y as usize);
    let mut total = 0.0;
    for x in 0..m {
        for y in 0..n {
            if x - s < 0 || x + s >= m || y - s < 0 || y + s >= n {
                continue;
            }
            let ml = (2.0 * at(x, y) - at(x - s, y) - at(x + s, y)).abs()
                + (2.0 * at(x, y) - at(x, y - s) - at(x, y + s)).abs();
            if ml >= threshold {
                total += ml;
            }
        }
    }
    total
}

/// Crete sharpness with explicit clamp-indexed 9-tap means.
pub fn crete(img: &GrayImage) -> f64 {
    let (m, n) = (img.height() as isize, img.width() as isize);
    let at = |x: isize, y: isize| px(img, x.clamp(0, m - 1) as usize, y.clamp(0, n - 1) as usize);
    let bv = |x: isize, y: isize| (-4..=4).map(|k| at(x + k, y)).sum::<f64>() / 9.0;
    let bh = |x: isize, y: isize| (-4..=4).map(|k| at(x, y + k)).sum::<f64>() / 9.0;

    let (mut si_v, mut sv_v, mut si_h, mut sv_h) = (0.0, 0.0, 0.0, 0.0);
    for x in 1..m {
        for y in 0..n {
            let di = (at(x, y) - at(x - 1, y)).abs();
            let db = (bv(x, y) - bv(x - 1, y)).abs();
            si_v += di;
            sv_v += (di - db).max(0.0);
        }
    }
    for x in 0..m {
        for y in 1..n {
            let di = (at(x, y) - at(x, y - 1)).abs();
            let db = (bh(x, y) - bh(x, y - 1)).abs();
            si_h += di;
            sv_h += (di - db).max(0.0);
        }
    }
    if si_v == 0.0 || si_h == 0.0 {
        return 0.0;
    }
    let b_v = (si_v - sv_v) / si_v;
    let b_h = (si_h - sv_h) / si_h;
    1.0 - b_v.max(b_h)
}

/// Direct 2-D Gaussian evaluation at one pixel with clamp borders.
pub fn gaussian_at(img: &GrayImage, sigma: f64, x: usize, y: usize) -> f64 {
    let r = (3.0 * sigma).ceil() as isize;
    let (m, n) = (img.height() as isize, img.width() as isize);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in -r..=r {
        for j in -r..=r {
            let w = (-((i * i + j * j) as f64) / (2.0 * sigma * sigma)).exp();
            let xi = (x as isize + i).clamp(0, m - 1) as usize;
            let yj = (y as isize + j).clamp(0, n - 1) as usize;
            num += w * px(img, xi, yj);
            den += w;
        }
    }
    num / den
}
