//! Full-reference quality metrics: MSE, PSNR and single-scale SSIM.
//!
//! SSIM follows the usual parameterization: an 11x11 Gaussian window with
//! sigma 1.5, `K1 = 0.01`, `K2 = 0.03`, dynamic range 255. Local statistics
//! are computed for every pixel with half-sample symmetric padding at the
//! borders, so the SSIM map has the same size as the image; the score is
//! the mean of that map.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::image::GrayImage;

pub const PEAK: f64 = 255.0;
pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

/// `(K1 * L)^2`
pub const SSIM_C1: f64 = (SSIM_K1 * PEAK) * (SSIM_K1 * PEAK);
/// `(K2 * L)^2`
pub const SSIM_C2: f64 = (SSIM_K2 * PEAK) * (SSIM_K2 * PEAK);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityScores {
    pub mse: f64,
    /// `+inf` when the images are identical.
    pub psnr: f64,
    pub ssim: f64,
}

impl QualityScores {
    /// Scores `test` against `reference`.
    pub fn compute(test: &GrayImage, reference: &GrayImage) -> Result<Self, Error> {
        let mse = mse(test, reference)?;
        Ok(Self {
            mse,
            psnr: psnr_from_mse(mse),
            ssim: ssim(test, reference)?,
        })
    }
}

fn check_dims(a: &GrayImage, b: &GrayImage) -> Result<(), Error> {
    if a.dimensions() != b.dimensions() {
        return Err(Error::DimensionMismatch {
            left: a.dimensions(),
            right: b.dimensions(),
        });
    }
    Ok(())
}

pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64, Error> {
    check_dims(a, b)?;
    // Exact in integers up to ~2^64 / 65025 pixels.
    let total: u64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| {
            let d = x.abs_diff(y) as u64;
            d * d
        })
        .sum();
    Ok(total as f64 / a.samples().len() as f64)
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * libm::log10(PEAK * PEAK / mse)
    }
}

pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64, Error> {
    mse(a, b).map(psnr_from_mse)
}

/// 2-D Gaussian window of odd `size`, normalized to sum to one.
pub fn gaussian_window(size: usize, sigma: f64) -> Result<Vec<f64>, Error> {
    if size.is_multiple_of(2) {
        return Err(Error::EvenWindow(size));
    }
    let r = (size / 2) as f64;
    let mut w = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let (y, x) = (i as f64 - r, j as f64 - r);
            w.push(libm::exp(-(x * x + y * y) / (2.0 * sigma * sigma)));
        }
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    Ok(w)
}

/// Normalized 1-D Gaussian; its outer product with itself is
/// [`gaussian_window`].
pub fn gaussian_kernel_1d(size: usize, sigma: f64) -> Result<Vec<f64>, Error> {
    if size.is_multiple_of(2) {
        return Err(Error::EvenWindow(size));
    }
    let r = (size / 2) as f64;
    let mut k: Vec<f64> = (0..size)
        .map(|i| {
            let x = i as f64 - r;
            libm::exp(-(x * x) / (2.0 * sigma * sigma))
        })
        .collect();
    let total: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= total);
    Ok(k)
}

/// Half-sample symmetric reflection: `-1 -> 0`, `n -> n - 1`.
#[inline]
fn reflect(i: isize, n: usize) -> usize {
    let n = n as isize;
    let j = if i < 0 {
        -i - 1
    } else if i >= n {
        2 * n - i - 1
    } else {
        i
    };
    j as usize
}

/// Separable filtering of a `width x height` plane.
fn blur(src: &[f64], width: usize, height: usize, kernel: &[f64], scratch: &mut [f64], out: &mut [f64]) {
    let r = (kernel.len() / 2) as isize;
    for y in 0..height {
        let row = &src[y * width..(y + 1) * width];
        for x in 0..width {
            let mut acc = 0.0;
            for (k, &w) in kernel.iter().enumerate() {
                acc += w * row[reflect(x as isize + k as isize - r, width)];
            }
            scratch[y * width + x] = acc;
        }
    }
    for y in 0..height {
        let dst = &mut out[y * width..(y + 1) * width];
        dst.iter_mut().for_each(|v| *v = 0.0);
        for (k, &w) in kernel.iter().enumerate() {
            let sy = reflect(y as isize + k as isize - r, height);
            let srow = &scratch[sy * width..(sy + 1) * width];
            for (d, &s) in dst.iter_mut().zip(srow) {
                *d += w * s;
            }
        }
    }
}

/// Mean SSIM between two images of equal size, each side at least 11 px.
pub fn ssim(a: &GrayImage, b: &GrayImage) -> Result<f64, Error> {
    check_dims(a, b)?;
    let (w, h) = a.dimensions();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::TooSmall { min: SSIM_WINDOW });
    }
    let kernel = gaussian_kernel_1d(SSIM_WINDOW, SSIM_SIGMA)?;
    let n = w * h;

    let xa: Vec<f64> = a.samples().iter().map(|&v| v as f64).collect();
    let xb: Vec<f64> = b.samples().iter().map(|&v| v as f64).collect();
    let mut scratch = vec![0.0; n];
    let mut stat = |input: &[f64]| {
        let mut out = vec![0.0; n];
        blur(input, w, h, &kernel, &mut scratch, &mut out);
        out
    };
    let mu_a = stat(&xa);
    let mu_b = stat(&xb);
    let aa = stat(&xa.iter().map(|v| v * v).collect::<Vec<_>>());
    let bb = stat(&xb.iter().map(|v| v * v).collect::<Vec<_>>());
    let ab = stat(&xa.iter().zip(&xb).map(|(x, y)| x * y).collect::<Vec<_>>());

    let mut total = 0.0;
    for i in 0..n {
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let var_a = aa[i] - ma * ma;
        let var_b = bb[i] - mb * mb;
        let cov = ab[i] - ma * mb;
        let num = (2.0 * ma * mb + SSIM_C1) * (2.0 * cov + SSIM_C2);
        let den = (ma * ma + mb * mb + SSIM_C1) * (var_a + var_b + SSIM_C2);
        total += num / den;
    }
    Ok((total / n as f64).clamp(-1.0, 1.0))
}
