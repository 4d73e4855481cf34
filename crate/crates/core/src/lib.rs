//! Grayscale image resampling built around normalized geometric weights.
//!
//! Every destination pixel is reconstructed from the 2x2 block of source
//! pixels surrounding its mapped position. The block is split into four
//! rectangles ("tetragons") by the interpolation point; each corner is
//! weighted by a geometric area derived from the rectangle diagonally
//! opposite it:
//!
//! | tag | weight of a corner                                          |
//! |-----|-------------------------------------------------------------|
//! | TB  | area of the rectangle (ordinary bilinear)                   |
//! | MD  | circle whose diameter is the rectangle's shorter side       |
//! | HR  | circle whose radius is the rectangle's diagonal             |
//! | AT  | triangle: diagonal as base, corner intensity as height      |
//! | AC  | circle whose radius is the hypotenuse of (diagonal, intensity) |
//!
//! All but TB are normalized so the four weights sum to one. Nearest (TN)
//! and Keys bicubic (TC) baselines are provided behind the same
//! [`resize`] entry point, together with full-reference metrics in
//! [`metrics`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod downsample;
pub mod image;
pub mod interp;
pub mod metrics;
pub mod weights;

pub use crate::downsample::{downsample, Downsampler};
pub use crate::error::Error;
pub use crate::image::{to_gray, GrayImage, PixelCoord};
pub use crate::interp::{resize, Algorithm, Scheme};
pub use crate::metrics::QualityScores;
pub use crate::weights::{FracOffset, IntensityDomain, WeightVector};

/// Rounds half away from zero.
///
/// This is the single quantization rule used for every 8-bit output.
#[inline]
pub fn round_half_away(value: f64) -> f64 {
    libm::round(value)
}

/// Quantizes a reconstructed intensity to a sample.
#[inline]
pub fn quantize(value: f64) -> u8 {
    let rounded = round_half_away(value);
    if rounded <= 0.0 {
        0
    } else if rounded >= 255.0 {
        255
    } else {
        rounded as u8
    }
}
