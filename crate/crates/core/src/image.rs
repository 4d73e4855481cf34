//! The 8-bit grayscale raster shared by every kernel.

use alloc::vec::Vec;

use crate::error::Error;

/// Single-channel 8-bit image, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    samples: Vec<u8>,
}

/// Integer grid position, always inside the image once produced by
/// [`GrayImage::clamp_coord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelCoord {
    pub col: usize,
    pub row: usize,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, samples: Vec<u8>) -> Result<Self, Error> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        let expected = width.checked_mul(height).ok_or(Error::EmptyImage)?;
        if samples.len() != expected {
            return Err(Error::SizeMismatch {
                expected,
                actual: samples.len(),
            });
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    /// Image filled with a single value.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self, Error> {
        Self::new(width, height, alloc::vec![value; width * height])
    }

    /// Builds an image by evaluating `f(col, row)` at every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self, Error> {
        let mut samples = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                samples.push(f(col, row));
            }
        }
        Self::new(width, height, samples)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<u8> {
        self.samples
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[u8] {
        &self.samples[row * self.width..(row + 1) * self.width]
    }

    /// Direct access; panics when out of range.
    #[inline]
    pub fn get(&self, col: usize, row: usize) -> u8 {
        assert!(col < self.width && row < self.height);
        self.samples[row * self.width + col]
    }

    #[inline]
    pub fn clamp_coord(&self, col: i64, row: i64) -> PixelCoord {
        PixelCoord {
            col: clamp_index(col, self.width),
            row: clamp_index(row, self.height),
        }
    }

    /// Sample at `(col, row)` with replicate-edge boundary handling.
    #[inline]
    pub fn get_clamped(&self, col: i64, row: i64) -> u8 {
        let p = self.clamp_coord(col, row);
        self.samples[p.row * self.width + p.col]
    }

    /// True when every sample holds the same value.
    pub fn is_constant(&self) -> bool {
        let first = self.samples[0];
        self.samples.iter().all(|&s| s == first)
    }
}

#[inline]
pub(crate) fn clamp_index(index: i64, len: usize) -> usize {
    if index <= 0 {
        0
    } else if index as u64 >= len as u64 {
        len - 1
    } else {
        index as usize
    }
}

/// Converts interleaved 8-bit RGB to gray with Rec.601 luma.
pub fn to_gray(rgb: &[u8], width: usize, height: usize) -> Result<GrayImage, Error> {
    let expected = width * height * 3;
    if rgb.len() != expected {
        return Err(Error::SizeMismatch {
            expected,
            actual: rgb.len(),
        });
    }
    let samples = rgb
        .chunks_exact(3)
        .map(|px| {
            crate::quantize(0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64)
        })
        .collect();
    GrayImage::new(width, height, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(GrayImage::new(0, 3, vec![]), Err(Error::EmptyImage));
        assert_eq!(
            GrayImage::new(2, 2, vec![1, 2, 3]),
            Err(Error::SizeMismatch {
                expected: 4,
                actual: 3
            })
        );
    }

    #[test]
    fn clamped_access() {
        let img = GrayImage::new(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(img.get_clamped(1, 1), 5);
        assert_eq!(img.get_clamped(-1, 0), 1);
        assert_eq!(img.get_clamped(3, 0), 3);
        assert_eq!(img.get_clamped(i64::MIN, i64::MAX), 4);
        assert_eq!(img.clamp_coord(7, -7), PixelCoord { col: 2, row: 0 });
    }

    #[test]
    fn luma() {
        let img = to_gray(&[255, 255, 255, 255, 0, 0, 0, 0, 0], 3, 1).unwrap();
        assert_eq!(img.samples(), &[255, 76, 0]);
        assert!(matches!(
            to_gray(&[0; 5], 1, 1),
            Err(Error::SizeMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn clamped_agrees_with_direct(w in 1usize..8, h in 1usize..8, seed: u64, c in -10i64..20, r in -10i64..20) {
            let img = GrayImage::from_fn(w, h, |x, y| (seed.wrapping_mul(31).wrapping_add((x * 7 + y * 13) as u64) % 256) as u8).unwrap();
            let v = img.get_clamped(c, r);
            if c >= 0 && r >= 0 && (c as usize) < w && (r as usize) < h {
                prop_assert_eq!(v, img.get(c as usize, r as usize));
            } else {
                let cc = c.clamp(0, w as i64 - 1) as usize;
                let rr = r.clamp(0, h as i64 - 1) as usize;
                prop_assert_eq!(v, img.get(cc, rr));
            }
        }

        #[test]
        fn luma_stays_in_range(px in proptest::collection::vec(any::<u8>(), 3..=3)) {
            // u8 output type guarantees the range; check the rounding against a direct evaluation.
            let g = to_gray(&px, 1, 1).unwrap().samples()[0] as f64;
            let y = 0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64;
            prop_assert!((g - y).abs() <= 0.5 + 1e-9);
        }
    }
}
