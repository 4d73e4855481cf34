//! Per-pixel weighting schemes over a 2x2 neighborhood.
//!
//! Corner order is fixed throughout the crate:
//!
//! ```text
//!   P1 (x1,y1) ---- P2 (x2,y1)
//!    |    dx  |         |
//!    | dy     P         |
//!    |                  |
//!   P3 (x1,y2) ---- P4 (x2,y2)
//! ```
//!
//! The interpolation point `P` splits the unit square into four rectangles.
//! Corner `Pi` takes its weight from the rectangle diagonally opposite it,
//! so the nearest corner always gets the largest rectangle. The legs of
//! that rectangle are returned by [`corner_sides`]:
//! `P1: (1-dx, 1-dy)`, `P2: (dx, 1-dy)`, `P3: (1-dx, dy)`, `P4: (dx, dy)`.
//!
//! The `*_areas` functions return the raw geometric areas, constant
//! factors (pi, pi/4, 1/2) included. The `*_weights` functions normalize
//! those areas to sum to one, falling back to [`tetragon_weights`] when the
//! raw sum is degenerate.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

use crate::error::Error;

/// Raw weight sums below this are treated as degenerate.
pub const DEGENERATE_EPSILON: f64 = 1e-12;

/// Position of the interpolation point inside its unit square, measured
/// from the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOffset {
    dx: f64,
    dy: f64,
}

impl FracOffset {
    pub fn new(dx: f64, dy: f64) -> Result<Self, Error> {
        if (0.0..=1.0).contains(&dx) && (0.0..=1.0).contains(&dy) {
            Ok(Self { dx, dy })
        } else {
            Err(Error::InvalidOffset { dx, dy })
        }
    }

    /// Caller guarantees both components are in `[0, 1]`.
    #[inline]
    pub(crate) fn new_unchecked(dx: f64, dy: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&dx) && (0.0..=1.0).contains(&dy));
        Self { dx, dy }
    }

    pub const ORIGIN: FracOffset = FracOffset { dx: 0.0, dy: 0.0 };
    pub const CENTER: FracOffset = FracOffset { dx: 0.5, dy: 0.5 };

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn dy(&self) -> f64 {
        self.dy
    }
}

/// The two legs of a rectangle. The diagonal is derived on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidePair {
    pub a: f64,
    pub b: f64,
}

impl SidePair {
    #[inline]
    pub fn area(&self) -> f64 {
        self.a * self.b
    }

    #[inline]
    pub fn shorter(&self) -> f64 {
        self.a.min(self.b)
    }

    #[inline]
    pub fn hypotenuse_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b
    }

    #[inline]
    pub fn hypotenuse(&self) -> f64 {
        libm::sqrt(self.hypotenuse_sq())
    }
}

/// Four non-negative weights, one per corner, summing to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightVector(pub(crate) [f64; 4]);

impl WeightVector {
    /// Wraps weights that the caller has already normalized.
    pub fn from_normalized(w: [f64; 4]) -> Self {
        Self(w)
    }

    #[inline]
    pub fn as_array(&self) -> &[f64; 4] {
        &self.0
    }

    #[inline]
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// How a corner's 8-bit value is turned into a "virtual pixel length".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IntensityDomain {
    /// The raw sample value, 0..=255.
    #[default]
    Raw,
    /// The sample divided by 255, 0..=1.
    Unit,
}

impl IntensityDomain {
    #[inline]
    pub fn length(self, sample: u8) -> f64 {
        match self {
            IntensityDomain::Raw => sample as f64,
            IntensityDomain::Unit => sample as f64 / 255.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IntensityDomain::Raw => "raw",
            IntensityDomain::Unit => "unit",
        }
    }
}

impl core::str::FromStr for IntensityDomain {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "raw" => Ok(IntensityDomain::Raw),
            "unit" => Ok(IntensityDomain::Unit),
            _ => Err(()),
        }
    }
}

impl core::fmt::Display for IntensityDomain {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Virtual pixel lengths of the four corners, in corner order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerIntensities(pub [f64; 4]);

impl CornerIntensities {
    #[inline]
    pub fn from_samples(samples: [u8; 4], domain: IntensityDomain) -> Self {
        Self(samples.map(|s| domain.length(s)))
    }

    /// Multiplies every length by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self(self.0.map(|v| v * k))
    }
}

/// Legs of the rectangle opposite each corner.
#[inline]
pub fn corner_sides(offset: FracOffset) -> [SidePair; 4] {
    let (dx, dy) = (offset.dx, offset.dy);
    let (rx, ry) = (1.0 - dx, 1.0 - dy);
    [
        SidePair { a: rx, b: ry },
        SidePair { a: dx, b: ry },
        SidePair { a: rx, b: dy },
        SidePair { a: dx, b: dy },
    ]
}

/// Divides each entry by the total so the result sums to one.
pub fn normalize(raw: &[f64]) -> Result<Vec<f64>, Error> {
    let mut out = raw.to_vec();
    normalize_in_place(&mut out)?;
    Ok(out)
}

/// In-place form of [`normalize`]. On error the slice is left untouched.
pub fn normalize_in_place(raw: &mut [f64]) -> Result<(), Error> {
    let mut sum = 0.0;
    for &w in raw.iter() {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidWeight(w));
        }
        sum += w;
    }
    if sum < DEGENERATE_EPSILON {
        return Err(Error::DegenerateWeights);
    }
    for w in raw.iter_mut() {
        *w /= sum;
    }
    Ok(())
}

/// Hot-path normalization; inputs are known to be non-negative and finite.
#[inline]
fn normalize_or_fallback(raw: [f64; 4], offset: FracOffset) -> WeightVector {
    let sum = raw[0] + raw[1] + raw[2] + raw[3];
    if sum < DEGENERATE_EPSILON {
        return tetragon_weights(offset);
    }
    let inv = 1.0 / sum;
    WeightVector([raw[0] * inv, raw[1] * inv, raw[2] * inv, raw[3] * inv])
}

/// Bilinear weights: the area of each opposite rectangle. These already
/// sum to one, so no normalization is applied.
#[inline]
pub fn tetragon_weights(offset: FracOffset) -> WeightVector {
    WeightVector(corner_sides(offset).map(|s| s.area()))
}

/// Circle areas `pi/4 * d^2`, with the shorter rectangle side as diameter.
#[inline]
pub fn md_areas(offset: FracOffset) -> [f64; 4] {
    corner_sides(offset).map(|s| {
        let d = s.shorter();
        FRAC_PI_4 * d * d
    })
}

#[inline]
pub fn md_weights(offset: FracOffset) -> WeightVector {
    normalize_or_fallback(md_areas(offset), offset)
}

/// Circle areas `pi * r^2`, with the rectangle diagonal as radius.
#[inline]
pub fn hr_areas(offset: FracOffset) -> [f64; 4] {
    corner_sides(offset).map(|s| PI * s.hypotenuse_sq())
}

/// Note that HR is not interpolating: at a grid node the coincident pixel
/// gets only half of the total weight.
#[inline]
pub fn hr_weights(offset: FracOffset) -> WeightVector {
    normalize_or_fallback(hr_areas(offset), offset)
}

/// Triangle areas `1/2 * base * height`: the rectangle diagonal is the
/// base and the corner's own virtual pixel length is the height.
#[inline]
pub fn at_areas(offset: FracOffset, v: &CornerIntensities) -> [f64; 4] {
    let sides = corner_sides(offset);
    core::array::from_fn(|i| 0.5 * sides[i].hypotenuse() * v.0[i])
}

#[inline]
pub fn at_weights(offset: FracOffset, v: &CornerIntensities) -> WeightVector {
    normalize_or_fallback(at_areas(offset, v), offset)
}

/// Circle areas `pi * C^2`, where `C` is the hypotenuse of the right
/// triangle with the corner's virtual pixel length and the rectangle
/// diagonal as legs, so `C^2 = v^2 + a^2 + b^2`.
#[inline]
pub fn ac_areas(offset: FracOffset, v: &CornerIntensities) -> [f64; 4] {
    let sides = corner_sides(offset);
    core::array::from_fn(|i| {
        let vi = v.0[i];
        PI * (vi * vi + sides[i].hypotenuse_sq())
    })
}

#[inline]
pub fn ac_weights(offset: FracOffset, v: &CornerIntensities) -> WeightVector {
    normalize_or_fallback(ac_areas(offset, v), offset)
}
