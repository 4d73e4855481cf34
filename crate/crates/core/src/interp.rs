//! Destination-to-source mapping and the seven resizing algorithms.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::image::{clamp_index, GrayImage};
use crate::weights::{
    ac_weights, at_weights, hr_weights, md_weights, tetragon_weights, CornerIntensities,
    FracOffset, IntensityDomain, WeightVector,
};
use crate::{quantize, round_half_away};

/// Resizing algorithm, tagged with the two-letter abbreviations used on
/// the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// TN
    Nearest,
    /// TB
    Bilinear,
    /// TC
    Bicubic,
    /// MD: circle on the shorter rectangle side.
    MinSideCircle,
    /// HR: circle on the rectangle diagonal.
    HypotenuseCircle,
    /// AT: triangle on the diagonal with intensity as height.
    IntensityTriangle,
    /// AC: circle on the intensity/diagonal hypotenuse.
    IntensityCircle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Nearest,
        Algorithm::Bilinear,
        Algorithm::Bicubic,
        Algorithm::MinSideCircle,
        Algorithm::HypotenuseCircle,
        Algorithm::IntensityTriangle,
        Algorithm::IntensityCircle,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Nearest => "TN",
            Algorithm::Bilinear => "TB",
            Algorithm::Bicubic => "TC",
            Algorithm::MinSideCircle => "MD",
            Algorithm::HypotenuseCircle => "HR",
            Algorithm::IntensityTriangle => "AT",
            Algorithm::IntensityCircle => "AC",
        }
    }

    /// True for the schemes that go through a [`WeightVector`].
    pub fn is_weighted(self) -> bool {
        !matches!(self, Algorithm::Nearest | Algorithm::Bicubic)
    }

    /// True when the weights depend on corner intensities.
    pub fn uses_intensity(self) -> bool {
        matches!(
            self,
            Algorithm::IntensityTriangle | Algorithm::IntensityCircle
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Returned when parsing an unknown algorithm tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag;

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of TN, TB, TC, MD, HR, AT, AC")
    }
}

impl FromStr for Algorithm {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, UnknownTag> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or(UnknownTag)
    }
}

/// An algorithm plus the intensity domain used by AT and AC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scheme {
    pub algorithm: Algorithm,
    pub domain: IntensityDomain,
}

impl Scheme {
    pub fn new(algorithm: Algorithm, domain: IntensityDomain) -> Self {
        Self { algorithm, domain }
    }

    /// Weights for one neighborhood. `None` for TN and TC.
    #[inline]
    pub fn weights(&self, neigh: &Neighborhood) -> Option<WeightVector> {
        let o = neigh.offset;
        let v = || CornerIntensities::from_samples(neigh.values, self.domain);
        Some(match self.algorithm {
            Algorithm::Bilinear => tetragon_weights(o),
            Algorithm::MinSideCircle => md_weights(o),
            Algorithm::HypotenuseCircle => hr_weights(o),
            Algorithm::IntensityTriangle => at_weights(o, &v()),
            Algorithm::IntensityCircle => ac_weights(o, &v()),
            Algorithm::Nearest | Algorithm::Bicubic => return None,
        })
    }
}

impl From<Algorithm> for Scheme {
    fn from(algorithm: Algorithm) -> Self {
        Scheme::new(algorithm, IntensityDomain::default())
    }
}

/// The four corner samples around a source position and the position's
/// offset inside them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighborhood {
    pub values: [u8; 4],
    pub offset: FracOffset,
}

/// Unquantized resampling result, kept for checks before rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

/// Pixel-center mapping: `(dst + 0.5) / scale - 0.5`.
#[inline]
pub fn map_dst_to_src(dst: usize, scale: f64) -> f64 {
    (dst as f64 + 0.5) / scale - 0.5
}

/// Output size for a uniform ratio, `round(size * ratio)` per axis.
pub fn output_dims(width: usize, height: usize, ratio: f64) -> Result<(usize, usize), Error> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::InvalidRatio(ratio));
    }
    let w = round_half_away(width as f64 * ratio);
    let h = round_half_away(height as f64 * ratio);
    if w < 1.0 || h < 1.0 || w > usize::MAX as f64 || h > usize::MAX as f64 {
        return Err(Error::InvalidRatio(ratio));
    }
    Ok((w as usize, h as usize))
}

/// Lower/upper source index and fraction along one axis.
#[derive(Debug, Clone, Copy)]
struct LinearTap {
    lo: usize,
    hi: usize,
    frac: f64,
}

#[inline]
fn linear_tap(src: f64, len: usize) -> LinearTap {
    let base = libm::floor(src);
    let i = base as i64;
    LinearTap {
        lo: clamp_index(i, len),
        hi: clamp_index(i + 1, len),
        frac: src - base,
    }
}

fn linear_taps(dst_len: usize, src_len: usize, ratio: f64) -> Vec<LinearTap> {
    (0..dst_len)
        .map(|d| linear_tap(map_dst_to_src(d, ratio), src_len))
        .collect()
}

/// Corners around `(src_x, src_y)`, fetched with edge clamping.
pub fn gather_neighborhood(image: &GrayImage, src_x: f64, src_y: f64) -> Neighborhood {
    let tx = linear_tap(src_x, image.width());
    let ty = linear_tap(src_y, image.height());
    let top = image.row(ty.lo);
    let bottom = image.row(ty.hi);
    Neighborhood {
        values: [top[tx.lo], top[tx.hi], bottom[tx.lo], bottom[tx.hi]],
        offset: FracOffset::new_unchecked(tx.frac, ty.frac),
    }
}

/// Weighted sum of the corner values, rounded and clamped.
#[inline]
pub fn interpolate_pixel(neigh: &Neighborhood, w: &WeightVector) -> u8 {
    quantize(weighted_sum(neigh, w))
}

#[inline]
fn weighted_sum(neigh: &Neighborhood, w: &WeightVector) -> f64 {
    let w = w.as_array();
    let p = &neigh.values;
    w[0] * p[0] as f64 + w[1] * p[1] as f64 + w[2] * p[2] as f64 + w[3] * p[3] as f64
}

fn weighted_pass<W, S>(image: &GrayImage, ratio: f64, weigh: W, mut sink: S) -> Result<(usize, usize), Error>
where
    W: Fn(&Neighborhood) -> WeightVector,
    S: FnMut(f64),
{
    let (dw, dh) = output_dims(image.width(), image.height(), ratio)?;
    let xs = linear_taps(dw, image.width(), ratio);
    let ys = linear_taps(dh, image.height(), ratio);
    for ty in &ys {
        let top = image.row(ty.lo);
        let bottom = image.row(ty.hi);
        for tx in &xs {
            let neigh = Neighborhood {
                values: [top[tx.lo], top[tx.hi], bottom[tx.lo], bottom[tx.hi]],
                offset: FracOffset::new_unchecked(tx.frac, ty.frac),
            };
            sink(weighted_sum(&neigh, &weigh(&neigh)));
        }
    }
    Ok((dw, dh))
}

/// Monomorphizes the pass per scheme so each inner loop is specialized.
fn dispatch_weighted<S: FnMut(f64)>(
    image: &GrayImage,
    ratio: f64,
    scheme: Scheme,
    sink: S,
) -> Result<(usize, usize), Error> {
    let domain = scheme.domain;
    match scheme.algorithm {
        Algorithm::Bilinear => weighted_pass(image, ratio, |n| tetragon_weights(n.offset), sink),
        Algorithm::MinSideCircle => weighted_pass(image, ratio, |n| md_weights(n.offset), sink),
        Algorithm::HypotenuseCircle => weighted_pass(image, ratio, |n| hr_weights(n.offset), sink),
        Algorithm::IntensityTriangle => weighted_pass(
            image,
            ratio,
            |n| at_weights(n.offset, &CornerIntensities::from_samples(n.values, domain)),
            sink,
        ),
        Algorithm::IntensityCircle => weighted_pass(
            image,
            ratio,
            |n| ac_weights(n.offset, &CornerIntensities::from_samples(n.values, domain)),
            sink,
        ),
        a @ (Algorithm::Nearest | Algorithm::Bicubic) => Err(Error::NotWeighted(a)),
    }
}

/// Resizes with one of the 2x2 weighting schemes (TB, MD, HR, AT, AC).
pub fn resize_weighted(image: &GrayImage, ratio: f64, scheme: Scheme) -> Result<GrayImage, Error> {
    let mut out = Vec::new();
    let (w, h) = dispatch_weighted(image, ratio, scheme, |v| out.push(quantize(v)))?;
    GrayImage::new(w, h, out)
}

/// Same as [`resize_weighted`] but without the final quantization.
pub fn resample_weighted(image: &GrayImage, ratio: f64, scheme: Scheme) -> Result<Plane, Error> {
    let mut values = Vec::new();
    let (width, height) = dispatch_weighted(image, ratio, scheme, |v| values.push(v))?;
    Ok(Plane {
        width,
        height,
        values,
    })
}

pub fn resize_nearest(image: &GrayImage, ratio: f64) -> Result<GrayImage, Error> {
    let (dw, dh) = output_dims(image.width(), image.height(), ratio)?;
    let nearest = |d: usize, len: usize| {
        clamp_index(round_half_away(map_dst_to_src(d, ratio)) as i64, len)
    };
    let cols: Vec<usize> = (0..dw).map(|d| nearest(d, image.width())).collect();
    let mut out = Vec::with_capacity(dw * dh);
    for dy in 0..dh {
        let row = image.row(nearest(dy, image.height()));
        out.extend(cols.iter().map(|&c| row[c]));
    }
    GrayImage::new(dw, dh, out)
}

/// Keys cubic convolution parameter.
pub const KEYS_A: f64 = -0.5;

/// Keys cubic convolution kernel with `a = -0.5`.
#[inline]
pub fn cubic_kernel(t: f64) -> f64 {
    let a = KEYS_A;
    let t = t.abs();
    if t <= 1.0 {
        ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0
    } else if t < 2.0 {
        ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy)]
struct CubicTaps {
    idx: [usize; 4],
    w: [f64; 4],
}

fn cubic_taps(dst_len: usize, src_len: usize, ratio: f64) -> Vec<CubicTaps> {
    (0..dst_len)
        .map(|d| {
            let src = map_dst_to_src(d, ratio);
            let base = libm::floor(src);
            let t = src - base;
            let i = base as i64;
            CubicTaps {
                idx: [
                    clamp_index(i - 1, src_len),
                    clamp_index(i, src_len),
                    clamp_index(i + 1, src_len),
                    clamp_index(i + 2, src_len),
                ],
                w: [
                    cubic_kernel(1.0 + t),
                    cubic_kernel(t),
                    cubic_kernel(1.0 - t),
                    cubic_kernel(2.0 - t),
                ],
            }
        })
        .collect()
}

fn bicubic_pass<S: FnMut(f64)>(image: &GrayImage, ratio: f64, mut sink: S) -> Result<(usize, usize), Error> {
    let (dw, dh) = output_dims(image.width(), image.height(), ratio)?;
    let xs = cubic_taps(dw, image.width(), ratio);
    let ys = cubic_taps(dh, image.height(), ratio);
    for ty in &ys {
        let rows = ty.idx.map(|r| image.row(r));
        for tx in &xs {
            let mut acc = 0.0;
            for (row, wy) in rows.iter().zip(ty.w) {
                let h = tx.w[0] * row[tx.idx[0]] as f64
                    + tx.w[1] * row[tx.idx[1]] as f64
                    + tx.w[2] * row[tx.idx[2]] as f64
                    + tx.w[3] * row[tx.idx[3]] as f64;
                acc += wy * h;
            }
            sink(acc);
        }
    }
    Ok((dw, dh))
}

/// Separable 4x4 Keys bicubic over edge-clamped taps.
pub fn resize_bicubic(image: &GrayImage, ratio: f64) -> Result<GrayImage, Error> {
    let mut out = Vec::new();
    let (w, h) = bicubic_pass(image, ratio, |v| out.push(quantize(v)))?;
    GrayImage::new(w, h, out)
}

pub fn resample_bicubic(image: &GrayImage, ratio: f64) -> Result<Plane, Error> {
    let mut values = Vec::new();
    let (width, height) = bicubic_pass(image, ratio, |v| values.push(v))?;
    Ok(Plane {
        width,
        height,
        values,
    })
}

/// Single entry point for all seven algorithms.
pub fn resize(image: &GrayImage, ratio: f64, scheme: Scheme) -> Result<GrayImage, Error> {
    match scheme.algorithm {
        Algorithm::Nearest => resize_nearest(image, ratio),
        Algorithm::Bicubic => resize_bicubic(image, ratio),
        _ => resize_weighted(image, ratio, scheme),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(w: usize, h: usize, s: &[u8]) -> GrayImage {
        GrayImage::new(w, h, s.to_vec()).unwrap()
    }

    #[test]
    fn tags_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.tag().parse::<Algorithm>(), Ok(a));
        }
        assert_eq!("XX".parse::<Algorithm>(), Err(UnknownTag));
        assert_eq!("tb".parse::<Algorithm>(), Err(UnknownTag));
    }

    #[test]
    fn mapping() {
        assert_eq!(map_dst_to_src(0, 2.0), -0.25);
        assert_eq!(map_dst_to_src(1, 2.0), 0.25);
        for d in 0..1000 {
            assert_eq!(map_dst_to_src(d, 1.0), d as f64);
        }
    }

    #[test]
    fn output_dims_rules() {
        assert_eq!(output_dims(3, 5, 2.0), Ok((6, 10)));
        assert_eq!(output_dims(3, 3, 0.5), Ok((2, 2)));
        assert_eq!(output_dims(3, 3, 0.1), Err(Error::InvalidRatio(0.1)));
        assert!(output_dims(3, 3, 0.0).is_err());
        assert!(output_dims(3, 3, -2.0).is_err());
        assert!(output_dims(3, 3, f64::NAN).is_err());
        assert!(output_dims(3, 3, f64::INFINITY).is_err());
    }

    #[test]
    fn neighborhood_gathering() {
        let im = img(3, 3, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let n = gather_neighborhood(&im, 0.25, 0.5);
        assert_eq!(n.values, [0, 1, 3, 4]);
        assert_eq!(n.offset, FracOffset::new(0.25, 0.5).unwrap());

        let n = gather_neighborhood(&im, -0.25, 0.0);
        assert_eq!(n.values, [0, 0, 3, 3]);
        assert_eq!(n.offset.dx(), 0.75);
        assert_eq!(n.offset.dy(), 0.0);

        let n = gather_neighborhood(&im, 1.0, 2.0);
        assert_eq!(n.offset, FracOffset::ORIGIN);
        assert_eq!(n.values[0], 7);
        // past the right and bottom edges both columns/rows clamp
        assert_eq!(gather_neighborhood(&im, 2.5, 2.5).values, [8; 4]);
    }

    #[test]
    fn pixel_interpolation() {
        let n = |values| Neighborhood {
            values,
            offset: FracOffset::ORIGIN,
        };
        let w = WeightVector::from_normalized([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(interpolate_pixel(&n([7, 1, 2, 3]), &w), 7);
        let w = WeightVector::from_normalized([0.25; 4]);
        assert_eq!(interpolate_pixel(&n([0, 0, 0, 4]), &w), 1);
        let w = WeightVector::from_normalized([0.375, 0.125, 0.375, 0.125]);
        assert_eq!(interpolate_pixel(&n([10, 20, 30, 40]), &w), 23);
    }

    #[test]
    fn scheme_weights_match_free_functions() {
        let n = Neighborhood {
            values: [10, 20, 30, 40],
            offset: FracOffset::CENTER,
        };
        let s = Scheme::new(Algorithm::IntensityTriangle, IntensityDomain::Unit);
        assert_eq!(
            s.weights(&n),
            Some(at_weights(n.offset, &CornerIntensities::from_samples(n.values, IntensityDomain::Unit)))
        );
        assert_eq!(Scheme::from(Algorithm::Nearest).weights(&n), None);
    }

    #[test]
    fn weighted_rejects_baselines() {
        let im = img(1, 1, &[3]);
        assert_eq!(
            resize_weighted(&im, 2.0, Algorithm::Bicubic.into()),
            Err(Error::NotWeighted(Algorithm::Bicubic))
        );
        assert!(resize_weighted(&im, 0.0, Algorithm::Bilinear.into()).is_err());
    }

    #[test]
    fn nearest_examples() {
        let im = img(2, 2, &[0, 100, 100, 200]);
        let out = resize_nearest(&im, 2.0).unwrap();
        assert_eq!(
            out.samples(),
            &[
                0, 0, 100, 100, //
                0, 0, 100, 100, //
                100, 100, 200, 200, //
                100, 100, 200, 200,
            ]
        );
        let one = img(1, 1, &[9]);
        assert_eq!(resize_nearest(&one, 4.0).unwrap(), GrayImage::filled(4, 4, 9).unwrap());
        assert_eq!(resize_nearest(&im, 1.0).unwrap(), im);
    }

    #[test]
    fn cubic_kernel_values() {
        assert_eq!(cubic_kernel(0.0), 1.0);
        assert_eq!(cubic_kernel(1.0), 0.0);
        assert_eq!(cubic_kernel(-1.0), 0.0);
        assert_eq!(cubic_kernel(2.0), 0.0);
        assert_eq!(cubic_kernel(3.5), 0.0);
        assert!((cubic_kernel(0.5) - 0.5625).abs() < 1e-15);
        // 1 < t < 2 branch: -0.5*(3.375) + 2.5*(2.25) - 4*(1.5) + 2
        assert!((cubic_kernel(1.5) - (-0.0625)).abs() < 1e-15);
        // partition of unity at a few phases
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let s = cubic_kernel(1.0 + t) + cubic_kernel(t) + cubic_kernel(1.0 - t) + cubic_kernel(2.0 - t);
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn hr_is_not_identity() {
        let im = img(3, 1, &[0, 90, 0]);
        let out = resize(&im, 1.0, Algorithm::HypotenuseCircle.into()).unwrap();
        assert_ne!(out, im);
        // column 0: P1=0 (1/2), P2=90 (1/4), P3=0 (1/4), P4=90 (0)
        assert_eq!(out.samples()[0], 23);
    }

    #[test]
    fn bicubic_interpolates_ramp() {
        let im = GrayImage::from_fn(16, 4, |x, _| (x * 10) as u8).unwrap();
        let plane = resample_bicubic(&im, 2.0).unwrap();
        for dx in 4..(plane.width - 4) {
            let expected = 10.0 * map_dst_to_src(dx, 2.0);
            for dy in 0..plane.height {
                let got = plane.values[dy * plane.width + dx];
                assert!((got - expected).abs() < 1e-9, "{dx}: {got} vs {expected}");
            }
        }
    }

    #[test]
    fn plane_and_image_agree() {
        let im = GrayImage::from_fn(5, 4, |x, y| (x * 37 + y * 11) as u8).unwrap();
        for a in [Algorithm::Bilinear, Algorithm::IntensityCircle] {
            let p = resample_weighted(&im, 3.0, a.into()).unwrap();
            let q = resize_weighted(&im, 3.0, a.into()).unwrap();
            let quantized: alloc::vec::Vec<u8> = p.values.iter().map(|&v| quantize(v)).collect();
            assert_eq!(quantized, q.samples());
        }
        let p = resample_bicubic(&im, 3.0).unwrap();
        assert_eq!((p.width, p.height), (15, 12));
    }
}
