use core::fmt;

/// Errors reported by the resampling and metric routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Width or height was zero.
    EmptyImage,
    /// Sample buffer length does not match the stated dimensions.
    SizeMismatch { expected: usize, actual: usize },
    /// Two images that must agree in size do not.
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// Scaling ratio is not finite and positive, or yields an empty output.
    InvalidRatio(f64),
    /// Fractional offset component outside `[0, 1]`.
    InvalidOffset { dx: f64, dy: f64 },
    /// A raw weight was negative or not finite.
    InvalidWeight(f64),
    /// Raw weights summed to less than the normalization epsilon.
    DegenerateWeights,
    /// The algorithm is not a weighting scheme (TN and TC have none).
    NotWeighted(crate::interp::Algorithm),
    /// Image smaller than the SSIM window.
    TooSmall { min: usize },
    /// Gaussian window size must be odd and non-zero.
    EvenWindow(usize),
    /// Downsampling factor below 2 or not dividing the image size.
    InvalidFactor { factor: usize, width: usize, height: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyImage => write!(f, "image dimensions must be at least 1x1"),
            Error::SizeMismatch { expected, actual } => {
                write!(f, "expected {expected} samples, got {actual}")
            }
            Error::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::InvalidRatio(r) => write!(f, "invalid scaling ratio {r}"),
            Error::InvalidOffset { dx, dy } => {
                write!(f, "fractional offset ({dx}, {dy}) outside the unit square")
            }
            Error::InvalidWeight(w) => write!(f, "invalid raw weight {w}"),
            Error::DegenerateWeights => write!(f, "degenerate weights: sum below epsilon"),
            Error::NotWeighted(a) => write!(f, "{a} is not a weighting scheme"),
            Error::TooSmall { min } => write!(f, "both image sides must be at least {min} pixels"),
            Error::EvenWindow(n) => write!(f, "window size {n} must be odd"),
            Error::InvalidFactor {
                factor,
                width,
                height,
            } => write!(
                f,
                "cannot downsample {width}x{height} by factor {factor}"
            ),
        }
    }
}

impl core::error::Error for Error {}
