//! Integer-factor reduction used to build low-resolution benchmark inputs.

use alloc::vec::Vec;

use crate::error::Error;
use crate::image::GrayImage;
use crate::quantize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Downsampler {
    /// Rounded mean of each `factor x factor` block.
    #[default]
    Box,
    /// Top-left sample of each block.
    Decimate,
}

impl Downsampler {
    pub fn as_str(self) -> &'static str {
        match self {
            Downsampler::Box => "box",
            Downsampler::Decimate => "decimate",
        }
    }
}

pub fn downsample(image: &GrayImage, factor: usize, method: Downsampler) -> Result<GrayImage, Error> {
    let (w, h) = image.dimensions();
    if factor < 2 || w % factor != 0 || h % factor != 0 {
        return Err(Error::InvalidFactor {
            factor,
            width: w,
            height: h,
        });
    }
    let (ow, oh) = (w / factor, h / factor);
    let mut out = Vec::with_capacity(ow * oh);
    let area = (factor * factor) as f64;
    for by in 0..oh {
        for bx in 0..ow {
            let value = match method {
                Downsampler::Decimate => image.get(bx * factor, by * factor),
                Downsampler::Box => {
                    let mut sum = 0u64;
                    for y in by * factor..(by + 1) * factor {
                        sum += image.row(y)[bx * factor..(bx + 1) * factor]
                            .iter()
                            .map(|&v| v as u64)
                            .sum::<u64>();
                    }
                    quantize(sum as f64 / area)
                }
            };
            out.push(value);
        }
    }
    GrayImage::new(ow, oh, out)
}
