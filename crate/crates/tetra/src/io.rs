//! Format dispatch for image input.

use std::fs;
use std::io::Cursor;
use std::path::Path;

use tetra_core::{to_gray, GrayImage};

use crate::error::{Error, Result};
use crate::pgm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pgm,
    Png,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "pgm" => Some(Format::Pgm),
            "png" => Some(Format::Png),
            _ => None,
        }
    }
}

/// Loads a PGM or 8-bit PNG. Color PNGs are reduced to Rec.601 luma and
/// any alpha channel is dropped.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    match Format::from_path(path) {
        Some(Format::Pgm) => pgm::load_pgm(path),
        Some(Format::Png) => {
            let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
            decode_png(&bytes, path)
        }
        None => Err(Error::UnknownFormat {
            path: path.to_path_buf(),
        }),
    }
}

pub fn decode_png(bytes: &[u8], path: &Path) -> Result<GrayImage> {
    let fail = |reason: String| Error::Png {
        path: path.to_path_buf(),
        reason,
    };
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(|e| fail(e.to_string()))?;
    let (color, depth) = reader.output_color_type();
    if depth != png::BitDepth::Eight {
        return Err(Error::UnsupportedDepth {
            path: path.to_path_buf(),
            maxval: (1u32 << depth as u8) - 1,
        });
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| fail("image too large".into()))?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf).map_err(|e| fail(e.to_string()))?;
    buf.truncate(info.buffer_size());
    let (w, h) = (info.width as usize, info.height as usize);
    let channels = color.samples();
    let stride = info.line_size;
    // rows may be padded; repack to tight pixels
    let tight: Vec<u8> = buf
        .chunks(stride)
        .take(h)
        .flat_map(|row| row[..w * channels].iter().copied())
        .collect();
    let image = match color {
        png::ColorType::Grayscale => GrayImage::new(w, h, tight)?,
        png::ColorType::GrayscaleAlpha => {
            GrayImage::new(w, h, tight.chunks_exact(2).map(|p| p[0]).collect())?
        }
        png::ColorType::Rgb => to_gray(&tight, w, h)?,
        png::ColorType::Rgba => {
            let rgb: Vec<u8> = tight
                .chunks_exact(4)
                .flat_map(|p| [p[0], p[1], p[2]])
                .collect();
            to_gray(&rgb, w, h)?
        }
        png::ColorType::Indexed => return Err(fail("palette was not expanded".into())),
    };
    Ok(image)
}
