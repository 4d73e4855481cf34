//! Binary PGM (P5) with 8-bit samples.
//!
//! Writing always produces `P5 <w> <h> 255\n` followed by the raw samples.
//! Reading accepts any whitespace and `#` comments in the header and keeps
//! sample bytes as-is, without rescaling to the declared maxval.

use std::fs;
use std::path::Path;

use tetra_core::GrayImage;

use crate::error::{Error, Result};

pub fn encode(image: &GrayImage) -> Vec<u8> {
    let header = format!("P5 {} {} 255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.samples().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.samples());
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Option<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }
}

pub fn decode(bytes: &[u8], path: &Path) -> Result<GrayImage> {
    let malformed = |reason: &str| Error::MalformedPgm {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if !bytes.starts_with(b"P5") {
        return Err(malformed("missing P5 magic"));
    }
    let mut cur = Cursor { bytes, pos: 2 };
    if !cur.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(malformed("missing P5 magic"));
    }
    let width = cur.number().ok_or_else(|| malformed("bad width"))?;
    let height = cur.number().ok_or_else(|| malformed("bad height"))?;
    let maxval = cur.number().ok_or_else(|| malformed("bad maxval"))?;
    if width == 0 || height == 0 {
        return Err(malformed("zero dimension"));
    }
    if maxval == 0 {
        return Err(malformed("maxval must be positive"));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedDepth {
            path: path.to_path_buf(),
            maxval,
        });
    }
    // exactly one whitespace byte separates the header from the raster
    if !cur.bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(malformed("missing whitespace after maxval"));
    }
    let start = cur.pos + 1;
    let len = width as usize * height as usize;
    let raster = bytes
        .get(start..start + len)
        .ok_or_else(|| malformed("truncated raster"))?;
    Ok(GrayImage::new(width as usize, height as usize, raster.to_vec())?)
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes, path)
}

pub fn save_pgm(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode(image)).map_err(|e| Error::io(path, e))
}
