use std::fs;
use std::path::Path;

use crate::coeffs::{DiskImage, Geometry};
use crate::{Error, Result};

struct Header {
    binary: bool,
    width: usize,
    height: usize,
    maxval: u32,
    data_start: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    let mut pos = 0;
    let mut tokens = Vec::with_capacity(4);
    while tokens.len() < 4 {
        // skip whitespace and comments
        while pos < bytes.len() {
            match bytes[pos] {
                b'#' => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => pos += 1,
                _ => break,
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() && bytes[pos] != b'#' {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Format("truncated PGM header".into()));
        }
        tokens.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| {
            Error::Format("PGM header is not ASCII".into())
        })?);
    }
    let binary = match tokens[0] {
        "P5" => true,
        "P2" => false,
        other => return Err(Error::Format(format!("unsupported magic `{other}`"))),
    };
    let num = |s: &str, what: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| Error::Format(format!("bad PGM {what} `{s}`")))
    };
    let width = num(tokens[1], "width")?;
    let height = num(tokens[2], "height")?;
    let maxval = num(tokens[3], "maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Format("PGM raster is empty".into()));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Format(format!("PGM maxval {maxval} outside 1..=65535")));
    }
    // exactly one whitespace byte separates the header from binary data
    if pos >= bytes.len() && binary {
        return Err(Error::Format("PGM has no pixel data".into()));
    }
    Ok(Header {
        binary,
        width,
        height,
        maxval: maxval as u32,
        data_start: pos + 1,
    })
}

/// Decodes a PGM byte stream; samples are scaled to `[0, 1]` by `maxval`.
pub fn parse_pgm(bytes: &[u8]) -> Result<DiskImage> {
    let h = parse_header(bytes)?;
    let n = h.width * h.height;
    let samples: Vec<u32> = if h.binary {
        let wide = h.maxval > 255;
        let need = n * if wide { 2 } else { 1 };
        let data = bytes
            .get(h.data_start..h.data_start + need)
            .ok_or_else(|| Error::Format("truncated PGM pixel data".into()))?;
        if wide {
            data.chunks_exact(2)
                .map(|c| u16::from_be_bytes([c[0], c[1]]) as u32)
                .collect()
        } else {
            data.iter().map(|&b| b as u32).collect()
        }
    } else {
        let text = std::str::from_utf8(bytes.get(h.data_start.min(bytes.len())..).unwrap_or(&[]))
            .map_err(|_| Error::Format("ASCII PGM body is not text".into()))?;
        let values: Vec<u32> = text
            .split_ascii_whitespace()
            .take(n)
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Format(format!("bad PGM sample `{t}`")))
            })
            .collect::<Result<_>>()?;
        if values.len() < n {
            return Err(Error::Format("truncated PGM pixel data".into()));
        }
        values
    };
    if let Some(v) = samples.iter().find(|&&v| v > h.maxval) {
        return Err(Error::Format(format!("sample {v} exceeds maxval {}", h.maxval)));
    }
    let scale = h.maxval as f64;
    DiskImage::new(
        Geometry::new(h.width, h.height),
        samples.iter().map(|&v| v as f64 / scale).collect(),
    )
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<DiskImage> {
    parse_pgm(&fs::read(path)?)
}

/// 16-bit level of an intensity: clamp to `[0, 1]`, scale by 65535, round
/// half to even.
pub fn quantize(v: f64) -> u16 {
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
    (v * 65535.0).round_ties_even() as u16
}

/// 16-bit binary PGM. Out-of-disk pixels are written as 0.
pub fn encode_pgm(img: &DiskImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n65535\n", img.width(), img.height()).into_bytes();
    out.reserve(img.pixels().len() * 2);
    for (&v, inside) in img.pixels().iter().zip(img.geometry().mask()) {
        let q = if inside { quantize(v) } else { 0 };
        out.extend_from_slice(&q.to_be_bytes());
    }
    out
}

pub fn write_pgm(img: &DiskImage, path: impl AsRef<Path>) -> Result<()> {
    Ok(fs::write(path, encode_pgm(img))?)
}

/// 8-bit PGM with 255 on in-disk pixels and 0 elsewhere.
pub fn encode_mask(geometry: Geometry) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", geometry.width, geometry.height).into_bytes();
    out.extend(geometry.mask().into_iter().map(|m| if m { 255u8 } else { 0 }));
    out
}

pub fn write_mask(geometry: Geometry, path: impl AsRef<Path>) -> Result<()> {
    Ok(fs::write(path, encode_mask(geometry))?)
}
