//! 8-bit rasters and their PGM/PPM/CSV encodings.

use crate::error::{DynError, Result};
use std::fs;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channels {
    Gray,
    Rgb,
}

impl Channels {
    pub fn count(&self) -> usize {
        match self {
            Channels::Gray => 1,
            Channels::Rgb => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    pub channels: Channels,
    /// Row-major from the top-left, `channels.count()` bytes per pixel.
    pub data: Vec<u8>,
    /// How the image was made (command line, seed). Not written to files.
    pub provenance: String,
}

impl RasterImage {
    pub fn filled(width: usize, height: usize, channels: Channels, value: u8) -> RasterImage {
        RasterImage {
            width,
            height,
            channels,
            data: vec![value; width * height * channels.count()],
            provenance: String::new(),
        }
    }

    pub fn gray(&self, i: usize, j: usize) -> u8 {
        self.data[(j * self.width + i) * self.channels.count()]
    }

    /// Binary PGM (`P5`) or PPM (`P6`) bytes.
    pub fn encode(&self) -> Vec<u8> {
        let magic = match self.channels {
            Channels::Gray => "P5",
            Channels::Rgb => "P6",
        };
        let mut out = format!("{magic}\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.data);
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.encode()).map_err(|e| io_error(path, e))
    }

    /// Parses a binary PGM or PPM (no comments, maxval 255).
    pub fn decode(bytes: &[u8]) -> Result<RasterImage> {
        let bad = |m: &str| DynError::InvalidArgument(format!("not a binary PNM image: {m}"));
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err(bad("truncated header"));
            }
            fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("header"))?.to_string());
        }
        pos += 1;
        let channels = match fields[0].as_str() {
            "P5" => Channels::Gray,
            "P6" => Channels::Rgb,
            _ => return Err(bad("magic")),
        };
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad("size"));
        let (width, height) = (num(&fields[1])?, num(&fields[2])?);
        if fields[3] != "255" {
            return Err(bad("maxval must be 255"));
        }
        let len = width * height * channels.count();
        if bytes.len() < pos + len {
            return Err(bad("truncated data"));
        }
        Ok(RasterImage {
            width,
            height,
            channels,
            data: bytes[pos..pos + len].to_vec(),
            provenance: String::new(),
        })
    }

    pub fn read(path: &Path) -> Result<RasterImage> {
        let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
        RasterImage::decode(&bytes)
    }
}

pub fn io_error(path: &Path, e: std::io::Error) -> DynError {
    DynError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Formats a real with 17 significant digits (exact round trip).
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV text: one header line, then one line per row, `\n` endings.
pub fn csv_string(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|&x| fmt_real(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    fs::write(path, csv_string(header, rows)).map_err(|e| io_error(path, e))
}

/// Writes any text (already in CSV form) to `path`.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}
