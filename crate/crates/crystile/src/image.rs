//! Raster to PPM (P6) and PNG.

use std::io::{self, Write};
use std::path::Path;

use crystile_core::raster::Raster;

const BACKGROUND: [u8; 3] = [255, 255, 255];

const PALETTE: [[u8; 3]; 12] = [
    [31, 119, 180],
    [255, 127, 14],
    [44, 160, 44],
    [214, 39, 40],
    [148, 103, 189],
    [140, 86, 75],
    [227, 119, 194],
    [127, 127, 127],
    [188, 189, 34],
    [23, 190, 207],
    [57, 59, 121],
    [99, 121, 57],
];

pub fn color(label: u16) -> [u8; 3] {
    if label == 0 {
        BACKGROUND
    } else {
        PALETTE[(label as usize - 1) % PALETTE.len()]
    }
}

/// Row-major RGB bytes.
pub fn rgb_bytes(raster: &Raster) -> Vec<u8> {
    raster.labels.iter().flat_map(|&l| color(l)).collect()
}

pub fn write_ppm<W: Write>(raster: &Raster, mut out: W) -> io::Result<()> {
    write!(out, "P6\n{} {}\n255\n", raster.width, raster.height)?;
    out.write_all(&rgb_bytes(raster))?;
    out.flush()
}

pub fn save_ppm(raster: &Raster, path: &Path) -> io::Result<()> {
    let file = std::fs::File::create(path)?;
    write_ppm(raster, io::BufWriter::new(file))
}

pub fn save_png(raster: &Raster, path: &Path) -> anyhow::Result<()> {
    let img = image::RgbImage::from_raw(raster.width as u32, raster.height as u32, rgb_bytes(raster))
        .ok_or_else(|| anyhow::anyhow!("raster size mismatch"))?;
    img.save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

/// `tile_A{A}_B{B}_d{depth}.ppm`, or `patch_…` for a neighbor patch.
pub fn file_name(kind: &str, a: i64, b: i64, depth: usize, ext: &str) -> String {
    format!("{kind}_A{a}_B{b}_d{depth}.{ext}")
}
