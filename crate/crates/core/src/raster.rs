//! Point-cloud rasterization and pixel-count area estimates.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exact::{visit_points_f64, Budget};
use crate::group::{P2Element, TileParams};

/// Default point target: `B^depth >= 4·10⁵`.
pub const DEFAULT_POINT_TARGET: u64 = 400_000;
pub const DEFAULT_RESOLUTION: usize = 800;
/// Minimum frame margin on each side, as a fraction of the image size.
pub const FRAME_MARGIN: f64 = 0.02;

/// Smallest `k` with `B^k >= 4·10⁵`.
pub fn default_depth(params: &TileParams) -> usize {
    let b = params.b() as u64;
    let mut k = 0;
    let mut n = 1u64;
    while n < DEFAULT_POINT_TARGET {
        n *= b;
        k += 1;
    }
    k
}

/// World-to-pixel map `px = (x - x0) · scale`, `py = (y1 - y) · scale`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub x0: f64,
    pub y1: f64,
    pub scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    /// Row-major, 0 = background; the last point drawn wins.
    pub labels: Vec<u16>,
    /// `masks[l - 1]`: every pixel hit by label `l`, drawn over or not.
    pub masks: Vec<Vec<bool>>,
    pub frame: Frame,
}

impl Raster {
    pub fn label(&self, x: usize, y: usize) -> u16 {
        self.labels[y * self.width + x]
    }

    pub fn covered(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }

    pub fn distinct_labels(&self) -> BTreeSet<u16> {
        self.labels.iter().copied().filter(|&l| l != 0).collect()
    }

    /// World area of one pixel.
    pub fn pixel_area(&self) -> f64 {
        1.0 / (self.frame.scale * self.frame.scale)
    }

    pub fn frame_area(&self) -> f64 {
        (self.width * self.height) as f64 * self.pixel_area()
    }

    /// Pixels hit by `label`, dilated by one pixel (8-neighborhood).
    pub fn dilated_mask(&self, label: u16) -> Vec<bool> {
        let mut out = vec![false; self.labels.len()];
        let Some(mask) = self.mask(label) else {
            return out;
        };
        for y in 0..self.height {
            for x in 0..self.width {
                if !mask[y * self.width + x] {
                    continue;
                }
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                        if nx >= 0 && ny >= 0 && (nx as usize) < self.width && (ny as usize) < self.height {
                            out[ny as usize * self.width + nx as usize] = true;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn mask(&self, label: u16) -> Option<&[bool]> {
        (label as usize).checked_sub(1).and_then(|i| self.masks.get(i)).map(|m| m.as_slice())
    }

    /// Whether some pixel hit by `label` lies in the dilated mask of `center`.
    pub fn touches(&self, center: u16, label: u16) -> bool {
        let dilated = self.dilated_mask(center);
        self.mask(label)
            .is_some_and(|m| m.iter().zip(&dilated).any(|(&a, &b)| a && b))
    }
}

fn floor_to_usize(v: f64) -> Option<usize> {
    if !(v >= 0.0) {
        return None;
    }
    Some(v as usize)
}

/// Square pixels; the hull of the points sits centered with at least the
/// frame margin on every side.
fn frame_for(hull: (f64, f64, f64, f64), width: usize, height: usize) -> Frame {
    let (xmin, xmax, ymin, ymax) = hull;
    let usable = 1.0 - 2.0 * FRAME_MARGIN;
    let w = (xmax - xmin).max(1e-9);
    let h = (ymax - ymin).max(1e-9);
    let scale = (width as f64 * usable / w).min(height as f64 * usable / h);
    let cx = 0.5 * (xmin + xmax);
    let cy = 0.5 * (ymin + ymax);
    Frame {
        x0: cx - 0.5 * width as f64 / scale,
        y1: cy + 0.5 * height as f64 / scale,
        scale,
    }
}

/// One cloud per layer: `(isometry applied to T, label or None for first digit)`.
fn render_layers(
    params: &TileParams,
    layers: &[(P2Element, Option<u16>)],
    depth: usize,
    resolution: usize,
    budget: &Budget,
) -> Result<Raster, Error> {
    let mut hull = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    visit_points_f64(params, depth, budget, |_, x, y| {
        for (g, _) in layers {
            let s = g.sign() as f64;
            let (px, py) = (s * x + g.p as f64, s * y + g.q as f64);
            hull.0 = hull.0.min(px);
            hull.1 = hull.1.max(px);
            hull.2 = hull.2.min(py);
            hull.3 = hull.3.max(py);
        }
    })?;
    let (width, height) = (resolution, resolution);
    let frame = frame_for(hull, width, height);
    let label_count = layers
        .iter()
        .map(|(_, l)| l.unwrap_or(params.digit_count() as u16))
        .max()
        .unwrap_or(0) as usize;
    let mut labels = vec![0u16; width * height];
    let mut masks = vec![vec![false; width * height]; label_count];
    visit_points_f64(params, depth, budget, |first, x, y| {
        for (g, label) in layers {
            let s = g.sign() as f64;
            let (px, py) = (s * x + g.p as f64, s * y + g.q as f64);
            let col = floor_to_usize((px - frame.x0) * frame.scale);
            let row = floor_to_usize((frame.y1 - py) * frame.scale);
            if let (Some(c), Some(r)) = (col, row) {
                if c < width && r < height {
                    let l = label.unwrap_or(first as u16 + 1);
                    labels[r * width + c] = l;
                    masks[l as usize - 1][r * width + c] = true;
                }
            }
        }
    })?;
    Ok(Raster {
        width,
        height,
        labels,
        masks,
        frame,
    })
}

/// The depth-`depth` address points of `T`, labeled by first digit (1-based).
pub fn render_tile(params: &TileParams, depth: usize, resolution: usize, budget: &Budget) -> Result<Raster, Error> {
    render_layers(params, &[(P2Element::IDENTITY, None)], depth, resolution, budget)
}

/// `T` (label 1) together with `γ(T)` for each `γ ∈ S` (labels 2, 3, … in
/// element order). An empty `S` renders the tile alone.
pub fn render_patch(
    params: &TileParams,
    s: &BTreeSet<P2Element>,
    depth: usize,
    resolution: usize,
    budget: &Budget,
) -> Result<Raster, Error> {
    if s.is_empty() {
        return render_tile(params, depth, resolution, budget);
    }
    let mut layers = vec![(P2Element::IDENTITY, Some(1u16))];
    for (i, g) in s.iter().enumerate() {
        layers.push((*g, Some(i as u16 + 2)));
    }
    render_layers(params, &layers, depth, resolution, budget)
}

/// Covered pixels times pixel area.
pub fn estimate_area(raster: &Raster) -> f64 {
    raster.covered() as f64 * raster.pixel_area()
}
