//! Horizontal cross sections of one member's volume and their colors.

use serde::Serialize;

use crate::analytics::Normalizer;
use crate::error::{Error, Result};
use crate::store::TimeSliceView;

/// Control colors of the section palette, at parameters 0, 0.25, 0.5, 0.75, 1.
pub const PALETTE: [[u8; 3]; 5] = [
    [128, 0, 128], // purple
    [0, 0, 255],   // blue
    [0, 200, 0],   // green
    [255, 255, 0], // yellow
    [255, 0, 0],   // red
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PaletteStop {
    pub at: f64,
    pub rgb: [u8; 3],
}

pub fn palette_stops() -> Vec<PaletteStop> {
    PALETTE
        .iter()
        .enumerate()
        .map(|(k, &rgb)| PaletteStop {
            at: k as f64 / (PALETTE.len() - 1) as f64,
            rgb,
        })
        .collect()
}

/// Piecewise-linear color of a normalized value, clamped to `[0, 1]`.
pub fn colormap(value: f64) -> [u8; 3] {
    let v = if value.is_nan() { 0.0 } else { value.clamp(0.0, 1.0) };
    let segments = (PALETTE.len() - 1) as f64;
    let pos = v * segments;
    let k = (pos.floor() as usize).min(PALETTE.len() - 2);
    let t = pos - k as f64;
    let (a, b) = (PALETTE[k], PALETTE[k + 1]);
    let mut out = [0u8; 3];
    for c in 0..3 {
        out[c] = (a[c] as f64 * (1.0 - t) + b[c] as f64 * t).round() as u8;
    }
    out
}

/// Layer `z` of variable `var` of member `member`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossSection {
    pub member: usize,
    pub variable: usize,
    pub z_index: usize,
    pub nx: usize,
    pub ny: usize,
    /// Row-major by `y`, then `x`.
    pub values: Vec<f32>,
    pub normalized: Vec<f64>,
}

impl CrossSection {
    /// Packed RGB bytes, three per grid point.
    pub fn rgb(&self) -> Vec<u8> {
        self.normalized.iter().flat_map(|&v| colormap(v)).collect()
    }

    /// Raw values as little-endian `f32`.
    pub fn raw_bytes(&self) -> Vec<u8> {
        self.values.iter().flat_map(|v| v.to_le_bytes()).collect()
    }
}

pub fn extract_section(
    slice: &TimeSliceView,
    normalizer: &Normalizer,
    member: usize,
    var: usize,
    z: usize,
) -> Result<CrossSection> {
    let grid = slice.grid();
    let n_vars = slice.n_vars();
    if var >= n_vars {
        return Err(Error::OutOfRange {
            what: "variable",
            index: var,
            len: n_vars,
        });
    }
    if z >= grid.nz {
        return Err(Error::OutOfRange {
            what: "layer",
            index: z,
            len: grid.nz,
        });
    }
    let brick = slice.member(member)?;
    let start = grid.index(0, 0, z) * n_vars;
    let values: Vec<f32> = brick[start..start + grid.layer_len() * n_vars]
        .chunks_exact(n_vars)
        .map(|p| p[var])
        .collect();
    let normalized = values.iter().map(|&v| normalizer.normalize(var, v)).collect();
    Ok(CrossSection {
        member,
        variable: var,
        z_index: z,
        nx: grid.nx,
        ny: grid.ny,
        values,
        normalized,
    })
}
