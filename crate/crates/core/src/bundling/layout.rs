use serde::Serialize;

use super::point::Point;
use crate::analytics::{AngleStats, MAX_ANGLE, MAX_ANGLE_VARIANCE};

/// Fraction of the interaxis gap left empty on each side of an ADP band.
pub const BAND_MARGIN: f64 = 0.05;

/// Axis-aligned rectangle in plot space; `y0` is the bottom edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Band {
    /// Band between axes `pair` and `pair + 1`, spanning the full value range.
    pub fn for_pair(pair: usize) -> Self {
        let left = pair as f64;
        Self {
            x0: left + BAND_MARGIN,
            x1: left + 1.0 - BAND_MARGIN,
            y0: 0.0,
            y1: 1.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn center(&self) -> Point {
        Point::new((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.x0..=self.x1).contains(&p.x) && (self.y0..=self.y1).contains(&p.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdpPoint {
    pub member: usize,
    pub mean: f64,
    pub variance: f64,
    pub x: f64,
    pub y: f64,
}

impl AdpPoint {
    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Scatter of (angular mean, angular variance) per member, placed in a band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdpLayout {
    pub pair: usize,
    pub band: Band,
    pub rescaled: bool,
    pub mean_range: (f64, f64),
    pub var_range: (f64, f64),
    pub points: Vec<AdpPoint>,
}

impl AdpLayout {
    pub fn point(&self, member: usize) -> Option<Point> {
        self.points.iter().find(|p| p.member == member).map(AdpPoint::position)
    }
}

fn unit_position(value: f64, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        ((value - lo) / (hi - lo)).clamp(0.0, 1.0)
    } else {
        0.5
    }
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a * (1.0 - t) + b * t
}

fn span(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let lo = values.clone().fold(f64::INFINITY, f64::min);
    let hi = values.fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Places each member's statistics for one interaxis region inside `band`.
///
/// The fixed ranges are `[-pi/4, pi/4]` for the mean and `[0, (pi/4)^2]` for the
/// variance, so angular mean 0 lands on the horizontal center and variance 0 on
/// the bottom edge. With `rescale` each axis spans the present members' values
/// instead; a zero-width span puts every point at that axis' center.
pub fn layout_adp(pair: usize, stats: &[AngleStats], band: Band, rescale: bool) -> AdpLayout {
    let (mean_range, var_range) = if rescale && !stats.is_empty() {
        (
            span(stats.iter().map(|s| s.mean)),
            span(stats.iter().map(|s| s.variance)),
        )
    } else {
        ((-MAX_ANGLE, MAX_ANGLE), (0.0, MAX_ANGLE_VARIANCE))
    };
    let points = stats
        .iter()
        .map(|s| AdpPoint {
            member: s.member,
            mean: s.mean,
            variance: s.variance,
            x: lerp(band.x0, band.x1, unit_position(s.mean, mean_range)),
            y: lerp(band.y0, band.y1, unit_position(s.variance, var_range)),
        })
        .collect();
    AdpLayout {
        pair,
        band,
        rescaled: rescale,
        mean_range,
        var_range,
        points,
    }
}
