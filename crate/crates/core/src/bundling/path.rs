use serde::Serialize;

use super::bezier::{bundle_segment, CubicBezier};
use super::layout::AdpLayout;
use super::point::Point;
use crate::analytics::RepresentativeLine;
use crate::error::{Error, Result};

/// The two cubics of one member in one interaxis region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCurve {
    pub pair: usize,
    pub left: CubicBezier,
    pub right: CubicBezier,
}

impl PairCurve {
    /// Start, two controls, junction, two controls, end.
    pub fn control_points(&self) -> [Point; 7] {
        let [a, b, c, d] = self.left.points;
        let [_, e, f, g] = self.right.points;
        [a, b, c, d, e, f, g]
    }

    pub fn junction(&self) -> Point {
        self.left.end()
    }
}

/// One member's curve across every interaxis region.
#[derive(Debug, Clone, PartialEq)]
pub struct BundledPath {
    pub member: usize,
    pub curves: Vec<PairCurve>,
}

/// Routes a member's representative line through its ADP point in each region.
/// Axis `j` sits at `x = j`; `layouts[j]` must hold this member's point.
pub fn build_path(line: &RepresentativeLine, layouts: &[AdpLayout]) -> Result<BundledPath> {
    if layouts.len() + 1 != line.values.len() {
        return Err(Error::OutOfRange {
            what: "layout",
            index: layouts.len(),
            len: line.values.len().saturating_sub(1),
        });
    }
    let curves = layouts
        .iter()
        .enumerate()
        .map(|(j, layout)| {
            let mid = layout.point(line.member).ok_or(Error::MissingAdpPoint {
                member: line.member,
                pair: j,
            })?;
            let e0 = Point::new(j as f64, line.values[j]);
            let e1 = Point::new((j + 1) as f64, line.values[j + 1]);
            let (left, right) = bundle_segment(e0, mid, e1);
            Ok(PairCurve { pair: j, left, right })
        })
        .collect::<Result<_>>()?;
    Ok(BundledPath {
        member: line.member,
        curves,
    })
}

/// Evaluates each cubic at `n` uniform parameters. The junction of each region
/// is emitted once, giving `pairs * (2n - 1)` points.
pub fn sample_path(path: &BundledPath, n: usize) -> Result<Vec<Point>> {
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let step = 1.0 / (n - 1) as f64;
    let mut out = Vec::with_capacity(path.curves.len() * (2 * n - 1));
    for curve in &path.curves {
        out.extend((0..n).map(|k| curve.left.eval(k as f64 * step)));
        out.extend((1..n).map(|k| curve.right.eval(k as f64 * step)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairExport {
    pub pair: usize,
    pub control_points: [Point; 7],
}

/// JSON form of a bundled path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathExport {
    pub member: usize,
    pub pairs: Vec<PairExport>,
}

impl From<&BundledPath> for PathExport {
    fn from(path: &BundledPath) -> Self {
        Self {
            member: path.member,
            pairs: path
                .curves
                .iter()
                .map(|c| PairExport {
                    pair: c.pair,
                    control_points: c.control_points(),
                })
                .collect(),
        }
    }
}
