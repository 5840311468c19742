//! Representative lines and per-member angle statistics.

use rayon::prelude::*;
use serde::Serialize;

use super::angle::unit_atan;
use super::normalize::{NormalizedSlice, Normalizer};
use super::reduce::{lane_sum, CompensatedSum, MeanVar};
use crate::brush::BrushSet;
use crate::error::{Error, Result};
use crate::order::AxisOrder;

const BLOCK: usize = 256;

/// Polyline through one member's per-axis means, in axis order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentativeLine {
    pub member: usize,
    pub values: Vec<f64>,
}

/// Angular mean and population variance of one member's segments in one
/// interaxis region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleStats {
    pub member: usize,
    pub pair: usize,
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberGeometry {
    pub member: usize,
    /// Grid points that passed the brush.
    pub active: usize,
    pub line: RepresentativeLine,
    pub stats: Vec<AngleStats>,
}

struct Accumulators {
    sums: Vec<CompensatedSum>,
    pairs: Vec<MeanVar>,
    block: Vec<f64>,
    angles: Vec<f64>,
    filled: usize,
    active: usize,
}

impl Accumulators {
    fn new(n_axes: usize) -> Self {
        Self {
            sums: vec![CompensatedSum::default(); n_axes],
            pairs: vec![MeanVar::new(); n_axes - 1],
            block: vec![0.0; n_axes * BLOCK],
            angles: vec![0.0; BLOCK],
            filled: 0,
            active: 0,
        }
    }

    fn flush(&mut self) {
        let n = self.filled;
        if n == 0 {
            return;
        }
        for (a, sum) in self.sums.iter_mut().enumerate() {
            sum.add(lane_sum(&self.block[a * BLOCK..a * BLOCK + n], |v| v));
        }
        for (a, acc) in self.pairs.iter_mut().enumerate() {
            let left = &self.block[a * BLOCK..a * BLOCK + n];
            let right = &self.block[(a + 1) * BLOCK..(a + 1) * BLOCK + n];
            for ((out, l), r) in self.angles[..n].iter_mut().zip(left).zip(right) {
                *out = unit_atan(r - l);
            }
            acc.merge(&MeanVar::from_block(&self.angles[..n]));
        }
        self.active += n;
        self.filled = 0;
    }
}

/// Representative line and angle statistics for every interaxis region of one
/// member brick, in a single pass over the brick.
pub fn member_geometry_from_brick(
    member: usize,
    brick: &[f32],
    normalizer: &Normalizer,
    order: &AxisOrder,
    brush: Option<&BrushSet>,
) -> Result<MemberGeometry> {
    let n_vars = normalizer.n_vars();
    let axes = order.axes();
    let brush = brush.filter(|b| !b.is_empty());
    let mut acc = Accumulators::new(axes.len());
    let mut row = vec![0.0; axes.len()];

    match brush {
        Some(b) => {
            for point in brick.chunks_exact(n_vars) {
                let mut admitted = true;
                for (r, &v) in row.iter_mut().zip(axes) {
                    *r = normalizer.normalize(v, point[v]);
                    admitted &= b.admits(v, *r);
                }
                if !admitted {
                    continue;
                }
                let slot = acc.filled;
                for (a, &r) in row.iter().enumerate() {
                    acc.block[a * BLOCK + slot] = r;
                }
                acc.filled += 1;
                if acc.filled == BLOCK {
                    acc.flush();
                }
            }
        }
        None => {
            let coefficients: Vec<_> = axes.iter().map(|&v| normalizer.coefficients(v)).collect();
            for points in brick.chunks(BLOCK * n_vars) {
                let n = points.len() / n_vars;
                for (a, (&v, &c)) in axes.iter().zip(&coefficients).enumerate() {
                    let dst = &mut acc.block[a * BLOCK..a * BLOCK + n];
                    for (d, p) in dst.iter_mut().zip(points.chunks_exact(n_vars)) {
                        *d = c.apply(p[v]);
                    }
                }
                acc.filled = n;
                acc.flush();
            }
        }
    }
    acc.flush();

    if acc.active == 0 {
        return Err(Error::EmptySelection { member });
    }
    let n = acc.active as f64;
    let values = acc.sums.iter().map(|s| (s.value() / n).clamp(0.0, 1.0)).collect();
    let stats = acc
        .pairs
        .iter()
        .enumerate()
        .map(|(pair, mv)| AngleStats {
            member,
            pair,
            mean: mv.mean(),
            variance: mv.variance(),
        })
        .collect();
    Ok(MemberGeometry {
        member,
        active: acc.active,
        line: RepresentativeLine { member, values },
        stats,
    })
}

pub fn member_geometry(
    view: &NormalizedSlice<'_>,
    m: usize,
    order: &AxisOrder,
    brush: Option<&BrushSet>,
) -> Result<MemberGeometry> {
    member_geometry_from_brick(m, view.member(m)?, view.normalizer(), order, brush)
}

/// Geometry of every member, computed in parallel. Each member is reduced
/// sequentially, so the result does not depend on the thread count.
pub fn slice_geometry(
    view: &NormalizedSlice<'_>,
    order: &AxisOrder,
    brush: Option<&BrushSet>,
) -> Result<Vec<MemberGeometry>> {
    (0..view.slice().n_members())
        .into_par_iter()
        .map(|m| member_geometry(view, m, order, brush))
        .collect()
}

/// Per-variable means of member `m` in variable order.
pub fn representative_line(view: &NormalizedSlice<'_>, m: usize) -> Result<RepresentativeLine> {
    let order = AxisOrder::identity(view.slice().n_vars());
    Ok(member_geometry(view, m, &order, None)?.line)
}

/// Angle statistics of member `m` between variables `j` and `j + 1`.
pub fn angle_stats(view: &NormalizedSlice<'_>, m: usize, j: usize) -> Result<AngleStats> {
    angle_stats_brushed(view, m, j, None)
}

pub fn angle_stats_brushed(
    view: &NormalizedSlice<'_>,
    m: usize,
    j: usize,
    brush: Option<&BrushSet>,
) -> Result<AngleStats> {
    let n_vars = view.slice().n_vars();
    if j + 1 >= n_vars {
        return Err(Error::OutOfRange {
            what: "pair",
            index: j,
            len: n_vars - 1,
        });
    }
    let norm = view.normalizer();
    let brush = brush.filter(|b| !b.is_empty());
    let mut acc = MeanVar::new();
    let mut angles = Vec::with_capacity(BLOCK);
    for point in view.member(m)?.chunks_exact(n_vars) {
        if let Some(b) = brush {
            let admitted = point
                .iter()
                .enumerate()
                .all(|(v, &x)| b.admits(v, norm.normalize(v, x)));
            if !admitted {
                continue;
            }
        }
        angles.push(unit_atan(norm.normalize(j + 1, point[j + 1]) - norm.normalize(j, point[j])));
        if angles.len() == BLOCK {
            acc.merge(&MeanVar::from_block(&angles));
            angles.clear();
        }
    }
    acc.merge(&MeanVar::from_block(&angles));
    if acc.count() == 0 {
        return Err(Error::EmptySelection { member: m });
    }
    Ok(AngleStats {
        member: m,
        pair: j,
        mean: acc.mean(),
        variance: acc.variance(),
    })
}
