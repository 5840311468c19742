use serde::Serialize;

use super::rules::{bin_count, BinRule};
use crate::analytics::NormalizedSlice;
use crate::brush::BrushSet;
use crate::error::{Error, Result};
use crate::order::AxisOrder;

/// `k + 1` uniform edges over `[0, 1]`.
pub fn bin_edges(k: usize) -> Vec<f64> {
    (0..=k).map(|b| b as f64 / k as f64).collect()
}

/// Bin of a normalized value: bins are `[e_b, e_{b+1})` except the last, which
/// is closed. Consistent with [`bin_edges`] at every edge.
pub fn bin_index(v: f64, k: usize) -> usize {
    let edge = |b: usize| b as f64 / k as f64;
    let mut b = ((v * k as f64).floor().max(0.0) as usize).min(k - 1);
    while b > 0 && v < edge(b) {
        b -= 1;
    }
    while b + 1 < k && v >= edge(b + 1) {
        b += 1;
    }
    b
}

/// Two-dimensional bin counts of one member between two adjacent axes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairHistogram {
    pub pair: usize,
    pub left_var: usize,
    pub right_var: usize,
    pub bins_left: usize,
    pub bins_right: usize,
    /// Row-major `bins_left x bins_right`.
    pub counts: Vec<u64>,
    /// Non-empty cells by ascending count; the largest band is drawn last.
    pub draw_order: Vec<usize>,
}

impl PairHistogram {
    pub fn count(&self, bl: usize, br: usize) -> u64 {
        self.counts[bl * self.bins_right + br]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn export(&self) -> HistogramExport {
        HistogramExport {
            pair: self.pair,
            left_var: self.left_var,
            right_var: self.right_var,
            bin_edges_left: bin_edges(self.bins_left),
            bin_edges_right: bin_edges(self.bins_right),
            cells: self
                .draw_order
                .iter()
                .map(|&c| Cell {
                    bl: c / self.bins_right,
                    br: c % self.bins_right,
                    count: self.counts[c],
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub bl: usize,
    pub br: usize,
    pub count: u64,
}

/// JSON form of a pair histogram, cells in draw order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramExport {
    pub pair: usize,
    pub left_var: usize,
    pub right_var: usize,
    pub bin_edges_left: Vec<f64>,
    pub bin_edges_right: Vec<f64>,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberHistograms {
    pub member: usize,
    pub active: usize,
    pub bins: Vec<usize>,
    pub histograms: Vec<PairHistogram>,
}

fn draw_order(counts: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..counts.len()).filter(|&c| counts[c] > 0).collect();
    order.sort_by_key(|&c| (counts[c], c));
    order
}

/// Histograms of every adjacent pair in `order` for member `m`.
///
/// A grid point counts when it passes the brush on every variable. Bin counts
/// come from the member's full (unbrushed) values, so brushing never changes
/// the cell layout.
pub fn build_histograms(
    view: &NormalizedSlice<'_>,
    m: usize,
    order: &AxisOrder,
    brush: &BrushSet,
    rule: BinRule,
) -> Result<MemberHistograms> {
    let n_vars = view.slice().n_vars();
    let columns = (0..n_vars)
        .map(|j| view.column(m, j))
        .collect::<Result<Vec<_>>>()?;
    let bins = columns
        .iter()
        .map(|c| bin_count(rule, c))
        .collect::<Result<Vec<_>>>()?;
    let n_grid = view.slice().n_grid();
    let active: Vec<bool> = (0..n_grid)
        .map(|i| (0..n_vars).all(|j| brush.admits(j, columns[j][i])))
        .collect();
    let n_active = active.iter().filter(|&&a| a).count();

    let histograms = (0..order.n_pairs())
        .map(|pair| {
            let (l, r) = order.pair(pair);
            let (kl, kr) = (bins[l], bins[r]);
            let mut counts = vec![0u64; kl * kr];
            for i in (0..n_grid).filter(|&i| active[i]) {
                counts[bin_index(columns[l][i], kl) * kr + bin_index(columns[r][i], kr)] += 1;
            }
            PairHistogram {
                pair,
                left_var: l,
                right_var: r,
                bins_left: kl,
                bins_right: kr,
                draw_order: draw_order(&counts),
                counts,
            }
        })
        .collect();
    Ok(MemberHistograms {
        member: m,
        active: n_active,
        bins,
        histograms,
    })
}

/// Histogram between variables `j` and `j + 1` of member `m`.
pub fn build_pair_histogram(
    view: &NormalizedSlice<'_>,
    m: usize,
    j: usize,
    brush: &BrushSet,
    rule: BinRule,
) -> Result<PairHistogram> {
    let n_vars = view.slice().n_vars();
    if j + 1 >= n_vars {
        return Err(Error::OutOfRange {
            what: "pair",
            index: j,
            len: n_vars - 1,
        });
    }
    let order = AxisOrder::identity(n_vars);
    let mut all = build_histograms(view, m, &order, brush, rule)?;
    Ok(all.histograms.swap_remove(j))
}
