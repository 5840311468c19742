//! Binned parallel coordinates for one member.

mod histogram;
mod rules;

pub use histogram::{
    bin_edges, bin_index, build_histograms, build_pair_histogram, Cell, HistogramExport, MemberHistograms,
    PairHistogram,
};
pub use rules::{bin_count, quantile_sorted, BinRule, DEFAULT_FIXED_BINS, MAX_BINS};
