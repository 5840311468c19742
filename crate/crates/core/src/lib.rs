//! Ensemble visual analytics: angular-statistics parallel coordinates with
//! ADP-guided Bézier bundling, binned parallel coordinates and cross sections.
//!
//! The usual flow is
//!
//! 1. load or synthesize an [`EnsembleDataset`](store::EnsembleDataset),
//! 2. fix a time step with [`slice_time`](store::slice_time),
//! 3. normalize with [`normalize_slice`](analytics::normalize_slice),
//! 4. compute geometry with [`compute_apcp`](pipeline::compute_apcp),
//!    histograms with [`build_histograms`](binning::build_histograms) and
//!    sections with [`extract_section`](section::extract_section).

pub mod analytics;
pub mod binning;
pub mod brush;
pub mod bundling;
pub mod error;
pub mod order;
pub mod pipeline;
pub mod render;
pub mod section;
pub mod server;
pub mod store;

pub use brush::BrushSet;
pub use error::{Error, Result};
pub use order::AxisOrder;
