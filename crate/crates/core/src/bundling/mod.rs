//! Angular distribution plot placement and C1 composite Bézier bundling.

mod bezier;
mod layout;
mod path;
mod point;

pub use bezier::{bundle_segment, CubicBezier};
pub use layout::{layout_adp, AdpLayout, AdpPoint, Band, BAND_MARGIN};
pub use path::{build_path, sample_path, BundledPath, PairCurve, PairExport, PathExport};
pub use point::Point;
