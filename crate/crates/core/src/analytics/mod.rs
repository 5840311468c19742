//! Normalized polylines, representative lines and angular statistics.

mod angle;
mod classify;
mod geometry;
mod normalize;
mod reduce;

pub use angle::{segment_angle, unit_atan, MAX_ANGLE, MAX_ANGLE_VARIANCE};
pub use classify::{classify_pattern, Pattern, Thresholds};
pub use geometry::{
    angle_stats, angle_stats_brushed, member_geometry, member_geometry_from_brick, representative_line,
    slice_geometry, AngleStats, MemberGeometry, RepresentativeLine,
};
pub use normalize::{normalize_slice, NormalizedSlice, Normalizer};
pub use reduce::MeanVar;
