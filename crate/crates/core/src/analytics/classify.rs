use serde::{Deserialize, Serialize};

use super::geometry::AngleStats;

/// Correlation tendency suggested by the angular variance of a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    Positive,
    Negative,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Variances strictly below this read as positive correlation.
    pub positive_below: f64,
    /// Variances strictly above this read as negative correlation.
    pub negative_above: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            positive_below: 0.05,
            negative_above: 0.30,
        }
    }
}

pub fn classify_pattern(stats: &AngleStats, thresholds: &Thresholds) -> Pattern {
    if stats.variance < thresholds.positive_below {
        Pattern::Positive
    } else if stats.variance > thresholds.negative_above {
        Pattern::Negative
    } else {
        Pattern::None
    }
}
