use crate::error::Result;
use crate::store::{TimeSliceView, VarBounds};

/// Maps raw values of each variable onto `[0, 1]` using shared bounds.
/// Degenerate variables (min == max) map every value to 0.5.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalizer {
    min: Vec<f64>,
    inv_span: Vec<f64>,
    // 0.5 for degenerate variables (whose `inv_span` is 0), 0 otherwise
    base: Vec<f64>,
}

impl Normalizer {
    pub fn from_bounds(bounds: &[VarBounds]) -> Self {
        let min = bounds.iter().map(|b| b.min as f64).collect();
        let inv_span = bounds
            .iter()
            .map(|b| {
                if b.is_degenerate() {
                    0.0
                } else {
                    1.0 / (b.max as f64 - b.min as f64)
                }
            })
            .collect();
        let base = bounds.iter().map(|b| if b.is_degenerate() { 0.5 } else { 0.0 }).collect();
        Self { min, inv_span, base }
    }

    pub fn n_vars(&self) -> usize {
        self.min.len()
    }

    #[inline]
    pub fn normalize(&self, var: usize, value: f32) -> f64 {
        self.coefficients(var).apply(value)
    }

    #[inline]
    pub(crate) fn coefficients(&self, var: usize) -> Affine {
        Affine {
            min: self.min[var],
            inv_span: self.inv_span[var],
            base: self.base[var],
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Affine {
    min: f64,
    inv_span: f64,
    base: f64,
}

impl Affine {
    #[inline(always)]
    pub(crate) fn apply(self, value: f32) -> f64 {
        ((value as f64 - self.min) * self.inv_span + self.base).clamp(0.0, 1.0)
    }
}

/// A time slice seen through its normalizer.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedSlice<'a> {
    slice: &'a TimeSliceView,
    normalizer: &'a Normalizer,
}

impl<'a> NormalizedSlice<'a> {
    pub fn new(slice: &'a TimeSliceView, normalizer: &'a Normalizer) -> Self {
        Self { slice, normalizer }
    }

    pub fn slice(&self) -> &'a TimeSliceView {
        self.slice
    }

    pub fn normalizer(&self) -> &'a Normalizer {
        self.normalizer
    }

    pub fn value(&self, m: usize, i: usize, j: usize) -> f64 {
        self.normalizer.normalize(j, self.slice.value(m, i, j))
    }

    pub fn member(&self, m: usize) -> Result<&'a [f32]> {
        self.slice.member(m)
    }

    /// Normalized values of variable `j` for every grid point of member `m`.
    pub fn column(&self, m: usize, j: usize) -> Result<Vec<f64>> {
        let n_vars = self.slice.n_vars();
        Ok(self
            .slice
            .member(m)?
            .chunks_exact(n_vars)
            .map(|p| self.normalizer.normalize(j, p[j]))
            .collect())
    }
}

/// Normalizer for a slice, bounded over every member and grid point.
pub fn normalize_slice(slice: &TimeSliceView) -> Normalizer {
    Normalizer::from_bounds(slice.var_bounds())
}
