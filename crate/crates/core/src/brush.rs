use crate::error::{Error, Result};

/// Per-variable closed intervals on normalized values. A grid point is active
/// when every brushed variable's value falls inside its interval.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BrushSet {
    intervals: Vec<Option<(f64, f64)>>,
}

impl BrushSet {
    pub fn new(n_vars: usize) -> Self {
        Self {
            intervals: vec![None; n_vars],
        }
    }

    pub fn set(&mut self, var: usize, lo: f64, hi: f64) -> Result<()> {
        if var >= self.intervals.len() {
            return Err(Error::BadBrush(format!(
                "variable {var} out of range ({} variables)",
                self.intervals.len()
            )));
        }
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(Error::BadBrush(format!("interval [{lo}, {hi}] is not inside [0, 1]")));
        }
        self.intervals[var] = Some((lo, hi));
        Ok(())
    }

    pub fn with(mut self, var: usize, lo: f64, hi: f64) -> Result<Self> {
        self.set(var, lo, hi)?;
        Ok(self)
    }

    pub fn clear(&mut self, var: usize) {
        if let Some(slot) = self.intervals.get_mut(var) {
            *slot = None;
        }
    }

    pub fn interval(&self, var: usize) -> Option<(f64, f64)> {
        self.intervals.get(var).copied().flatten()
    }

    pub fn n_vars(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.iter().all(Option::is_none)
    }

    /// `true` when `value` of variable `var` passes that variable's brush.
    #[inline]
    pub fn admits(&self, var: usize, value: f64) -> bool {
        match self.intervals.get(var).copied().flatten() {
            Some((lo, hi)) => lo <= value && value <= hi,
            None => true,
        }
    }

    /// Parses comma-separated `var:lo:hi` triples; `resolve` maps a variable
    /// token (name or index) to its index.
    pub fn parse(text: &str, n_vars: usize, resolve: impl Fn(&str) -> Option<usize>) -> Result<Self> {
        let mut brush = BrushSet::new(n_vars);
        for triple in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = triple.split(':').collect();
            let [var, lo, hi] = parts[..] else {
                return Err(Error::BadBrush(format!("expected var:lo:hi, got {triple:?}")));
            };
            let var = resolve(var).ok_or_else(|| Error::BadBrush(format!("unknown variable {var:?}")))?;
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::BadBrush(format!("bad bound {s:?} in {triple:?}")))
            };
            brush.set(var, parse(lo)?, parse(hi)?)?;
        }
        Ok(brush)
    }

    /// Canonical text form, usable as a cache key.
    pub fn key(&self) -> String {
        self.intervals
            .iter()
            .enumerate()
            .filter_map(|(j, iv)| iv.map(|(lo, hi)| format!("{j}:{lo}:{hi}")))
            .collect::<Vec<_>>()
            .join(",")
    }
}
