use crate::error::{Error, Result};
use crate::store::VariableMeta;

/// Left-to-right placement of variables on the parallel axes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisOrder(Vec<usize>);

impl AxisOrder {
    pub fn identity(n_vars: usize) -> Self {
        Self((0..n_vars).collect())
    }

    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            match seen.get_mut(v) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::BadOrder(format!("{order:?}"))),
            }
        }
        if order.len() < 2 {
            return Err(Error::BadOrder(format!("{order:?} has fewer than two axes")));
        }
        Ok(Self(order))
    }

    /// Parses a comma-separated list of variable names (or indices).
    pub fn parse(text: &str, variables: &[VariableMeta]) -> Result<Self> {
        let order = text
            .split(',')
            .map(str::trim)
            .map(|tok| {
                variables
                    .iter()
                    .position(|v| v.name == tok)
                    .or_else(|| tok.parse::<usize>().ok())
                    .ok_or_else(|| Error::BadOrder(format!("unknown variable {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if order.len() != variables.len() {
            return Err(Error::BadOrder(format!(
                "{} axes for {} variables",
                order.len(),
                variables.len()
            )));
        }
        Self::new(order)
    }

    pub fn axes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n_pairs(&self) -> usize {
        self.0.len() - 1
    }

    /// Variables `(left, right)` of interaxis region `pair`.
    pub fn pair(&self, pair: usize) -> (usize, usize) {
        (self.0[pair], self.0[pair + 1])
    }
}
