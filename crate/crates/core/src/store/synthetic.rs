//! Deterministic synthetic ensembles with a prescribed correlation between
//! adjacent variables.
//!
//! Each grid point draws a latent chain `x_0, x_1, ...` with unit variance where
//! `x_j = sqrt(w) * s_j + sqrt(1 - w) * g_j`. The regime sign `s_j` is ±1 and
//! keeps its sign from `j` to `j + 1` with probability `(1 + rho_j) / 2`; the
//! Gaussian part follows `g_{j+1} = rho_j * g_j + sqrt(1 - rho_j^2) * z`. Both
//! parts have lag-one correlation `rho_j`, so `corr(x_j, x_{j+1}) = rho_j`
//! exactly in expectation. Members differ by a small per-variable affine
//! offset, which leaves the correlations untouched.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rand_distr::StandardNormal;

use super::{EnsembleDataset, GridDims, MemberMeta, Storage, VariableMeta};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub grid: GridDims,
    pub n_members: usize,
    pub n_times: usize,
    /// Target correlation between variables `j` and `j + 1`.
    pub rho: Vec<f64>,
    pub seed: u64,
    /// Adds a leading member flagged as the true state.
    pub true_state: bool,
    /// Share `w` of the latent variance carried by the two-regime sign.
    pub regime_weight: f64,
    /// Half-width of the per-member offset and scale perturbation.
    pub member_spread: f64,
    pub variable_names: Option<Vec<String>>,
}

impl SyntheticSpec {
    pub fn new(grid: GridDims, n_members: usize, rho: Vec<f64>) -> Self {
        Self {
            grid,
            n_members,
            n_times: 1,
            rho,
            seed: 0,
            true_state: false,
            regime_weight: 0.99,
            member_spread: 0.05,
            variable_names: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_times(mut self, n_times: usize) -> Self {
        self.n_times = n_times;
        self
    }

    pub fn with_true_state(mut self, true_state: bool) -> Self {
        self.true_state = true_state;
        self
    }

    pub fn with_regime_weight(mut self, w: f64) -> Self {
        self.regime_weight = w;
        self
    }

    pub fn with_member_spread(mut self, spread: f64) -> Self {
        self.member_spread = spread;
        self
    }

    pub fn with_variable_names(mut self, names: Vec<String>) -> Self {
        self.variable_names = Some(names);
        self
    }

    pub fn n_vars(&self) -> usize {
        self.rho.len() + 1
    }

    fn total_members(&self) -> usize {
        self.n_members + usize::from(self.true_state)
    }

    fn validate(&self) -> Result<()> {
        if self.grid.is_empty() || self.n_members == 0 || self.n_times == 0 {
            return Err(Error::InvalidDims(format!(
                "grid {}, {} members, {} times",
                self.grid, self.n_members, self.n_times
            )));
        }
        if self.rho.is_empty() {
            return Err(Error::InvalidDims("at least two variables are required".into()));
        }
        if let Some(&bad) = self.rho.iter().find(|r| !(-1.0..=1.0).contains(*r)) {
            return Err(Error::InvalidCorrelation(bad));
        }
        if !(0.0..=1.0).contains(&self.regime_weight) {
            return Err(Error::InvalidDims(format!(
                "regime weight {} outside [0, 1]",
                self.regime_weight
            )));
        }
        if !(0.0..1.0).contains(&self.member_spread) {
            return Err(Error::InvalidDims(format!(
                "member spread {} outside [0, 1)",
                self.member_spread
            )));
        }
        if let Some(names) = &self.variable_names {
            if names.len() != self.n_vars() {
                return Err(Error::InvalidDims(format!(
                    "{} variable names for {} variables",
                    names.len(),
                    self.n_vars()
                )));
            }
        }
        Ok(())
    }

    fn variables(&self) -> Vec<VariableMeta> {
        (0..self.n_vars())
            .map(|index| VariableMeta {
                name: self
                    .variable_names
                    .as_ref()
                    .map_or_else(|| format!("v{index}"), |n| n[index].clone()),
                unit: String::new(),
                index,
            })
            .collect()
    }

    fn members(&self) -> Vec<MemberMeta> {
        let mut members = Vec::with_capacity(self.total_members());
        if self.true_state {
            members.push(MemberMeta {
                id: "truth".into(),
                true_state: true,
            });
        }
        members.extend((0..self.n_members).map(|k| MemberMeta {
            id: format!("m{k:03}"),
            true_state: false,
        }));
        members
    }

    /// Independent generator for one stream of this spec's seed.
    fn rng(&self, stream: u64) -> Xoshiro256PlusPlus {
        let mut seeder = Xoshiro256PlusPlus::seed_from_u64(self.seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        Xoshiro256PlusPlus::from_rng(&mut seeder).expect("xoshiro seeding is infallible")
    }

    /// Per-variable `(offset, scale)` of member `m`. The true state is unperturbed.
    fn member_affine(&self, m: usize) -> Vec<(f64, f64)> {
        if self.true_state && m == 0 {
            return vec![(0.0, 1.0); self.n_vars()];
        }
        let mut rng = self.rng((1 << 40) + m as u64);
        let s = self.member_spread;
        (0..self.n_vars())
            .map(|_| (rng.gen_range(-s..=s), 1.0 + rng.gen_range(-s..=s)))
            .collect()
    }

    /// Raw brick of member `m` at time `t`, in (z, y, x, variable)-major order.
    pub(crate) fn brick(&self, m: usize, t: usize) -> Vec<f32> {
        let n_vars = self.n_vars();
        let affine = self.member_affine(m);
        let mut rng = self.rng((t * self.total_members() + m) as u64);

        let regime = self.regime_weight.sqrt();
        let noise = (1.0 - self.regime_weight).sqrt();
        let keep: Vec<f64> = self.rho.iter().map(|r| (1.0 + r) / 2.0).collect();
        let innovation: Vec<f64> = self.rho.iter().map(|r| (1.0 - r * r).max(0.0).sqrt()).collect();

        let mut out = Vec::with_capacity(self.grid.len() * n_vars);
        for _ in 0..self.grid.len() {
            let mut sign: f64 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let mut g: f64 = rng.sample(StandardNormal);
            for j in 0..n_vars {
                if j > 0 {
                    let u: f64 = rng.gen();
                    if u >= keep[j - 1] {
                        sign = -sign;
                    }
                    let z: f64 = rng.sample(StandardNormal);
                    g = self.rho[j - 1] * g + innovation[j - 1] * z;
                }
                let x = regime * sign + noise * g;
                let (offset, scale) = affine[j];
                out.push((offset + scale * x) as f32);
            }
        }
        out
    }
}

/// Materializes a synthetic dataset in memory.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<EnsembleDataset> {
    spec.validate()?;
    let members = spec.members();
    let mut bricks = Vec::with_capacity(members.len() * spec.n_times);
    for t in 0..spec.n_times {
        for m in 0..members.len() {
            bricks.push(spec.brick(m, t));
        }
    }
    EnsembleDataset::in_memory(members, spec.grid, times(spec.n_times), spec.variables(), bricks)
}

impl SyntheticSpec {
    /// Dataset whose bricks are regenerated on each access instead of held in
    /// memory. Values are identical to [`generate_synthetic`].
    pub fn procedural(&self) -> Result<EnsembleDataset> {
        self.validate()?;
        EnsembleDataset::from_parts(
            self.members(),
            self.grid,
            times(self.n_times),
            self.variables(),
            None,
            Storage::Procedural(Box::new(self.clone())),
        )
    }
}

fn times(n: usize) -> Vec<String> {
    (0..n).map(|t| format!("t{t}")).collect()
}
