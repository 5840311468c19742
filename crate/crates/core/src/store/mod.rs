//! Ensemble data model: a member × grid × time × variable tensor, stored as one
//! brick of `f32` values per (member, time) pair.
//!
//! A brick holds `n_grid * n_vars` values in (z, y, x, variable)-major order, so
//! the values of one grid point are contiguous.

mod manifest;
mod synthetic;

use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use manifest::{load_dataset, write_dataset, Manifest, ManifestVariable, ManifestMember};
pub use synthetic::{generate_synthetic, SyntheticSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDims {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl GridDims {
    pub fn new(nx: usize, ny: usize, nz: usize) -> Self {
        Self { nx, ny, nz }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Linear grid-point index of `(x, y, z)`.
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        (z * self.ny + y) * self.nx + x
    }

    /// Number of points in one horizontal layer.
    pub fn layer_len(&self) -> usize {
        self.nx * self.ny
    }
}

impl std::fmt::Display for GridDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}x{}", self.nx, self.ny, self.nz)
    }
}

impl std::str::FromStr for GridDims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('x').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidDims(format!("expected NXxNYxNZ, got {s:?}")));
        }
        let mut dims = [0usize; 3];
        for (d, p) in dims.iter_mut().zip(&parts) {
            *d = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidDims(format!("bad grid extent {p:?}")))?;
        }
        Ok(GridDims::new(dims[0], dims[1], dims[2]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMeta {
    pub name: String,
    pub unit: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberMeta {
    pub id: String,
    pub true_state: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarBounds {
    pub min: f32,
    pub max: f32,
}

impl VarBounds {
    pub fn is_degenerate(&self) -> bool {
        self.min == self.max
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Storage {
    /// Bricks indexed by `t * n_members + m`.
    Memory(Vec<Arc<[f32]>>),
    /// Brick files indexed by `t * n_members + m`, read on demand.
    Files(Vec<PathBuf>),
    /// Bricks regenerated on demand from a synthetic recipe.
    Procedural(Box<SyntheticSpec>),
}

/// A multi-member, time-varying, multivariate volume dataset.
#[derive(Debug, Clone)]
pub struct EnsembleDataset {
    members: Vec<MemberMeta>,
    grid: GridDims,
    times: Vec<String>,
    variables: Vec<VariableMeta>,
    altitudes: Option<Vec<f64>>,
    storage: Storage,
}

impl EnsembleDataset {
    pub(crate) fn from_parts(
        members: Vec<MemberMeta>,
        grid: GridDims,
        times: Vec<String>,
        variables: Vec<VariableMeta>,
        altitudes: Option<Vec<f64>>,
        storage: Storage,
    ) -> Result<Self> {
        validate_shape(&members, grid, &times, &variables)?;
        if let Some(alt) = &altitudes {
            if alt.len() != grid.nz {
                return Err(Error::InvalidDims(format!(
                    "altitude table has {} entries for {} layers",
                    alt.len(),
                    grid.nz
                )));
            }
        }
        let expected = members.len() * times.len();
        let stored = match &storage {
            Storage::Memory(b) => Some(b.len()),
            Storage::Files(p) => Some(p.len()),
            Storage::Procedural(_) => None,
        };
        if let Some(stored) = stored {
            if stored != expected {
                return Err(Error::InvalidDims(format!(
                    "{stored} bricks for {expected} (member, time) pairs"
                )));
            }
        }
        if let Storage::Memory(bricks) = &storage {
            let len = grid.len() * variables.len();
            for (k, b) in bricks.iter().enumerate() {
                if b.len() != len {
                    return Err(Error::InvalidDims(format!(
                        "brick {k} has {} values, expected {len}",
                        b.len()
                    )));
                }
                check_finite(b, &format!("memory brick {k}"))?;
            }
        }
        Ok(Self {
            members,
            grid,
            times,
            variables,
            altitudes,
            storage,
        })
    }

    /// Builds an in-memory dataset. `bricks` is indexed by `t * members.len() + m`.
    pub fn in_memory(
        members: Vec<MemberMeta>,
        grid: GridDims,
        times: Vec<String>,
        variables: Vec<VariableMeta>,
        bricks: Vec<Vec<f32>>,
    ) -> Result<Self> {
        let bricks = bricks.into_iter().map(Arc::from).collect();
        Self::from_parts(members, grid, times, variables, None, Storage::Memory(bricks))
    }

    pub fn with_altitudes(mut self, altitudes: Vec<f64>) -> Result<Self> {
        if altitudes.len() != self.grid.nz {
            return Err(Error::InvalidDims(format!(
                "altitude table has {} entries for {} layers",
                altitudes.len(),
                self.grid.nz
            )));
        }
        self.altitudes = Some(altitudes);
        Ok(self)
    }

    pub fn members(&self) -> &[MemberMeta] {
        &self.members
    }

    pub fn variables(&self) -> &[VariableMeta] {
        &self.variables
    }

    pub fn times(&self) -> &[String] {
        &self.times
    }

    pub fn grid(&self) -> GridDims {
        self.grid
    }

    pub fn altitudes(&self) -> Option<&[f64]> {
        self.altitudes.as_deref()
    }

    pub fn n_members(&self) -> usize {
        self.members.len()
    }

    pub fn n_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn n_grid(&self) -> usize {
        self.grid.len()
    }

    pub fn brick_len(&self) -> usize {
        self.n_grid() * self.n_vars()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Resolves the raw brick of member `m` at time `t`.
    ///
    /// File-backed bricks are read and checked on every call; callers that need
    /// a brick repeatedly should hold on to the returned `Arc`.
    pub fn brick(&self, m: usize, t: usize) -> Result<Arc<[f32]>> {
        self.check_member(m)?;
        self.check_time(t)?;
        let k = t * self.n_members() + m;
        match &self.storage {
            Storage::Memory(bricks) => Ok(bricks[k].clone()),
            Storage::Files(paths) => manifest::read_brick(&paths[k], self.brick_len()).map(Arc::from),
            Storage::Procedural(spec) => Ok(Arc::from(spec.brick(m, t))),
        }
    }

    pub(crate) fn check_member(&self, m: usize) -> Result<()> {
        if m >= self.n_members() {
            return Err(Error::OutOfRange {
                what: "member",
                index: m,
                len: self.n_members(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_time(&self, t: usize) -> Result<()> {
        if t >= self.n_times() {
            return Err(Error::OutOfRange {
                what: "time",
                index: t,
                len: self.n_times(),
            });
        }
        Ok(())
    }
}

fn validate_shape(
    members: &[MemberMeta],
    grid: GridDims,
    times: &[String],
    variables: &[VariableMeta],
) -> Result<()> {
    if members.is_empty() {
        return Err(Error::InvalidDims("at least one member is required".into()));
    }
    if grid.is_empty() {
        return Err(Error::InvalidDims(format!("grid {grid} has no points")));
    }
    if times.is_empty() {
        return Err(Error::InvalidDims("at least one time step is required".into()));
    }
    if variables.len() < 2 {
        return Err(Error::InvalidDims(format!(
            "at least two variables are required, got {}",
            variables.len()
        )));
    }
    for (k, v) in variables.iter().enumerate() {
        if v.index != k {
            return Err(Error::InvalidDims(format!(
                "variable {:?} has index {} at position {k}",
                v.name, v.index
            )));
        }
        if variables[..k].iter().any(|o| o.name == v.name) {
            return Err(Error::InvalidDims(format!("duplicate variable {:?}", v.name)));
        }
    }
    for (k, m) in members.iter().enumerate() {
        if members[..k].iter().any(|o| o.id == m.id) {
            return Err(Error::InvalidDims(format!("duplicate member id {:?}", m.id)));
        }
    }
    Ok(())
}

pub(crate) fn check_finite(values: &[f32], source_name: &str) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(offset) => Err(Error::NonFinite {
            source_name: source_name.to_string(),
            offset,
            value: values[offset],
        }),
        None => Ok(()),
    }
}

/// Per-variable min/max over one brick, merged into `bounds`.
pub(crate) fn accumulate_bounds(brick: &[f32], bounds: &mut [VarBounds]) {
    let n_vars = bounds.len();
    let mut lo: Vec<f32> = bounds.iter().map(|b| b.min).collect();
    let mut hi: Vec<f32> = bounds.iter().map(|b| b.max).collect();
    for point in brick.chunks_exact(n_vars) {
        for ((l, h), &v) in lo.iter_mut().zip(hi.iter_mut()).zip(point) {
            *l = l.min(v);
            *h = h.max(v);
        }
    }
    for ((b, l), h) in bounds.iter_mut().zip(lo).zip(hi) {
        b.min = l;
        b.max = h;
    }
}

pub(crate) fn empty_bounds(n_vars: usize) -> Vec<VarBounds> {
    vec![
        VarBounds {
            min: f32::INFINITY,
            max: f32::NEG_INFINITY,
        };
        n_vars
    ]
}

/// Per-variable bounds of time step `t`, computed by streaming one brick at a
/// time. Equivalent to `slice_time(ds, t)?.var_bounds()` without holding every
/// member in memory.
pub fn scan_bounds(ds: &EnsembleDataset, t: usize) -> Result<Vec<VarBounds>> {
    ds.check_time(t)?;
    let mut bounds = empty_bounds(ds.n_vars());
    for m in 0..ds.n_members() {
        accumulate_bounds(&ds.brick(m, t)?, &mut bounds);
    }
    Ok(bounds)
}

/// All members of one time step, with per-variable bounds over every member and
/// grid point.
#[derive(Debug, Clone)]
pub struct TimeSliceView {
    time_index: usize,
    grid: GridDims,
    n_vars: usize,
    members: Vec<Arc<[f32]>>,
    bounds: Vec<VarBounds>,
}

impl TimeSliceView {
    /// Builds a slice from member bricks (each `grid.len() * n_vars` values).
    pub fn from_bricks(
        time_index: usize,
        grid: GridDims,
        n_vars: usize,
        members: Vec<Arc<[f32]>>,
    ) -> Result<Self> {
        if members.is_empty() || grid.is_empty() || n_vars < 2 {
            return Err(Error::InvalidDims(format!(
                "slice needs members, grid points and two variables ({} members, grid {grid}, {n_vars} variables)",
                members.len()
            )));
        }
        let len = grid.len() * n_vars;
        let mut bounds = empty_bounds(n_vars);
        for (m, b) in members.iter().enumerate() {
            if b.len() != len {
                return Err(Error::InvalidDims(format!(
                    "member {m} brick has {} values, expected {len}",
                    b.len()
                )));
            }
            check_finite(b, &format!("member {m}"))?;
            accumulate_bounds(b, &mut bounds);
        }
        Ok(Self {
            time_index,
            grid,
            n_vars,
            members,
            bounds,
        })
    }

    pub fn time_index(&self) -> usize {
        self.time_index
    }

    pub fn grid(&self) -> GridDims {
        self.grid
    }

    pub fn n_members(&self) -> usize {
        self.members.len()
    }

    pub fn n_grid(&self) -> usize {
        self.grid.len()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn var_bounds(&self) -> &[VarBounds] {
        &self.bounds
    }

    pub fn value(&self, m: usize, i: usize, j: usize) -> f32 {
        self.members[m][i * self.n_vars + j]
    }

    /// Raw values of member `m`, grid-point-major.
    pub fn member(&self, m: usize) -> Result<&[f32]> {
        self.members
            .get(m)
            .map(|b| &b[..])
            .ok_or(Error::OutOfRange {
                what: "member",
                index: m,
                len: self.members.len(),
            })
    }
}

/// Fixes the time step, reading every member brick of `t`.
pub fn slice_time(ds: &EnsembleDataset, t: usize) -> Result<TimeSliceView> {
    ds.check_time(t)?;
    let bricks = (0..ds.n_members())
        .map(|m| ds.brick(m, t))
        .collect::<Result<Vec<_>>>()?;
    TimeSliceView::from_bricks(t, ds.grid(), ds.n_vars(), bricks)
}
