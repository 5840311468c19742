//! On-disk format: a JSON manifest plus one headerless little-endian `f32`
//! brick file per (member, time).

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{check_finite, EnsembleDataset, GridDims, MemberMeta, Storage, VariableMeta};
use crate::error::{Error, Result};

pub const VALUE_TYPE: &str = "f32le";
pub const LAYOUT: &str = "zyxv";
const DEFAULT_TEMPLATE: &str = "bricks/{member}_t{t}.f32";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestVariable {
    pub name: String,
    #[serde(default)]
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestMember {
    pub id: String,
    #[serde(default)]
    pub true_state: bool,
}

/// Manifest schema. `brick_path_template` is resolved relative to the manifest
/// directory and may use `{member}` (member id), `{m}` (member index) and `{t}`
/// (time index).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub grid_dims: GridDims,
    pub variables: Vec<ManifestVariable>,
    pub members: Vec<ManifestMember>,
    pub times: Vec<String>,
    pub brick_path_template: String,
    pub value_type: String,
    pub layout: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub altitudes: Option<Vec<f64>>,
}

impl Manifest {
    pub fn brick_path(&self, m: usize, t: usize) -> String {
        self.brick_path_template
            .replace("{member}", &self.members[m].id)
            .replace("{m}", &m.to_string())
            .replace("{t}", &t.to_string())
    }
}

pub(crate) fn read_brick(path: &Path, n_values: usize) -> Result<Vec<f32>> {
    let bytes = fs::read(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingBrick { path: path.to_path_buf() },
        _ => Error::io(path, e),
    })?;
    let expected = (n_values * 4) as u64;
    if bytes.len() as u64 != expected {
        return Err(Error::BrickSize {
            path: path.to_path_buf(),
            expected,
            actual: bytes.len() as u64,
        });
    }
    let values: Vec<f32> = bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    check_finite(&values, &path.display().to_string())?;
    Ok(values)
}

/// Parses a manifest and checks that every brick exists with the declared
/// length. Brick contents are read lazily.
pub fn load_dataset(manifest_path: impl AsRef<Path>) -> Result<EnsembleDataset> {
    let manifest_path = manifest_path.as_ref();
    let text = fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| Error::ManifestParse {
        path: manifest_path.to_path_buf(),
        message: e.to_string(),
    })?;
    let invalid = |message: String| Error::ManifestInvalid {
        path: manifest_path.to_path_buf(),
        message,
    };
    if manifest.value_type != VALUE_TYPE {
        return Err(invalid(format!(
            "value_type {:?} is not supported (expected {VALUE_TYPE:?})",
            manifest.value_type
        )));
    }
    if manifest.layout != LAYOUT {
        return Err(invalid(format!(
            "layout {:?} is not supported (expected {LAYOUT:?})",
            manifest.layout
        )));
    }

    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let n_values = manifest.grid_dims.len() * manifest.variables.len();
    let expected = (n_values * 4) as u64;
    let mut paths = Vec::with_capacity(manifest.members.len() * manifest.times.len());
    for t in 0..manifest.times.len() {
        for m in 0..manifest.members.len() {
            let path = base.join(manifest.brick_path(m, t));
            let meta = fs::metadata(&path).map_err(|_| Error::MissingBrick { path: path.clone() })?;
            if meta.len() != expected {
                return Err(Error::BrickSize {
                    path,
                    expected,
                    actual: meta.len(),
                });
            }
            paths.push(path);
        }
    }

    let variables = manifest
        .variables
        .iter()
        .enumerate()
        .map(|(index, v)| VariableMeta {
            name: v.name.clone(),
            unit: v.unit.clone(),
            index,
        })
        .collect();
    let members = manifest
        .members
        .iter()
        .map(|m| MemberMeta {
            id: m.id.clone(),
            true_state: m.true_state,
        })
        .collect();
    EnsembleDataset::from_parts(
        members,
        manifest.grid_dims,
        manifest.times.clone(),
        variables,
        manifest.altitudes.clone(),
        Storage::Files(paths),
    )
    .map_err(|e| match e {
        Error::InvalidDims(message) => invalid(message),
        other => other,
    })
}

/// Writes `ds` under `dir` as `manifest.json` plus brick files and returns the
/// manifest path.
pub fn write_dataset(ds: &EnsembleDataset, dir: impl AsRef<Path>) -> Result<PathBuf> {
    let dir = dir.as_ref();
    let manifest = Manifest {
        grid_dims: ds.grid(),
        variables: ds
            .variables()
            .iter()
            .map(|v| ManifestVariable {
                name: v.name.clone(),
                unit: v.unit.clone(),
            })
            .collect(),
        members: ds
            .members()
            .iter()
            .map(|m| ManifestMember {
                id: m.id.clone(),
                true_state: m.true_state,
            })
            .collect(),
        times: ds.times().to_vec(),
        brick_path_template: DEFAULT_TEMPLATE.to_string(),
        value_type: VALUE_TYPE.to_string(),
        layout: LAYOUT.to_string(),
        altitudes: ds.altitudes().map(<[f64]>::to_vec),
    };

    for t in 0..ds.n_times() {
        for m in 0..ds.n_members() {
            let path = dir.join(manifest.brick_path(m, t));
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
            }
            let brick = ds.brick(m, t)?;
            let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
            let mut out = BufWriter::new(file);
            for v in brick.iter() {
                out.write_all(&v.to_le_bytes()).map_err(|e| Error::io(&path, e))?;
            }
            out.flush().map_err(|e| Error::io(&path, e))?;
        }
    }

    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let manifest_path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&manifest_path, text).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(manifest_path)
}
