//! End-to-end APCP geometry: statistics, ADP layouts and bundled paths for
//! every member of a slice.

use rayon::prelude::*;

use crate::analytics::{member_geometry_from_brick, slice_geometry, MemberGeometry, NormalizedSlice, Normalizer};
use crate::brush::BrushSet;
use crate::bundling::{build_path, layout_adp, AdpLayout, Band, BundledPath};
use crate::error::Result;
use crate::order::AxisOrder;
use crate::store::{scan_bounds, EnsembleDataset};

#[derive(Debug, Clone, PartialEq)]
pub struct Apcp {
    pub order: AxisOrder,
    pub members: Vec<MemberGeometry>,
    pub layouts: Vec<AdpLayout>,
    pub paths: Vec<BundledPath>,
}

/// One ADP layout per interaxis region over all members.
pub fn layouts_for(members: &[MemberGeometry], n_pairs: usize, rescale: bool) -> Vec<AdpLayout> {
    (0..n_pairs)
        .map(|pair| {
            let stats: Vec<_> = members.iter().map(|g| g.stats[pair]).collect();
            layout_adp(pair, &stats, Band::for_pair(pair), rescale)
        })
        .collect()
}

/// Layouts and paths from precomputed member geometry.
pub fn assemble(order: AxisOrder, members: Vec<MemberGeometry>, rescale: bool) -> Result<Apcp> {
    let layouts = layouts_for(&members, order.n_pairs(), rescale);
    let paths = members
        .par_iter()
        .map(|g| build_path(&g.line, &layouts))
        .collect::<Result<Vec<_>>>()?;
    Ok(Apcp {
        order,
        members,
        layouts,
        paths,
    })
}

pub fn compute_apcp(
    view: &NormalizedSlice<'_>,
    order: &AxisOrder,
    brush: Option<&BrushSet>,
    rescale: bool,
) -> Result<Apcp> {
    let members = slice_geometry(view, order, brush)?;
    assemble(order.clone(), members, rescale)
}

/// Same result as [`compute_apcp`] on `slice_time(ds, t)`, but reads bricks
/// `batch` members at a time so the whole slice never has to fit in memory.
pub fn stream_apcp(ds: &EnsembleDataset, t: usize, order: &AxisOrder, rescale: bool, batch: usize) -> Result<Apcp> {
    let normalizer = Normalizer::from_bounds(&scan_bounds(ds, t)?);
    let batch = batch.max(1);
    let mut members = Vec::with_capacity(ds.n_members());
    for start in (0..ds.n_members()).step_by(batch) {
        let end = (start + batch).min(ds.n_members());
        let chunk = (start..end)
            .into_par_iter()
            .map(|m| {
                let brick = ds.brick(m, t)?;
                member_geometry_from_brick(m, &brick, &normalizer, order, None)
            })
            .collect::<Result<Vec<_>>>()?;
        members.extend(chunk);
    }
    assemble(order.clone(), members, rescale)
}
