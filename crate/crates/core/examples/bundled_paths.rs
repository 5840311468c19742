//! ADP layouts and the bundled Bézier control points of every member.
//!
//! cargo run --example bundled_paths

use apcp::analytics::{normalize_slice, NormalizedSlice};
use apcp::bundling::sample_path;
use apcp::pipeline::compute_apcp;
use apcp::store::{generate_synthetic, slice_time, GridDims, SyntheticSpec};
use apcp::AxisOrder;

fn main() -> apcp::Result<()> {
    let spec = SyntheticSpec::new(GridDims::new(20, 20, 10), 5, vec![0.8, -0.6]).with_seed(3);
    let ds = generate_synthetic(&spec)?;
    let slice = slice_time(&ds, 0)?;
    let norm = normalize_slice(&slice);
    let view = NormalizedSlice::new(&slice, &norm);

    let order = AxisOrder::identity(slice.n_vars());
    let apcp = compute_apcp(&view, &order, None, true)?;

    for layout in &apcp.layouts {
        println!(
            "region {}: band x [{:.2}, {:.2}], mean range {:?}, variance range {:?}",
            layout.pair, layout.band.x0, layout.band.x1, layout.mean_range, layout.var_range
        );
        for p in &layout.points {
            println!("  member {} at ({:.4}, {:.4})", p.member, p.x, p.y);
        }
    }
    for path in &apcp.paths {
        println!("member {}", path.member);
        for curve in &path.curves {
            let pts: Vec<String> = curve
                .control_points()
                .iter()
                .map(|p| format!("({:.3}, {:.3})", p.x, p.y))
                .collect();
            println!("  region {}: {}", curve.pair, pts.join(" "));
        }
        let samples = sample_path(path, 8)?;
        println!("  {} sampled points", samples.len());
    }
    Ok(())
}
