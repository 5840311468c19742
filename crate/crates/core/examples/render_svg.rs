//! Renders the bundled parallel-coordinate plot of a synthetic ensemble to SVG,
//! with the true state dashed and one member highlighted.
//!
//! cargo run --example render_svg -- [OUT.svg]

use apcp::analytics::{normalize_slice, NormalizedSlice};
use apcp::pipeline::compute_apcp;
use apcp::render::{render_svg, SvgOptions};
use apcp::store::{generate_synthetic, slice_time, GridDims, SyntheticSpec};
use apcp::AxisOrder;

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("apcp.svg"));
    let spec = SyntheticSpec::new(GridDims::new(24, 24, 12), 12, vec![0.9, -0.8, 0.3, -0.3])
        .with_seed(11)
        .with_true_state(true);
    let ds = generate_synthetic(&spec)?;
    let slice = slice_time(&ds, 0)?;
    let norm = normalize_slice(&slice);
    let view = NormalizedSlice::new(&slice, &norm);

    let order = AxisOrder::parse("v4,v0,v1,v2,v3", ds.variables())?;
    let apcp = compute_apcp(&view, &order, None, true)?;
    let names: Vec<String> = order.axes().iter().map(|&j| ds.variables()[j].name.clone()).collect();
    let truth: Vec<bool> = ds.members().iter().map(|m| m.true_state).collect();
    let opts = SvgOptions {
        highlight: Some(3),
        ..SvgOptions::default()
    };
    let svg = render_svg(&apcp, &names, &truth, &opts)?;
    std::fs::write(&out, svg)?;
    println!("wrote {} ({} members, {} axes)", out.display(), apcp.paths.len(), names.len());
    Ok(())
}
