//! Binned parallel-coordinate histograms for one member, before and after
//! brushing an axis.
//!
//! cargo run --example binned_histograms -- [RULE]
//!
//! RULE is one of sturges, doane, scott, fd or fixed:K (default sturges).

use apcp::analytics::{normalize_slice, NormalizedSlice};
use apcp::binning::{build_histograms, BinRule};
use apcp::store::{generate_synthetic, slice_time, GridDims, SyntheticSpec};
use apcp::{AxisOrder, BrushSet};

fn main() -> apcp::Result<()> {
    let rule: BinRule = std::env::args().nth(1).as_deref().unwrap_or("sturges").parse()?;
    let spec = SyntheticSpec::new(GridDims::new(24, 24, 8), 3, vec![0.9, -0.9]).with_seed(5);
    let ds = generate_synthetic(&spec)?;
    let slice = slice_time(&ds, 0)?;
    let norm = normalize_slice(&slice);
    let view = NormalizedSlice::new(&slice, &norm);
    let order = AxisOrder::identity(slice.n_vars());

    for brush in [BrushSet::new(3), BrushSet::new(3).with(0, 0.6, 1.0)?] {
        let h = build_histograms(&view, 0, &order, &brush, rule)?;
        println!("brush [{}] rule {rule}: {} active points, bins {:?}", brush.key(), h.active, h.bins);
        for pair in &h.histograms {
            let densest = pair.draw_order.last().copied().unwrap_or(0);
            println!(
                "  v{} -> v{}: {} non-empty cells, densest cell ({}, {}) holds {}",
                pair.left_var,
                pair.right_var,
                pair.draw_order.len(),
                densest / pair.bins_right,
                densest % pair.bins_right,
                pair.counts[densest]
            );
        }
    }
    Ok(())
}
