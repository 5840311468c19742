//! Angular mean and variance per member and interaxis region, with the
//! correlation pattern each one implies.
//!
//! cargo run --example angle_statistics

use apcp::analytics::{angle_stats, classify_pattern, normalize_slice, NormalizedSlice, Thresholds};
use apcp::store::{generate_synthetic, slice_time, GridDims, SyntheticSpec};

fn main() -> apcp::Result<()> {
    let spec = SyntheticSpec::new(GridDims::new(32, 32, 32), 4, vec![0.95, -0.95, 0.0]).with_seed(7);
    let ds = generate_synthetic(&spec)?;
    let slice = slice_time(&ds, 0)?;
    let norm = normalize_slice(&slice);
    let view = NormalizedSlice::new(&slice, &norm);
    let thresholds = Thresholds::default();

    println!("member  pair  rho     mean       variance   pattern");
    for m in 0..slice.n_members() {
        for (j, rho) in spec.rho.iter().enumerate() {
            let s = angle_stats(&view, m, j)?;
            let pattern = classify_pattern(&s, &thresholds);
            println!("{m:>6}  {j:>4}  {rho:>5.2}  {:>+9.5}  {:>9.5}  {pattern:?}", s.mean, s.variance);
        }
    }
    Ok(())
}
