//! Extracts one horizontal layer of a member and writes it as a colormapped
//! PPM image.
//!
//! cargo run --example cross_section -- [OUT.ppm]

use std::io::Write;

use apcp::analytics::normalize_slice;
use apcp::section::extract_section;
use apcp::store::{generate_synthetic, slice_time, GridDims, SyntheticSpec};

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("apcp-section.ppm"));
    let spec = SyntheticSpec::new(GridDims::new(48, 32, 6), 2, vec![0.5]).with_seed(9);
    let ds = generate_synthetic(&spec)?;
    let slice = slice_time(&ds, 0)?;
    let norm = normalize_slice(&slice);

    let section = extract_section(&slice, &norm, 1, 0, 3)?;
    let mut f = std::fs::File::create(&out)?;
    write!(f, "P6\n{} {}\n255\n", section.nx, section.ny)?;
    f.write_all(&section.rgb())?;

    let (lo, hi) = section
        .values
        .iter()
        .fold((f32::INFINITY, f32::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    println!(
        "layer {} of member {}: {}x{} values in [{lo:.4}, {hi:.4}], wrote {}",
        section.z_index,
        section.member,
        section.nx,
        section.ny,
        out.display()
    );
    Ok(())
}
