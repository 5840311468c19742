//! Generates a small synthetic ensemble, writes it as a manifest plus raw
//! bricks, and loads it back.
//!
//! cargo run --example synthetic_dataset -- [OUT_DIR]

use apcp::store::{generate_synthetic, load_dataset, write_dataset, GridDims, SyntheticSpec};

fn main() -> apcp::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("apcp-synthetic"));

    let spec = SyntheticSpec::new(GridDims::new(16, 16, 8), 6, vec![0.9, -0.9, 0.2])
        .with_seed(42)
        .with_times(2)
        .with_true_state(true)
        .with_variable_names(vec!["qv".into(), "qc".into(), "qr".into(), "qs".into()]);
    let ds = generate_synthetic(&spec)?;
    let manifest = write_dataset(&ds, &out)?;
    println!("wrote {}", manifest.display());

    let back = load_dataset(&manifest)?;
    println!(
        "{} members x {} steps, grid {}, variables {:?}",
        back.n_members(),
        back.n_times(),
        back.grid(),
        back.variables().iter().map(|v| v.name.as_str()).collect::<Vec<_>>()
    );
    for (m, meta) in back.members().iter().enumerate() {
        let brick = back.brick(m, 0)?;
        assert_eq!(&*brick, &*ds.brick(m, 0)?);
        println!("  {:<6} true_state={:<5} first point {:?}", meta.id, meta.true_state, &brick[..back.n_vars()]);
    }
    Ok(())
}
