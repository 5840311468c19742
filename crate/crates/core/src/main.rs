use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use apcp::analytics::{classify_pattern, normalize_slice, NormalizedSlice, Thresholds};
use apcp::binning::BinRule;
use apcp::pipeline::compute_apcp;
use apcp::render::{render_svg, SvgOptions};
use apcp::server::{serve, SessionConfig};
use apcp::store::{generate_synthetic, load_dataset, slice_time, write_dataset, GridDims, SyntheticSpec};
use apcp::AxisOrder;

#[derive(Parser)]
#[command(name = "apcp", version, about = "Angular parallel coordinates for ensemble data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic ensemble dataset.
    Gen(GenArgs),
    /// Write angle statistics and representative lines as JSON.
    Stats(SliceArgs),
    /// Write a static SVG of the bundled parallel coordinates.
    Render(RenderArgs),
    /// Serve the HTTP/JSON API.
    Serve(ServeArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 4)]
    members: usize,
    /// Grid extents as NXxNYxNZ.
    #[arg(long, default_value = "16x16x8")]
    grid: GridDims,
    #[arg(long, default_value_t = 3)]
    vars: usize,
    /// Adjacent-pair correlations; a single value applies to every pair.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.9")]
    rho: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    times: usize,
    /// Prepend a member flagged as the true state.
    #[arg(long)]
    true_state: bool,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SliceArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 0)]
    time: usize,
    /// Comma-separated variable names in axis order.
    #[arg(long)]
    order: Option<String>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    slice: SliceArgs,
    /// Rescale ADP axes to the members' value range.
    #[arg(long)]
    rescale: bool,
    #[arg(long, default_value_t = 16)]
    samples: usize,
    /// Member index drawn in red.
    #[arg(long)]
    highlight: Option<usize>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 0)]
    time: usize,
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Fixed bin count (shorthand for --rule fixed:K).
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    rule: Option<BinRule>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn gen(args: GenArgs) -> anyhow::Result<()> {
    let pairs = args.vars.saturating_sub(1);
    let rho = match args.rho.len() {
        1 => vec![args.rho[0]; pairs],
        n if n == pairs => args.rho,
        n => anyhow::bail!("{n} correlations given for {pairs} variable pairs"),
    };
    let spec = SyntheticSpec::new(args.grid, args.members, rho)
        .with_seed(args.seed)
        .with_times(args.times)
        .with_true_state(args.true_state);
    let ds = generate_synthetic(&spec)?;
    let manifest = write_dataset(&ds, &args.out)?;
    eprintln!("wrote {}", manifest.display());
    Ok(())
}

fn stats(args: SliceArgs) -> anyhow::Result<()> {
    let ds = load_dataset(&args.manifest)?;
    let slice = slice_time(&ds, args.time)?;
    let norm = normalize_slice(&slice);
    let view = NormalizedSlice::new(&slice, &norm);
    let order = match &args.order {
        Some(text) => AxisOrder::parse(text, ds.variables())?,
        None => AxisOrder::identity(ds.n_vars()),
    };
    let apcp = compute_apcp(&view, &order, None, false)?;
    let thresholds = Thresholds::default();
    let names: Vec<&str> = order.axes().iter().map(|&j| ds.variables()[j].name.as_str()).collect();
    let members: Vec<_> = apcp
        .members
        .iter()
        .map(|g| {
            let meta = &ds.members()[g.member];
            json!({
                "member": g.member,
                "id": meta.id,
                "true_state": meta.true_state,
                "means": g.line.values,
                "stats": g.stats.iter().map(|s| json!({
                    "pair": s.pair,
                    "left": names[s.pair],
                    "right": names[s.pair + 1],
                    "mean": s.mean,
                    "variance": s.variance,
                    "pattern": classify_pattern(s, &thresholds),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let doc = json!({ "time_index": args.time, "order": names, "members": members });
    emit(&args.out, &(serde_json::to_string_pretty(&doc)? + "\n"))
}

fn render(args: RenderArgs) -> anyhow::Result<()> {
    let ds = load_dataset(&args.slice.manifest)?;
    let slice = slice_time(&ds, args.slice.time)?;
    let norm = normalize_slice(&slice);
    let view = NormalizedSlice::new(&slice, &norm);
    let order = match &args.slice.order {
        Some(text) => AxisOrder::parse(text, ds.variables())?,
        None => AxisOrder::identity(ds.n_vars()),
    };
    let apcp = compute_apcp(&view, &order, None, args.rescale)?;
    let names: Vec<String> = order.axes().iter().map(|&j| ds.variables()[j].name.clone()).collect();
    let truth: Vec<bool> = ds.members().iter().map(|m| m.true_state).collect();
    let opts = SvgOptions {
        samples_per_segment: args.samples,
        highlight: args.highlight,
        ..SvgOptions::default()
    };
    emit(&args.slice.out, &render_svg(&apcp, &names, &truth, &opts)?)
}

fn run_server(args: ServeArgs) -> anyhow::Result<()> {
    let mut config = SessionConfig::new(args.manifest);
    config.time = args.time;
    config.port = args.port;
    config.rule = match (args.rule, args.bins) {
        (Some(rule), _) => rule,
        (None, Some(k)) => format!("fixed:{k}").parse()?,
        (None, None) => BinRule::default(),
    };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(serve(config))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Stats(a) => stats(a),
        Command::Render(a) => render(a),
        Command::Serve(a) => run_server(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
