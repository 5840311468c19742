//! Queries the JSON API in process, then optionally serves it over HTTP.
//!
//! cargo run --example serve_api            # print sample responses
//! cargo run --example serve_api -- 8080    # also listen on port 8080

use std::sync::Arc;

use apcp::server::{serve_on, Gateway, Session, SessionConfig};
use apcp::store::{generate_synthetic, GridDims, SyntheticSpec};

fn main() -> anyhow::Result<()> {
    let spec = SyntheticSpec::new(GridDims::new(16, 16, 8), 4, vec![0.8, -0.8]).with_seed(1).with_true_state(true);
    let ds = generate_synthetic(&spec)?;
    let gateway = Arc::new(Gateway::with_session(Session::from_dataset(SessionConfig::new("in-memory"), ds)?));

    for target in [
        "/api/meta",
        "/api/adp?pair=0&rescale=1",
        "/api/bpcp?member=truth&rule=fixed:4&brush=v0:0.25:0.75",
        "/api/section?member=1&var=v2&z=0",
        "/api/apcp?order=v0,v0,v1",
    ] {
        let resp = gateway.get(target);
        let body = String::from_utf8_lossy(&resp.body);
        let shown: String = body.chars().take(160).collect();
        println!("GET {target}\n  {} {shown}{}", resp.status, if body.len() > 160 { "..." } else { "" });
    }

    if let Some(port) = std::env::args().nth(1) {
        let port: u16 = port.parse()?;
        let rt = tokio::runtime::Runtime::new()?;
        rt.block_on(async {
            let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
            println!("listening on http://{}", listener.local_addr()?);
            serve_on(listener, gateway).await
        })?;
    }
    Ok(())
}
