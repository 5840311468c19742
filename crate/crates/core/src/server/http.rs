use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Body;
use axum::extract::State;
use axum::http::{header, Method, Request, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::Router;

use super::api::{Gateway, Session, SessionConfig};

async fn dispatch(State(gateway): State<Arc<Gateway>>, req: Request<Body>) -> Response {
    if req.method() != Method::GET {
        return (StatusCode::METHOD_NOT_ALLOWED, "only GET is supported").into_response();
    }
    let target = req
        .uri()
        .path_and_query()
        .map(|pq| pq.as_str().to_string())
        .unwrap_or_else(|| req.uri().path().to_string());
    let resp = match tokio::task::spawn_blocking(move || gateway.get(&target)).await {
        Ok(resp) => resp,
        Err(e) => return (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    };
    let status = StatusCode::from_u16(resp.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [(header::CONTENT_TYPE, resp.content_type)], resp.body).into_response()
}

pub fn router(gateway: Arc<Gateway>) -> Router {
    Router::new().fallback(dispatch).with_state(gateway)
}

/// Serves `gateway` on an already bound listener until the task is dropped.
pub async fn serve_on(listener: tokio::net::TcpListener, gateway: Arc<Gateway>) -> std::io::Result<()> {
    axum::serve(listener, router(gateway)).await
}

/// Binds the configured port, starts answering (503 while loading) and loads
/// the dataset in the background.
pub async fn serve(config: SessionConfig) -> std::io::Result<()> {
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    let gateway = Arc::new(Gateway::new());
    let loader = gateway.clone();
    std::thread::spawn(move || match Session::open(config) {
        Ok(session) => {
            eprintln!("dataset loaded");
            loader.install(session);
        }
        Err(e) => {
            eprintln!("failed to load dataset: {e}");
            std::process::exit(1);
        }
    });
    eprintln!("listening on {}", listener.local_addr()?);
    serve_on(listener, gateway).await
}
