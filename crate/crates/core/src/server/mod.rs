//! HTTP/JSON access to the analytics of one (dataset, time step) session.

mod api;
mod http;

pub use api::{ApiResponse, Gateway, Session, SessionConfig};
pub use http::{router, serve, serve_on};
