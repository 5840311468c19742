use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use lru::LruCache;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analytics::{classify_pattern, normalize_slice, slice_geometry, MemberGeometry, NormalizedSlice, Normalizer, Thresholds};
use crate::binning::{build_histograms, BinRule, MemberHistograms};
use crate::brush::BrushSet;
use crate::bundling::PathExport;
use crate::error::{Error, Result};
use crate::order::AxisOrder;
use crate::pipeline::{assemble, layouts_for};
use crate::section::{extract_section, palette_stops};
use crate::store::{load_dataset, slice_time, EnsembleDataset, TimeSliceView};

const CACHE_ENTRIES: usize = 64;

#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub manifest: PathBuf,
    pub time: usize,
    pub rule: BinRule,
    pub thresholds: Thresholds,
    pub port: u16,
}

impl SessionConfig {
    pub fn new(manifest: impl Into<PathBuf>) -> Self {
        Self {
            manifest: manifest.into(),
            time: 0,
            rule: BinRule::default(),
            thresholds: Thresholds::default(),
            port: 8080,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApiResponse {
    pub status: u16,
    pub content_type: &'static str,
    pub body: Vec<u8>,
}

impl ApiResponse {
    fn json(status: u16, value: &impl Serialize) -> Self {
        Self {
            status,
            content_type: "application/json",
            body: serde_json::to_vec(value).expect("response serializes"),
        }
    }

    fn error(status: u16, message: impl std::fmt::Display) -> Self {
        Self::json(status, &json!({ "error": message.to_string() }))
    }

    pub fn json_body(&self) -> Option<Value> {
        serde_json::from_slice(&self.body).ok()
    }
}

/// A request failure with its HTTP status.
struct Reject(u16, String);

impl From<Error> for Reject {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::OutOfRange { what: "member", .. } => 404,
            Error::OutOfRange { what: "layer", .. } | Error::OutOfRange { what: "variable", .. } => 404,
            Error::EmptySelection { .. } => 422,
            Error::BadOrder(_) | Error::BadBrush(_) | Error::BadRule(_) | Error::OutOfRange { .. } => 400,
            _ => 500,
        };
        Reject(status, e.to_string())
    }
}

type Handled = std::result::Result<ApiResponse, Reject>;

/// One immutable (dataset, time step) pair with memoized analytics.
pub struct Session {
    config: SessionConfig,
    dataset: EnsembleDataset,
    slice: TimeSliceView,
    normalizer: Normalizer,
    geometry: Mutex<LruCache<String, Arc<Vec<MemberGeometry>>>>,
    histograms: Mutex<LruCache<String, Arc<MemberHistograms>>>,
}

impl Session {
    pub fn open(config: SessionConfig) -> Result<Self> {
        let dataset = load_dataset(&config.manifest)?;
        Self::from_dataset(config, dataset)
    }

    pub fn from_dataset(config: SessionConfig, dataset: EnsembleDataset) -> Result<Self> {
        let slice = slice_time(&dataset, config.time)?;
        let normalizer = normalize_slice(&slice);
        let cap = NonZeroUsize::new(CACHE_ENTRIES).expect("non-zero");
        Ok(Self {
            config,
            dataset,
            slice,
            normalizer,
            geometry: Mutex::new(LruCache::new(cap)),
            histograms: Mutex::new(LruCache::new(cap)),
        })
    }

    pub fn dataset(&self) -> &EnsembleDataset {
        &self.dataset
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    fn view(&self) -> NormalizedSlice<'_> {
        NormalizedSlice::new(&self.slice, &self.normalizer)
    }

    fn geometry(&self, order: &AxisOrder, brush: &BrushSet) -> Result<Arc<Vec<MemberGeometry>>> {
        let key = format!("{:?}|{}", order.axes(), brush.key());
        if let Some(hit) = self.geometry.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(slice_geometry(&self.view(), order, Some(brush))?);
        self.geometry.lock().expect("cache lock").put(key, computed.clone());
        Ok(computed)
    }

    fn histograms(&self, m: usize, order: &AxisOrder, brush: &BrushSet, rule: BinRule) -> Result<Arc<MemberHistograms>> {
        let key = format!("{m}|{:?}|{}|{rule}", order.axes(), brush.key());
        if let Some(hit) = self.histograms.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(build_histograms(&self.view(), m, order, brush, rule)?);
        self.histograms.lock().expect("cache lock").put(key, computed.clone());
        Ok(computed)
    }

    fn resolve_var(&self, token: &str) -> Option<usize> {
        self.dataset
            .variable_index(token)
            .or_else(|| token.parse().ok().filter(|&j| j < self.dataset.n_vars()))
    }

    fn resolve_member(&self, token: &str) -> std::result::Result<usize, Reject> {
        if let Some(m) = self.dataset.members().iter().position(|m| m.id == token) {
            return Ok(m);
        }
        match token.parse::<usize>() {
            Ok(m) if m < self.dataset.n_members() => Ok(m),
            Ok(m) => Err(Reject(404, format!("unknown member {m}"))),
            Err(_) => Err(Reject(404, format!("unknown member {token:?}"))),
        }
    }

    fn order(&self, q: &Query) -> std::result::Result<AxisOrder, Reject> {
        match q.get("order") {
            Some(text) => Ok(AxisOrder::parse(text, self.dataset.variables())?),
            None => Ok(AxisOrder::identity(self.dataset.n_vars())),
        }
    }

    fn brush(&self, q: &Query) -> std::result::Result<BrushSet, Reject> {
        let text = q.get("brush").unwrap_or("");
        Ok(BrushSet::parse(text, self.dataset.n_vars(), |t| self.resolve_var(t))?)
    }

    fn names(&self, order: &AxisOrder) -> Vec<&str> {
        order
            .axes()
            .iter()
            .map(|&j| self.dataset.variables()[j].name.as_str())
            .collect()
    }

    fn meta(&self) -> Handled {
        let ds = &self.dataset;
        Ok(ApiResponse::json(
            200,
            &json!({
                "grid_dims": ds.grid(),
                "n_grid": ds.n_grid(),
                "variables": ds.variables().iter().map(|v| json!({
                    "index": v.index, "name": v.name, "unit": v.unit,
                })).collect::<Vec<_>>(),
                "members": ds.members().iter().enumerate().map(|(k, m)| json!({
                    "index": k, "id": m.id, "true_state": m.true_state,
                })).collect::<Vec<_>>(),
                "n_times": ds.n_times(),
                "times": ds.times(),
                "time_index": self.config.time,
                "palette": palette_stops(),
                "altitudes": ds.altitudes(),
                "bin_rule": self.config.rule,
                "thresholds": self.config.thresholds,
            }),
        ))
    }

    fn apcp(&self, q: &Query) -> Handled {
        let order = self.order(q)?;
        let brush = self.brush(q)?;
        let rescale = q.flag("rescale")?;
        let geometry = self.geometry(&order, &brush)?;
        let apcp = assemble(order.clone(), geometry.as_ref().clone(), rescale)?;
        let members: Vec<Value> = apcp
            .members
            .iter()
            .zip(&apcp.paths)
            .map(|(g, path)| {
                let meta = &self.dataset.members()[g.member];
                json!({
                    "member": g.member,
                    "id": meta.id,
                    "true_state": meta.true_state,
                    "active": g.active,
                    "means": g.line.values,
                    "stats": g.stats.iter().map(|s| json!({
                        "pair": s.pair,
                        "mean": s.mean,
                        "variance": s.variance,
                        "pattern": classify_pattern(s, &self.config.thresholds),
                    })).collect::<Vec<_>>(),
                    "path": PathExport::from(path).pairs,
                })
            })
            .collect();
        Ok(ApiResponse::json(
            200,
            &json!({
                "time_index": self.config.time,
                "order": self.names(&order),
                "rescale": rescale,
                "members": members,
                "layouts": apcp.layouts,
            }),
        ))
    }

    fn adp(&self, q: &Query) -> Handled {
        let order = self.order(q)?;
        let brush = self.brush(q)?;
        let rescale = q.flag("rescale")?;
        let pair: usize = q.parse("pair")?.ok_or_else(|| Reject(400, "missing pair".into()))?;
        if pair >= order.n_pairs() {
            return Err(Reject(400, format!("pair {pair} out of range ({} pairs)", order.n_pairs())));
        }
        let geometry = self.geometry(&order, &brush)?;
        let layout = layouts_for(&geometry, order.n_pairs(), rescale).swap_remove(pair);
        let names = self.names(&order);
        Ok(ApiResponse::json(
            200,
            &json!({
                "left": names[pair],
                "right": names[pair + 1],
                "layout": layout,
            }),
        ))
    }

    fn bpcp(&self, q: &Query) -> Handled {
        let member = self.resolve_member(q.get("member").ok_or_else(|| Reject(400, "missing member".into()))?)?;
        let order = self.order(q)?;
        let brush = self.brush(q)?;
        let rule = match q.get("rule") {
            Some(r) => r.parse::<BinRule>()?,
            None => self.config.rule,
        };
        let hist = self.histograms(member, &order, &brush, rule)?;
        Ok(ApiResponse::json(
            200,
            &json!({
                "member": member,
                "id": self.dataset.members()[member].id,
                "rule": rule,
                "order": self.names(&order),
                "active": hist.active,
                "bins": hist.bins,
                "histograms": hist.histograms.iter().map(|h| h.export()).collect::<Vec<_>>(),
            }),
        ))
    }

    fn section(&self, q: &Query) -> Handled {
        let member = self.resolve_member(q.get("member").ok_or_else(|| Reject(400, "missing member".into()))?)?;
        let var_token = q.get("var").ok_or_else(|| Reject(400, "missing var".into()))?;
        let var = match self.dataset.variable_index(var_token) {
            Some(j) => j,
            None => var_token
                .parse::<usize>()
                .map_err(|_| Reject(404, format!("unknown variable {var_token:?}")))?,
        };
        let z: usize = q.parse("z")?.ok_or_else(|| Reject(400, "missing z".into()))?;
        let section = extract_section(&self.slice, &self.normalizer, member, var, z)?;
        if q.get("format") == Some("raw") {
            return Ok(ApiResponse {
                status: 200,
                content_type: "application/octet-stream",
                body: section.raw_bytes(),
            });
        }
        let bounds = self.slice.var_bounds()[var];
        Ok(ApiResponse::json(
            200,
            &json!({
                "member": member,
                "variable": var,
                "name": self.dataset.variables()[var].name,
                "z_index": z,
                "altitude": self.dataset.altitudes().map(|a| a[z]),
                "nx": section.nx,
                "ny": section.ny,
                "bounds": bounds,
                "rgb": section.rgb(),
                "values": section.values,
                "normalized": section.normalized,
            }),
        ))
    }

    fn route(&self, path: &str, q: &Query) -> Handled {
        match path {
            "/api/meta" => self.meta(),
            "/api/apcp" => self.apcp(q),
            "/api/adp" => self.adp(q),
            "/api/bpcp" => self.bpcp(q),
            "/api/section" => self.section(q),
            _ => Err(Reject(404, format!("no route for {path}"))),
        }
    }
}

const ROUTES: [&str; 5] = ["/api/meta", "/api/apcp", "/api/adp", "/api/bpcp", "/api/section"];

struct Query(HashMap<String, String>);

impl Query {
    fn parse_str(query: &str) -> Self {
        Self(url::form_urlencoded::parse(query.as_bytes()).into_owned().collect())
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> std::result::Result<Option<T>, Reject> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| Reject(400, format!("bad {key} {v:?}"))))
            .transpose()
    }

    fn flag(&self, key: &str) -> std::result::Result<bool, Reject> {
        match self.get(key) {
            None | Some("false") | Some("0") => Ok(false),
            Some("true") | Some("1") | Some("") => Ok(true),
            Some(v) => Err(Reject(400, format!("bad {key} {v:?}"))),
        }
    }
}

/// Front door of the API: answers 503 until a session is installed.
#[derive(Default)]
pub struct Gateway {
    session: OnceLock<Arc<Session>>,
}

impl Gateway {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_session(session: Session) -> Self {
        let g = Self::new();
        g.install(session);
        g
    }

    /// Installs the session; later calls are ignored.
    pub fn install(&self, session: Session) {
        let _ = self.session.set(Arc::new(session));
    }

    pub fn is_ready(&self) -> bool {
        self.session.get().is_some()
    }

    /// Handles `GET <path>?<query>`.
    pub fn get(&self, path_and_query: &str) -> ApiResponse {
        let (path, query) = path_and_query.split_once('?').unwrap_or((path_and_query, ""));
        if !ROUTES.contains(&path) {
            return ApiResponse::error(404, format!("no route for {path}"));
        }
        let Some(session) = self.session.get() else {
            return ApiResponse::error(503, "dataset is still loading");
        };
        match session.route(path, &Query::parse_str(query)) {
            Ok(resp) => resp,
            Err(Reject(status, message)) => ApiResponse::error(status, message),
        }
    }
}
