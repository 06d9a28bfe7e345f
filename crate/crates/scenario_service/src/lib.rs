//! Stateless HTTP JSON API over the projection engine.
//!
//! `POST /api/project`, `GET /api/presets`, `GET /api/erosion?d=&years=` and
//! `GET /api/openapi.json`. Every failure answers `{"errors": [{field, message}]}`.

pub mod api;
pub mod error;

use std::collections::HashMap;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, HeaderValue, Method};
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::{Json, Router};
use thiserror::Error;
use tower_http::cors::{Any, CorsLayer};

use scheme_core::{bundled, PresetRegistry};

pub use api::{
    erosion_curve, preset_listing, project, AssumptionOverrides, ErosionCurve, ErosionPoint,
    LossPair, PresetListing, ProjectRequest, ProjectResponse, Trajectory, DEFAULT_EROSION_YEARS,
    MAX_EROSION_YEARS,
};
pub use error::{ApiError, ErrorBody, FieldError};

/// OpenAPI document describing every endpoint and body.
pub const OPENAPI: &str = include_str!("../openapi.json");

pub const PORT_VAR: &str = "PENSIONLAB_PORT";
pub const HOST_VAR: &str = "PENSIONLAB_HOST";
pub const ORIGIN_VAR: &str = "PENSIONLAB_UI_ORIGIN";
pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("{var}: {message}")]
    Config { var: &'static str, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceConfig {
    pub host: IpAddr,
    pub port: u16,
    /// Origin allowed by CORS; any origin when unset.
    pub ui_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            host: IpAddr::V4(Ipv4Addr::LOCALHOST),
            port: DEFAULT_PORT,
            ui_origin: None,
        }
    }
}

impl ServiceConfig {
    pub fn from_env() -> Result<Self, ServiceError> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, ServiceError> {
        let mut config = Self::default();
        if let Some(port) = lookup(PORT_VAR) {
            config.port = port.trim().parse().map_err(|e| ServiceError::Config {
                var: PORT_VAR,
                message: format!("`{port}`: {e}"),
            })?;
        }
        if let Some(host) = lookup(HOST_VAR) {
            config.host = host.trim().parse().map_err(|e| ServiceError::Config {
                var: HOST_VAR,
                message: format!("`{host}`: {e}"),
            })?;
        }
        config.ui_origin = lookup(ORIGIN_VAR).filter(|o| !o.trim().is_empty());
        Ok(config)
    }

    pub fn addr(&self) -> SocketAddr {
        SocketAddr::new(self.host, self.port)
    }
}

#[derive(Clone, Copy)]
struct AppState {
    registry: &'static PresetRegistry,
}

fn cors(origin: Option<&str>) -> Result<CorsLayer, ServiceError> {
    let layer = CorsLayer::new()
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Ok(match origin {
        None => layer.allow_origin(Any),
        Some(o) => layer.allow_origin(HeaderValue::from_str(o).map_err(|e| {
            ServiceError::Config {
                var: ORIGIN_VAR,
                message: format!("`{o}`: {e}"),
            }
        })?),
    })
}

/// Router over the bundled presets, open to any origin.
pub fn router() -> Router {
    app(bundled(), None).expect("permissive CORS needs no parsing")
}

pub fn app(registry: &'static PresetRegistry, ui_origin: Option<&str>) -> Result<Router, ServiceError> {
    Ok(Router::new()
        .route("/api/project", post(project_handler))
        .route("/api/presets", get(presets_handler))
        .route("/api/erosion", get(erosion_handler))
        .route("/api/openapi.json", get(openapi_handler))
        .with_state(AppState { registry })
        .layer(cors(ui_origin)?))
}

pub async fn serve(config: ServiceConfig) -> Result<(), ServiceError> {
    let app = app(bundled(), config.ui_origin.as_deref())?;
    let listener = tokio::net::TcpListener::bind(config.addr()).await?;
    axum::serve(listener, app).await?;
    Ok(())
}

/// Parse a request body, naming the offending field on failure.
pub fn parse_request(body: &[u8]) -> Result<ProjectRequest, ApiError> {
    let de = &mut serde_json::Deserializer::from_slice(body);
    let request: ProjectRequest = serde_path_to_error::deserialize(&mut *de).map_err(|e| {
        let path = e.path().to_string();
        let field = match path.as_str() {
            "." | "?" => "body".to_string(),
            _ => path,
        };
        ApiError::invalid(field, e.inner().to_string())
    })?;
    de.end()
        .map_err(|e| ApiError::invalid("body", e.to_string()))?;
    Ok(request)
}

async fn project_handler(State(state): State<AppState>, body: Bytes) -> Result<impl IntoResponse, ApiError> {
    let request = parse_request(&body)?;
    Ok(Json(project(state.registry, &request)?))
}

async fn presets_handler(State(state): State<AppState>) -> impl IntoResponse {
    Json(preset_listing(state.registry))
}

fn query_param<T: std::str::FromStr>(
    params: &HashMap<String, String>,
    name: &str,
) -> Result<Option<T>, ApiError>
where
    T::Err: std::fmt::Display,
{
    params
        .get(name)
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|e| ApiError::invalid(name, format!("`{v}`: {e}")))
        })
        .transpose()
}

async fn erosion_handler(
    query: Result<Query<HashMap<String, String>>, axum::extract::rejection::QueryRejection>,
) -> Result<impl IntoResponse, ApiError> {
    let Query(params) = query.map_err(|e| ApiError::invalid("query", e.body_text()))?;
    let d: f64 = query_param(&params, "d")?
        .ok_or_else(|| ApiError::invalid("d", "required"))?;
    let years = query_param(&params, "years")?.unwrap_or(DEFAULT_EROSION_YEARS);
    Ok(Json(erosion_curve(d, years)?))
}

async fn openapi_handler() -> impl IntoResponse {
    ([(header::CONTENT_TYPE, "application/json")], OPENAPI)
}
