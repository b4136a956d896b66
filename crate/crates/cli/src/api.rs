//! JSON-over-HTTP endpoints. Every request is handled independently on the
//! blocking pool; nothing is shared between requests.

use axum::body::Bytes;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::{Json, Router};
use reflector_core::campaign::{
    coverage, improvement_curve, run_campaign, simulate, CampaignResult, CoverageRequest,
    ImprovementCurve, OrientationReport, ScenarioConfig, SimulationRequest,
};
use reflector_core::geometry::{LayoutDocument, PAPER_PANEL_WIDTH};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::commands::solve_layout;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRequest {
    pub layout: LayoutDocument,
    #[serde(default = "paper_width")]
    pub panel_width: f64,
}

fn paper_width() -> f64 {
    PAPER_PANEL_WIDTH
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignResponse {
    #[serde(flatten)]
    pub result: CampaignResult,
    pub improvement: ImprovementCurve,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self { status, message: message.into() }
    }
}

impl From<reflector_core::Error> for ApiError {
    fn from(e: reflector_core::Error) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(ErrorBody { error: self.message })).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, format!("invalid request body: {e}")))
}

async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map(Json)
}

async fn solve_orientation(body: Bytes) -> ApiResult<OrientationReport> {
    let req: SolveRequest = parse(&body)?;
    blocking(move || Ok(solve_layout(&req.layout, req.panel_width)?)).await
}

async fn simulate_one(body: Bytes) -> ApiResult<reflector_core::campaign::SimulationResult> {
    let req: SimulationRequest = parse(&body)?;
    blocking(move || Ok(simulate(&req)?)).await
}

async fn campaign(body: Bytes) -> ApiResult<CampaignResponse> {
    let config: ScenarioConfig = parse(&body)?;
    blocking(move || {
        let result = run_campaign(&config)?;
        let improvement = improvement_curve(&result);
        Ok(CampaignResponse { result, improvement })
    })
    .await
}

async fn coverage_grid(body: Bytes) -> ApiResult<reflector_core::campaign::CoverageGrid> {
    let req: CoverageRequest = parse(&body)?;
    blocking(move || Ok(coverage(&req)?)).await
}

pub fn router() -> Router {
    Router::new()
        .route("/api/solve-orientation", post(solve_orientation))
        .route("/api/simulate", post(simulate_one))
        .route("/api/campaign", post(campaign))
        .route("/api/coverage", post(coverage_grid))
}
