//! Routes: `GET /health` and one `POST /<op>` per operation, each taking and
//! returning the JSON types from `eightv-api`.

use axum::extract::rejection::JsonRejection;
use axum::extract::Json;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use eightv_api::{ops, ApiError, ErrorKind, Health};
use serde::de::DeserializeOwned;
use serde::Serialize;

struct Failure(ApiError);

impl IntoResponse for Failure {
    fn into_response(self) -> Response {
        let status = match self.0.kind {
            ErrorKind::Input => StatusCode::BAD_REQUEST,
            ErrorKind::Limit => StatusCode::UNPROCESSABLE_ENTITY,
            ErrorKind::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(self.0)).into_response()
    }
}

async fn blocking<Q, R>(req: Q, op: fn(&Q) -> Result<R, ApiError>) -> Result<Json<R>, Failure>
where
    Q: Send + 'static,
    R: Send + 'static,
{
    match tokio::task::spawn_blocking(move || op(&req)).await {
        Ok(r) => r.map(Json).map_err(Failure),
        Err(e) => Err(Failure(ApiError::internal(e.to_string()))),
    }
}

fn route<Q, R>(op: fn(&Q) -> Result<R, ApiError>) -> axum::routing::MethodRouter
where
    Q: DeserializeOwned + Send + 'static,
    R: Serialize + Send + 'static,
{
    post(move |req: Result<Json<Q>, JsonRejection>| async move {
        match req {
            Ok(Json(req)) => blocking(req, op).await,
            Err(e) => Err(Failure(ApiError::input(e.body_text()))),
        }
    })
}

async fn health() -> Json<Health> {
    Json(ops::health())
}

pub fn app() -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/classify", route(ops::classify))
        .route("/eval", route(ops::eval))
        .route("/eval-affine", route(ops::eval_affine))
        .route("/eo", route(ops::eo))
        .route("/tutte33", route(ops::tutte))
        .route("/ising", route(ops::ising))
        .route("/check-cert", route(ops::check_cert))
        .route("/demo-interp", route(ops::demo_interp))
}

pub async fn serve(listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, app()).await
}
