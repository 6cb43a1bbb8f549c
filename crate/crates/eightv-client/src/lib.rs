//! Async client for the eightv service. Every method mirrors one function
//! in `eightv_api::ops` and returns the same error kinds.

use eightv_api::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    /// The service answered with a structured error.
    #[error("{0}")]
    Api(ApiError),
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
}

impl ClientError {
    /// Transport failures count as internal errors.
    pub fn into_api(self) -> ApiError {
        match self {
            ClientError::Api(e) => e,
            ClientError::Transport(e) => ApiError::internal(format!("request failed: {e}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    pub fn new(base: impl Into<String>) -> Self {
        Client { base: base.into().trim_end_matches('/').to_string(), http: reqwest::Client::new() }
    }

    async fn post<Q: Serialize, R: DeserializeOwned>(&self, path: &str, req: &Q) -> Result<R, ClientError> {
        let resp = self.http.post(format!("{}/{path}", self.base)).json(req).send().await?;
        if resp.status().is_success() {
            Ok(resp.json().await?)
        } else {
            let status = resp.status();
            let text = resp.text().await?;
            let err = serde_json::from_str(&text)
                .unwrap_or_else(|_| ApiError::internal(format!("{status}: {text}")));
            Err(ClientError::Api(err))
        }
    }

    pub async fn health(&self) -> Result<Health, ClientError> {
        Ok(self.http.get(format!("{}/health", self.base)).send().await?.error_for_status()?.json().await?)
    }

    pub async fn classify(&self, req: &ClassifyRequest) -> Result<Verdict, ClientError> {
        self.post("classify", req).await
    }

    pub async fn eval(&self, req: &EvalRequest) -> Result<ValueResponse, ClientError> {
        self.post("eval", req).await
    }

    pub async fn eval_affine(&self, req: &EvalRequest) -> Result<ValueResponse, ClientError> {
        self.post("eval-affine", req).await
    }

    pub async fn eo(&self, req: &GraphRequest) -> Result<ValueResponse, ClientError> {
        self.post("eo", req).await
    }

    pub async fn tutte(&self, req: &GraphRequest) -> Result<ValueResponse, ClientError> {
        self.post("tutte33", req).await
    }

    pub async fn ising(&self, req: &IsingRequest) -> Result<IsingResponse, ClientError> {
        self.post("ising", req).await
    }

    pub async fn check_cert(&self, req: &CheckCertRequest) -> Result<CheckCertResponse, ClientError> {
        self.post("check-cert", req).await
    }

    pub async fn demo_interp(&self, req: &InterpRequest) -> Result<InterpolationReport, ClientError> {
        self.post("demo-interp", req).await
    }
}
