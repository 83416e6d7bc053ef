//! Thin HTTP client for the experiment service.

use anyhow::{bail, Context};
use bench::{Report, RunConfig};
use serde::de::DeserializeOwned;
use service::{ErrorBody, ExperimentRequest, Health, StaticRequest, StaticResponse};

#[derive(Clone, Debug)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base` is the service root, e.g. `http://127.0.0.1:8080`.
    pub fn new(base: impl Into<String>) -> Self {
        Client { base: base.into().trim_end_matches('/').to_string(), http: reqwest::Client::new() }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub async fn health(&self) -> anyhow::Result<Health> {
        decode(self.http.get(format!("{}/health", self.base)).send().await?).await
    }

    /// Runs an experiment on `graph`, an edge list in text form.
    pub async fn run_experiment(&self, config: &RunConfig, graph: String) -> anyhow::Result<Report> {
        let body = ExperimentRequest { config: config.clone(), graph };
        let resp = self.http.post(format!("{}/experiments", self.base)).json(&body).send().await;
        decode(resp.with_context(|| format!("contacting {}", self.base))?).await
    }

    pub async fn static_kcore(&self, graph: String, eps_prime: Option<f64>) -> anyhow::Result<StaticResponse> {
        let body = StaticRequest { graph, eps_prime };
        decode(self.http.post(format!("{}/static", self.base)).json(&body).send().await?).await
    }
}

async fn decode<T: DeserializeOwned>(resp: reqwest::Response) -> anyhow::Result<T> {
    let status = resp.status();
    if status.is_success() {
        return resp.json().await.context("malformed response");
    }
    let text = resp.text().await.unwrap_or_default();
    match serde_json::from_str::<ErrorBody>(&text) {
        Ok(e) => bail!("{status}: {}", e.error),
        Err(_) => bail!("{status}: {text}"),
    }
}
