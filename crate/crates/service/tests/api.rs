use std::net::SocketAddr;

use bench::{Problem, Report, RunConfig, Verdict};
use reqwest::StatusCode;
use serde_json::{json, Value};
use service::{BatchResponse, Coreness, ErrorBody, Health, InvariantStatus, SessionInfo, StaticResponse};

const SQUARE_WITH_DIAGONAL: &str = "0 1\n1 2\n2 3\n3 0\n0 2\n";

async fn start() -> String {
    let (addr, _) = service::spawn(SocketAddr::from(([127, 0, 0, 1], 0))).await.unwrap();
    format!("http://{addr}")
}

#[tokio::test]
async fn health_reports_ok() {
    let base = start().await;
    let h: Health = reqwest::get(format!("{base}/health")).await.unwrap().json().await.unwrap();
    assert_eq!(h.status, "ok");
}

#[tokio::test]
async fn experiment_round_trip() {
    let base = start().await;
    let config = RunConfig { problem: Problem::Kcore, batch_size: 2, ..RunConfig::default() };
    let resp = reqwest::Client::new()
        .post(format!("{base}/experiments"))
        .json(&json!({ "config": config, "graph": SQUARE_WITH_DIAGONAL }))
        .send()
        .await
        .unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let report: Report = resp.json().await.unwrap();
    assert_eq!(report.rows.len(), 3);
    assert!(report.rows.iter().all(|r| r.invariants == Verdict::Pass));
    assert_eq!(report.rows.last().unwrap().edges, 5);
    assert_eq!(report.values.rows.len(), 4);
}

#[tokio::test]
async fn experiment_rejects_bad_input() {
    let base = start().await;
    let client = reqwest::Client::new();
    let bad_config = json!({ "config": { "batch_size": 0 }, "graph": SQUARE_WITH_DIAGONAL });
    let resp = client.post(format!("{base}/experiments")).json(&bad_config).send().await.unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);
    let body: ErrorBody = resp.json().await.unwrap();
    assert!(body.error.contains("batch"), "{}", body.error);

    let bad_graph = json!({ "config": {}, "graph": "0 x\n" });
    let resp = client.post(format!("{base}/experiments")).json(&bad_graph).send().await.unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);

    let bad_problem = json!({ "config": { "problem": "clique(2)" }, "graph": "" });
    let resp = client.post(format!("{base}/experiments")).json(&bad_problem).send().await.unwrap();
    assert!(resp.status().is_client_error());
}

#[tokio::test]
async fn static_endpoint() {
    let base = start().await;
    let resp: StaticResponse = reqwest::Client::new()
        .post(format!("{base}/static"))
        .json(&json!({ "graph": SQUARE_WITH_DIAGONAL, "eps_prime": 1.0 }))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    assert_eq!(resp.exact, vec![2, 2, 2, 2]);
    let approx = resp.approx.unwrap();
    assert!(approx.iter().all(|&e| (2.0 / 3.0..=6.0).contains(&e)), "{approx:?}");
}

#[tokio::test]
async fn session_lifecycle() {
    let base = start().await;
    let client = reqwest::Client::new();
    let resp = client.post(format!("{base}/sessions")).json(&json!({ "num_vertices": 4 })).send().await.unwrap();
    assert_eq!(resp.status(), StatusCode::CREATED);
    let s: SessionInfo = resp.json().await.unwrap();
    let url = format!("{base}/sessions/{}", s.id);

    let b: BatchResponse = client
        .post(format!("{url}/batches"))
        .json(&json!({ "insertions": [[0, 1], [1, 2], [2, 0], [2, 3]] }))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    assert_eq!(b.num_edges, 4);

    let dup = client.post(format!("{url}/batches")).json(&json!({ "insertions": [[0, 1]] })).send().await.unwrap();
    assert_eq!(dup.status(), StatusCode::BAD_REQUEST);

    let c: Coreness = client.get(format!("{url}/coreness")).send().await.unwrap().json().await.unwrap();
    assert_eq!(c.levels.len(), 4);
    assert!(c.estimates.iter().all(|&e| e > 0.0));

    let inv: InvariantStatus = client.get(format!("{url}/invariants")).send().await.unwrap().json().await.unwrap();
    assert!(inv.ok, "{:?}", inv.violations);

    client.post(format!("{url}/batches")).json(&json!({ "deletions": [[2, 3]] })).send().await.unwrap();
    let info: SessionInfo = client.get(&url).send().await.unwrap().json().await.unwrap();
    assert_eq!(info.num_edges, 3);

    assert_eq!(client.delete(&url).send().await.unwrap().status(), StatusCode::NO_CONTENT);
    assert_eq!(client.get(&url).send().await.unwrap().status(), StatusCode::NOT_FOUND);
    assert_eq!(client.delete(&url).send().await.unwrap().status(), StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn sessions_are_independent() {
    let base = start().await;
    let client = reqwest::Client::new();
    let mut ids = Vec::new();
    for _ in 0..2 {
        let s: SessionInfo = client
            .post(format!("{base}/sessions"))
            .json(&json!({ "num_vertices": 3, "delta": 1.0 }))
            .send()
            .await
            .unwrap()
            .json()
            .await
            .unwrap();
        ids.push(s.id);
    }
    assert_ne!(ids[0], ids[1]);
    client
        .post(format!("{base}/sessions/{}/batches", ids[0]))
        .json(&json!({ "insertions": [[0, 1]] }))
        .send()
        .await
        .unwrap();
    let other: Value = client.get(format!("{base}/sessions/{}", ids[1])).send().await.unwrap().json().await.unwrap();
    assert_eq!(other["num_edges"], 0);
}
