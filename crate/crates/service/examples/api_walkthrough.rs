//! Drives the HTTP API in-process: create a session, submit and accept
//! sentences, page through answers, and run an execution by replies.
//! `cewb serve` exposes the same router on a socket.

use axum::body::Body;
use axum::http::Request;
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use cewb_service::{router, AppState};

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> Value {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let body = body.map_or_else(Body::empty, |b| Body::from(b.to_string()));
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value: Value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    println!("{method} {uri} -> {status}\n  {value}");
    value
}

#[tokio::main]
async fn main() {
    let app = router(AppState::new());
    let id = call(&app, "POST", "/api/sessions", None).await["id"].as_str().unwrap().to_string();
    for text in [
        "The customer enters a card and a personal code.",
        "SimpleMat checks the personal code.",
        "If the personal code is valid then SimpleMat accepts the card.",
        "If the personal code is not valid then SimpleMat rejects the card.",
    ] {
        call(&app, "POST", &format!("/api/sessions/{id}/sentences"), Some(json!({ "text": text }))).await;
        call(&app, "POST", &format!("/api/sessions/{id}/decision"), Some(json!({ "accept": true }))).await;
    }
    let query = format!("/api/sessions/{id}/query");
    call(&app, "POST", &query, Some(json!({ "text": "What does the customer enter?" }))).await;
    call(&app, "POST", &query, Some(json!({ "text": "What does the customer enter?", "offset": 1 }))).await;

    let exec = call(&app, "POST", &format!("/api/sessions/{id}/executions"), None).await["execId"]
        .as_str()
        .unwrap()
        .to_string();
    for reply in ["john is a customer", "bank_card is a card", "1234 is a personal_code", "s1 is a simplemat", "1234 is not valid"] {
        call(&app, "GET", &format!("/api/executions/{exec}/next"), None).await;
        call(&app, "POST", &format!("/api/executions/{exec}/reply"), Some(json!({ "text": reply }))).await;
    }
    call(&app, "GET", &format!("/api/executions/{exec}/next"), None).await;
}
