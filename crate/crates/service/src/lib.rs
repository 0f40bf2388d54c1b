//! JSON over HTTP for specification sessions: sentence analysis with
//! accept/reject, lexicon edits, paged question answering, and a
//! request/reply channel for simulated execution.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use axum::body::Bytes;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cewb::diagnostics::Diagnostic;
use cewb::executor::{Execution, OracleMessage};
use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::session::{Session, SessionError};

type Shared<T> = Arc<Mutex<T>>;

/// Id tables only; each session and execution has its own lock, so requests
/// to different sessions do not wait for each other.
#[derive(Default)]
struct Registry {
    sessions: HashMap<String, Shared<Session>>,
    executions: HashMap<String, Shared<Execution>>,
    /// The execution currently attached to each session.
    active: HashMap<String, String>,
    next_session: u64,
    next_execution: u64,
}

#[derive(Clone, Default)]
pub struct AppState {
    inner: Arc<Mutex<Registry>>,
}

impl AppState {
    pub fn new() -> AppState {
        AppState::default()
    }

    fn registry(&self) -> std::sync::MutexGuard<'_, Registry> {
        self.inner.lock().expect("registry lock")
    }

    fn session(&self, id: &str) -> Result<Shared<Session>, ApiError> {
        self.registry().sessions.get(id).cloned().ok_or_else(|| ApiError::not_found("session", id))
    }

    fn execution(&self, id: &str) -> Result<Shared<Execution>, ApiError> {
        self.registry().executions.get(id).cloned().ok_or_else(|| ApiError::not_found("execution", id))
    }
}

pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> ApiError {
        ApiError { status, body: json!({ "error": message.into() }) }
    }

    fn not_found(what: &str, id: &str) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, format!("no {what} `{id}`"))
    }

    fn conflict(message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::CONFLICT, message)
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> ApiError {
        let status = match e {
            SessionError::NothingPending => StatusCode::CONFLICT,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError {
            status,
            body: json!({
                "error": e.to_string(),
                "diagnostics": e.diagnostics().iter().map(DiagnosticDto::from).collect::<Vec<_>>(),
                "unknownWords": e.unknown_words(),
            }),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Serialize)]
pub struct DiagnosticDto {
    code: String,
    message: String,
    severity: String,
    span: Option<[usize; 2]>,
}

impl From<&Diagnostic> for DiagnosticDto {
    fn from(d: &Diagnostic) -> DiagnosticDto {
        DiagnosticDto {
            code: d.code.to_string(),
            message: d.message.clone(),
            severity: d.severity.as_str().to_string(),
            span: d.span.as_ref().map(|s| [s.start, s.end]),
        }
    }
}

#[derive(Deserialize, Default)]
struct NewSession {
    /// Lexicon file text; the built-in example vocabulary when absent.
    lexicon: Option<String>,
}

/// Parses an optional JSON body; an empty body means the defaults.
fn optional_body<T: DeserializeOwned + Default>(body: &Bytes) -> Result<T, ApiError> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(T::default());
    }
    serde_json::from_slice(body).map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, format!("invalid request body: {e}")))
}

async fn create_session(State(state): State<AppState>, body: Bytes) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req: NewSession = optional_body(&body)?;
    let lexicon = Lexicon::parse(req.lexicon.as_deref().unwrap_or(SIMPLEMAT_LEXICON))
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    let mut reg = state.registry();
    reg.next_session += 1;
    let id = format!("s{}", reg.next_session);
    reg.sessions.insert(id.clone(), Arc::new(Mutex::new(Session::new(lexicon))));
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))))
}

fn with_session<T>(state: &AppState, id: &str, f: impl FnOnce(&mut Session) -> Result<T, ApiError>) -> Result<T, ApiError> {
    let session = state.session(id)?;
    let mut guard = session.lock().expect("session lock");
    f(&mut guard)
}

async fn session_overview(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Value> {
    with_session(&state, &id, |s| {
        Ok(Json(json!({
            "sentences": s.sentences(),
            "paraphrases": s.paraphrases().iter().map(|p| p.text.clone()).collect::<Vec<_>>(),
            "drsText": s.drs_text(),
            "clausesText": s.clauses_text(),
            "lexiconVersion": s.lexicon().version(),
        })))
    })
}

#[derive(Deserialize)]
struct SentenceReq {
    text: String,
}

#[derive(Serialize)]
struct MarkerDto {
    kind: &'static str,
    start: usize,
    end: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalysisDto {
    paraphrase: String,
    markers: Vec<MarkerDto>,
    drs_text: String,
    diagnostics: Vec<DiagnosticDto>,
    unknown_words: Vec<String>,
}

async fn submit_sentence(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<SentenceReq>,
) -> ApiResult<AnalysisDto> {
    with_session(&state, &id, |s| {
        let a = s.submit(&req.text)?;
        Ok(Json(AnalysisDto {
            paraphrase: a.paraphrase.text.clone(),
            markers: a
                .paraphrase
                .markers
                .iter()
                .map(|m| MarkerDto { kind: m.kind.as_str(), start: m.span.start, end: m.span.end })
                .collect(),
            drs_text: a.drs.pretty(),
            diagnostics: a.diagnostics.iter().map(DiagnosticDto::from).collect(),
            unknown_words: Vec::new(),
        }))
    })
}

#[derive(Deserialize)]
struct DecisionReq {
    accept: bool,
}

async fn decide(State(state): State<AppState>, Path(id): Path<String>, Json(req): Json<DecisionReq>) -> ApiResult<Value> {
    with_session(&state, &id, |s| {
        let outcome = s.decide(req.accept)?;
        let warnings: Vec<DiagnosticDto> = outcome
            .as_ref()
            .map(|a| a.warnings.iter().map(|w| DiagnosticDto::from(&w.diagnostic())).collect())
            .unwrap_or_default();
        Ok(Json(json!({
            "accepted": outcome.is_some(),
            "clausesText": s.clauses_text(),
            "warnings": warnings,
        })))
    })
}

#[derive(Deserialize)]
struct LexiconReq {
    entry: String,
}

async fn add_word(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(req): Json<LexiconReq>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    with_session(&state, &id, |s| {
        let e = s.add_word(&req.entry)?;
        let body = json!({ "lemma": e.lemma, "class": e.class.name() });
        Ok((StatusCode::CREATED, Json(json!({ "entry": body, "lexiconVersion": s.lexicon().version() }))))
    })
}

async fn list_words(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Value> {
    with_session(&state, &id, |s| {
        Ok(Json(json!({ "entries": s.lexicon().to_string().lines().collect::<Vec<_>>(), "lexiconVersion": s.lexicon().version() })))
    })
}

#[derive(Deserialize)]
struct QueryReq {
    text: String,
    #[serde(default)]
    offset: usize,
    #[serde(default = "one")]
    limit: usize,
}

fn one() -> usize {
    1
}

#[derive(Serialize)]
struct QueryDto {
    kind: &'static str,
    answers: Vec<String>,
    exhausted: bool,
}

async fn query(State(state): State<AppState>, Path(id): Path<String>, Json(req): Json<QueryReq>) -> ApiResult<QueryDto> {
    with_session(&state, &id, |s| {
        let mut answers = s.ask(&req.text)?;
        let kind = answers.kind().as_str();
        let page: Vec<String> = answers.by_ref().skip(req.offset).take(req.limit).map(|a| a.to_string()).collect();
        let exhausted = answers.next().is_none();
        Ok(Json(QueryDto { kind, answers: page, exhausted }))
    })
}

#[derive(Deserialize, Default)]
struct ExecutionReq {
    /// Definition file text.
    defs: Option<String>,
}

async fn start_execution(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req: ExecutionReq = optional_body(&body)?;
    let exec = with_session(&state, &id, |session| {
        let defs = session.parse_definitions(req.defs.as_deref().unwrap_or(""))?;
        Ok(session.start_execution(defs)?)
    })?;
    let mut reg = state.registry();
    reg.next_execution += 1;
    let exec_id = format!("e{}", reg.next_execution);
    if let Some(old) = reg.active.insert(id, exec_id.clone()) {
        reg.executions.remove(&old);
    }
    reg.executions.insert(exec_id.clone(), Arc::new(Mutex::new(exec)));
    Ok((StatusCode::CREATED, Json(json!({ "execId": exec_id }))))
}

#[derive(Serialize)]
struct MessageDto {
    kind: &'static str,
    text: String,
}

impl From<&OracleMessage> for MessageDto {
    fn from(m: &OracleMessage) -> MessageDto {
        MessageDto { kind: m.kind(), text: m.text() }
    }
}

#[derive(Serialize)]
struct StepDto {
    messages: Vec<MessageDto>,
    pending: Option<MessageDto>,
    done: bool,
    unused: Vec<String>,
}

fn step(exec: &mut Execution) -> StepDto {
    StepDto {
        messages: exec.drain().iter().map(MessageDto::from).collect(),
        pending: exec.pending().map(MessageDto::from),
        done: exec.is_done(),
        unused: exec.unused().iter().map(ToString::to_string).collect(),
    }
}

/// Messages since the previous call and the request now waiting, if any.
async fn next_messages(State(state): State<AppState>, Path(exec_id): Path<String>) -> ApiResult<StepDto> {
    let exec = state.execution(&exec_id)?;
    let mut exec = exec.lock().expect("execution lock");
    Ok(Json(step(&mut exec)))
}

#[derive(Deserialize)]
struct ReplyReq {
    text: String,
}

async fn reply(
    State(state): State<AppState>,
    Path(exec_id): Path<String>,
    Json(req): Json<ReplyReq>,
) -> ApiResult<Value> {
    let exec = state.execution(&exec_id)?;
    let mut exec = exec.lock().expect("execution lock");
    if exec.is_done() {
        return Err(ApiError::conflict("no request is pending"));
    }
    exec.reply(&req.text).map_err(|e| ApiError::from(SessionError::from(e)))?;
    // New messages are delivered by the next poll.
    Ok(Json(json!({ "pending": exec.pending().map(MessageDto::from), "done": exec.is_done() })))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(session_overview))
        .route("/api/sessions/{id}/sentences", post(submit_sentence))
        .route("/api/sessions/{id}/decision", post(decide))
        .route("/api/sessions/{id}/lexicon", post(add_word).get(list_words))
        .route("/api/sessions/{id}/query", post(query))
        .route("/api/sessions/{id}/executions", post(start_execution))
        .route("/api/executions/{exec_id}/next", get(next_messages))
        .route("/api/executions/{exec_id}/reply", post(reply))
        .with_state(state)
}

/// Serves the API until the process ends.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(AppState::new())).await
}
