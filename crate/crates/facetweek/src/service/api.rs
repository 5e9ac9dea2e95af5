use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::{NaiveDate, NaiveDateTime};
use facetweek_core::ema::{validate_response, EmaResponse, Question, SurveyWindow, ValidationError};
use facetweek_core::render::render_dashboard;
use facetweek_core::schedule::{ConditionKind, ConditionWeek, StudyPlan};
use serde::Serialize;
use serde_json::json;

use super::AppState;
use crate::config::week_start_of;
use crate::export::{export_rows, write_csv, write_json, ExportFilter};
use crate::store::{EventKind, UNATTRIBUTED};

type Shared = Arc<AppState>;

pub fn router(state: Shared) -> Router {
    Router::new()
        .route("/api/plan", get(plan))
        .route("/api/survey/current", get(current_survey))
        .route("/api/responses", post(submit_response))
        .route("/api/dashboard.svg", get(dashboard))
        .route("/api/export", get(export))
        .with_state(state)
}

#[derive(Debug)]
enum ApiError {
    Unauthorized,
    Forbidden(String),
    Conflict { status: &'static str, message: String },
    BadRequest(String),
    Invalid(Vec<ValidationError>),
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (code, body) = match self {
            ApiError::Unauthorized => (StatusCode::UNAUTHORIZED, json!({"error": "unknown or missing study code"})),
            ApiError::Forbidden(m) => (StatusCode::FORBIDDEN, json!({"error": m})),
            ApiError::Conflict { status, message } => (StatusCode::CONFLICT, json!({"status": status, "error": message})),
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, json!({"error": m})),
            ApiError::Invalid(errors) => (StatusCode::BAD_REQUEST, json!({"error": "invalid response", "errors": errors})),
            ApiError::Internal(m) => {
                tracing::error!(error = %m, "request failed");
                (StatusCode::INTERNAL_SERVER_ERROR, json!({"error": "internal error"}))
            }
        };
        let mut resp = (code, Json(body)).into_response();
        if code == StatusCode::UNAUTHORIZED {
            resp.headers_mut().insert(header::WWW_AUTHENTICATE, HeaderValue::from_static("Bearer"));
        }
        resp
    }
}

fn internal(e: impl std::fmt::Display) -> ApiError {
    ApiError::Internal(e.to_string())
}

/// Resolves the bearer study code to an enrolled participant. Failures are
/// logged without the presented code.
fn authenticate(state: &AppState, headers: &HeaderMap) -> Result<StudyPlan, ApiError> {
    let code = headers
        .get(header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "))
        .map(str::trim);
    let plan = code
        .and_then(|c| state.participant_for_code(c))
        .and_then(|p| state.store.participant(p));
    match plan {
        Some(plan) => Ok(plan),
        None => {
            let detail = if code.is_some() { "unknown study code" } else { "no study code" };
            if let Err(e) = state.store.log_event_at(UNATTRIBUTED, EventKind::LoginFailed, detail, || state.utc_now()) {
                tracing::warn!(error = %e, "could not log failed login");
            }
            Err(ApiError::Unauthorized)
        }
    }
}

fn local_now(state: &AppState, plan: &StudyPlan) -> Result<NaiveDateTime, ApiError> {
    state.local_naive_now(plan).map_err(internal)
}

fn log(state: &AppState, plan: &StudyPlan, kind: EventKind, detail: String) -> Result<(), ApiError> {
    let now = state.local_now(plan).map_err(internal)?;
    state.store.log_event_at(&plan.participant, kind, detail, || now).map(|_| ()).map_err(internal)
}

#[derive(Serialize)]
struct PlanBody<'a> {
    plan: &'a StudyPlan,
    today: NaiveDate,
    current_week: Option<&'a ConditionWeek>,
}

async fn plan(State(state): State<Shared>, headers: HeaderMap) -> Result<Response, ApiError> {
    let plan = authenticate(&state, &headers)?;
    let today = local_now(&state, &plan)?.date();
    let body = PlanBody { plan: &plan, today, current_week: plan.week_containing(today) };
    Ok(Json(body).into_response())
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum SurveyBody<'a> {
    Open {
        date: NaiveDate,
        window: SurveyWindow,
        closes_at: NaiveDateTime,
        definition_version: &'a str,
        questions: Vec<&'a Question>,
    },
    NoWindowOpen {
        next_date: NaiveDate,
        next_window: SurveyWindow,
        next_open: NaiveDateTime,
    },
}

/// Rejects dates outside the study or in the washout week.
fn require_survey_week(plan: &StudyPlan, date: NaiveDate) -> Result<(), ApiError> {
    match plan.week_containing(date).map(|w| w.kind) {
        None => Err(ApiError::Conflict { status: "outside_study", message: format!("{date} is outside the study") }),
        Some(ConditionKind::Washout) => {
            Err(ApiError::Conflict { status: "washout", message: "no surveys during the washout week".into() })
        }
        Some(_) => Ok(()),
    }
}

async fn current_survey(State(state): State<Shared>, headers: HeaderMap) -> Result<Response, ApiError> {
    let plan = authenticate(&state, &headers)?;
    let now = local_now(&state, &plan)?;
    require_survey_week(&plan, now.date())?;
    let windows = &state.policy.windows;
    let (body, detail) = match windows.open_window(now) {
        Some(window) => (
            SurveyBody::Open {
                date: now.date(),
                window,
                closes_at: windows.closes_at(now.date(), window),
                definition_version: &state.definition.version,
                questions: state.definition.questions_for(window).collect(),
            },
            format!("{} {window}", now.date()),
        ),
        None => {
            let (next_date, next_window, next_open) = windows.next_open(now);
            (SurveyBody::NoWindowOpen { next_date, next_window, next_open }, "no window open".to_string())
        }
    };
    log(&state, &plan, EventKind::SurveyOpened, detail)?;
    Ok(Json(body).into_response())
}

async fn submit_response(State(state): State<Shared>, headers: HeaderMap, body: Bytes) -> Result<Response, ApiError> {
    let plan = authenticate(&state, &headers)?;
    let response: EmaResponse =
        serde_json::from_slice(&body).map_err(|e| ApiError::BadRequest(format!("malformed response: {e}")))?;
    if response.participant != plan.participant {
        return Err(ApiError::Forbidden("response belongs to another participant".into()));
    }
    require_survey_week(&plan, response.date)?;
    validate_response(&state.definition, &response).map_err(ApiError::Invalid)?;
    let revision = state.store.put_response(&response).map_err(internal)?;
    log(&state, &plan, EventKind::ResponseSubmitted, format!("{} {} r{revision}", response.date, response.window))?;
    Ok(Json(json!({ "revision": revision })).into_response())
}

async fn dashboard(
    State(state): State<Shared>,
    headers: HeaderMap,
    Query(query): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let plan = authenticate(&state, &headers)?;
    let now = local_now(&state, &plan)?;
    let week = match query.get("week") {
        Some(w) => w.parse::<NaiveDate>().map_err(|e| ApiError::BadRequest(format!("week: {e}")))?,
        None => week_start_of(now.date(), state.week_start),
    };
    match plan.week_starting(week).map(|w| w.kind) {
        Some(ConditionKind::EmaPlusViz) => {}
        _ => return Err(ApiError::Forbidden(format!("no dashboard for the week of {week}"))),
    }
    if now.date() < week {
        return Err(ApiError::Forbidden(format!("the week of {week} has not started")));
    }
    let data = state.store.get_week(&plan.participant, week, now, &state.policy.windows).map_err(internal)?;
    let svg = render_dashboard(&data, &state.theme).svg;
    log(&state, &plan, EventKind::DashboardViewed, format!("week {week}"))?;
    Ok((
        [
            (header::CONTENT_TYPE, "image/svg+xml; charset=utf-8"),
            (header::CACHE_CONTROL, "no-store, max-age=0"),
        ],
        svg,
    )
        .into_response())
}

async fn export(
    State(state): State<Shared>,
    headers: HeaderMap,
    Query(query): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let plan = authenticate(&state, &headers)?;
    let filter = ExportFilter { participant: Some(plan.participant.clone()), ..Default::default() };
    let rows = export_rows(&state.store.responses(&plan.participant), &filter);
    let mut out = Vec::new();
    let content_type = match query.get("format").map(String::as_str).unwrap_or("csv") {
        "csv" => {
            write_csv(&mut out, &rows, &state.definition).map_err(internal)?;
            "text/csv; charset=utf-8"
        }
        "json" => {
            write_json(&mut out, &rows).map_err(internal)?;
            "application/json"
        }
        other => return Err(ApiError::BadRequest(format!("unknown format {other:?}"))),
    };
    Ok(([(header::CONTENT_TYPE, content_type), (header::CACHE_CONTROL, "no-store")], out).into_response())
}
