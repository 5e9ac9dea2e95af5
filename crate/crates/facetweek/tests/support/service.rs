use std::path::Path;
use std::sync::{Arc, Mutex};

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use chrono::{DateTime, NaiveDate, NaiveDateTime, TimeZone, Utc};
use facetweek::config::{Enrolment, ServiceConfig};
use facetweek::service::{router, AppState, ManualClock, Notifier, NotifyError};
use facetweek::store::Store;
use facetweek_core::schedule::{ReminderEvent, StudyPlan};
use http_body_util::BodyExt;
use tower::ServiceExt;

pub const TZ: &str = "America/Chicago";

/// Keeps every reminder it is handed.
#[derive(Debug, Default)]
pub struct Recorder(pub Mutex<Vec<ReminderEvent>>);

impl Notifier for Recorder {
    fn notify(&self, e: &ReminderEvent) -> Result<(), NotifyError> {
        self.0.lock().unwrap().push(e.clone());
        Ok(())
    }
}

pub struct App {
    pub state: Arc<AppState>,
    pub clock: Arc<ManualClock>,
    pub notes: Arc<Recorder>,
    pub router: Router,
}

/// Participant `P00i` has study code `code-i`; even indices run AB, odd BA.
pub fn config(data: &Path, start: NaiveDate, n: u32) -> ServiceConfig {
    ServiceConfig {
        data: data.to_path_buf(),
        participants: (0..n)
            .map(|i| Enrolment {
                code: format!("code-{i}"),
                participant: format!("P{:03}", i + 1),
                start,
                timezone: TZ.into(),
                index: Some(i),
            })
            .collect(),
        ..Default::default()
    }
}

pub fn app(data: &Path, start: NaiveDate, n: u32) -> App {
    let config = config(data, start, n);
    let store = Arc::new(Store::open(data).unwrap());
    let clock = Arc::new(ManualClock::new(Utc::now()));
    let notes = Arc::new(Recorder::default());
    let state = Arc::new(AppState::new(&config, store, clock.clone(), notes.clone()).unwrap());
    App { router: router(state.clone()), state, clock, notes }
}

impl App {
    /// Moves the clock to a wall-clock time in the study time zone. Returns
    /// false, leaving the clock alone, for times skipped by a DST change.
    pub fn set_local(&self, at: NaiveDateTime) -> bool {
        let tz: chrono_tz::Tz = TZ.parse().unwrap();
        let Some(local) = tz.from_local_datetime(&at).earliest() else { return false };
        let utc: DateTime<Utc> = local.with_timezone(&Utc);
        self.clock.set(utc);
        true
    }

    pub fn plan(&self, participant: &str) -> StudyPlan {
        self.state.store.participant(participant).unwrap()
    }

    pub async fn call(&self, method: Method, uri: &str, code: Option<&str>, body: Option<String>) -> (StatusCode, Vec<u8>, Option<String>) {
        let mut req = Request::builder().method(method).uri(uri);
        if let Some(code) = code {
            req = req.header(header::AUTHORIZATION, format!("Bearer {code}"));
        }
        if body.is_some() {
            req = req.header(header::CONTENT_TYPE, "application/json");
        }
        let req = req.body(body.map(Body::from).unwrap_or_else(Body::empty)).unwrap();
        let resp = self.router.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let content_type = resp.headers().get(header::CONTENT_TYPE).map(|v| v.to_str().unwrap().to_string());
        let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
        (status, bytes, content_type)
    }

    pub async fn get(&self, uri: &str, code: &str) -> (StatusCode, Vec<u8>) {
        let (s, b, _) = self.call(Method::GET, uri, Some(code), None).await;
        (s, b)
    }

    pub async fn json(&self, uri: &str, code: &str) -> (StatusCode, serde_json::Value) {
        let (s, b) = self.get(uri, code).await;
        (s, serde_json::from_slice(&b).unwrap_or(serde_json::Value::Null))
    }
}

pub fn runtime() -> tokio::runtime::Runtime {
    tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap()
}
