//! HTTP API under `/api`, authenticated by a per-participant bearer study
//! code.

mod api;
mod clock;
mod notify;
mod reminders;

use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::sync::{Arc, Mutex};

use chrono::{DateTime, FixedOffset, NaiveDateTime, Weekday};
use facetweek_core::ema::SurveyDefinition;
use facetweek_core::render::Theme;
use facetweek_core::schedule::{ReminderEvent, ReminderPolicy, StudyPlan};

pub use api::router;
pub use clock::{Clock, ManualClock, SystemClock};
pub use notify::{ConsoleNotifier, FileNotifier, Notifier, NotifyError};
pub use reminders::{run_reminder_loop, tick};

use crate::config::{load_definition, load_theme, ConfigError, NotifierConfig, ServiceConfig};
use crate::store::{EventKind, Store, StoreError};

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("participant {participant}: unknown time zone {timezone:?}")]
    Timezone { participant: String, timezone: String },
    #[error("{addr}: {source}")]
    Bind { addr: String, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Everything a request handler needs.
pub struct AppState {
    pub store: Arc<Store>,
    pub definition: SurveyDefinition,
    pub theme: Theme,
    pub policy: ReminderPolicy,
    pub week_start: Weekday,
    codes: HashMap<String, String>,
    clock: Arc<dyn Clock>,
    notifier: Arc<dyn Notifier>,
    emitted: Mutex<BTreeSet<ReminderEvent>>,
}

impl std::fmt::Debug for AppState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AppState").field("store", &self.store).field("participants", &self.codes.len()).finish()
    }
}

impl AppState {
    /// Loads the instrument and theme named by `config`, enrolls its
    /// participants in `store` and picks up reminders already sent.
    pub fn new(
        config: &ServiceConfig,
        store: Arc<Store>,
        clock: Arc<dyn Clock>,
        notifier: Arc<dyn Notifier>,
    ) -> Result<AppState, ServiceError> {
        let definition = load_definition(&config.survey)?;
        let theme = load_theme(&config.theme)?;
        for plan in config.plans()? {
            store.put_participant(&plan)?;
        }
        let codes = config.participants.iter().map(|e| (e.code.clone(), e.participant.clone())).collect();
        let emitted = store
            .events(None)
            .into_iter()
            .filter(|e| e.kind == EventKind::ReminderSent)
            .filter_map(|e| serde_json::from_str::<ReminderEvent>(&e.detail).ok())
            .collect();
        Ok(AppState {
            store,
            definition,
            theme,
            policy: config.reminders.clone(),
            week_start: config.week_start,
            codes,
            clock,
            notifier,
            emitted: Mutex::new(emitted),
        })
    }

    pub fn participant_for_code(&self, code: &str) -> Option<&str> {
        self.codes.get(code).map(String::as_str)
    }

    /// Current time in the participant's zone.
    pub fn local_now(&self, plan: &StudyPlan) -> Result<DateTime<FixedOffset>, ServiceError> {
        let tz: chrono_tz::Tz = plan.timezone.parse().map_err(|_| ServiceError::Timezone {
            participant: plan.participant.clone(),
            timezone: plan.timezone.clone(),
        })?;
        Ok(self.clock.now().with_timezone(&tz).fixed_offset())
    }

    pub fn local_naive_now(&self, plan: &StudyPlan) -> Result<NaiveDateTime, ServiceError> {
        Ok(self.local_now(plan)?.naive_local())
    }

    pub fn utc_now(&self) -> DateTime<FixedOffset> {
        self.clock.now().fixed_offset()
    }

    fn notifier(&self) -> &dyn Notifier {
        self.notifier.as_ref()
    }
}

pub fn notifier_from_config(config: &NotifierConfig) -> Arc<dyn Notifier> {
    match config {
        NotifierConfig::Console => Arc::new(ConsoleNotifier),
        NotifierConfig::File { path } => Arc::new(FileNotifier::new(path.clone())),
    }
}

/// Runs the HTTP service and the reminder loop until interrupted.
pub async fn serve(config_path: &Path) -> Result<(), ServiceError> {
    let config = ServiceConfig::load(config_path)?;
    let store = Arc::new(Store::open(&config.data)?);
    let state = Arc::new(AppState::new(&config, store, Arc::new(SystemClock), notifier_from_config(&config.notifier))?);
    let listener = tokio::net::TcpListener::bind(&config.listen)
        .await
        .map_err(|source| ServiceError::Bind { addr: config.listen.clone(), source })?;
    tracing::info!(addr = %listener.local_addr()?, data = %config.data.display(), "serving");
    let ticker = tokio::spawn(run_reminder_loop(state.clone()));
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    ticker.abort();
    Ok(())
}
