use std::sync::Arc;
use std::time::Duration;

use facetweek_core::schedule::{due_reminders, ReminderEvent};

use super::AppState;
use crate::store::EventKind;

/// Sends every reminder due now and records each in the event log. A
/// reminder whose delivery fails is retried on the next tick.
pub fn tick(state: &AppState) -> Vec<ReminderEvent> {
    let mut sent = Vec::new();
    for plan in state.store.participants() {
        let now = match state.local_now(&plan) {
            Ok(now) => now,
            Err(e) => {
                tracing::warn!(error = %e, "skipping participant");
                continue;
            }
        };
        let responses = state.store.responses(&plan.participant);
        let mut emitted = state.emitted.lock().unwrap_or_else(|e| e.into_inner());
        for event in due_reminders(&plan, &state.policy, &responses, now.naive_local(), &emitted) {
            if let Err(e) = state.notifier().notify(&event) {
                tracing::warn!(error = %e, participant = %event.participant, "reminder not delivered");
                continue;
            }
            let detail = serde_json::to_string(&event).expect("reminder events serialize");
            match state.store.log_event_at(&plan.participant, EventKind::ReminderSent, detail, || now) {
                Ok(_) => {
                    emitted.insert(event.clone());
                    sent.push(event);
                }
                Err(e) => tracing::error!(error = %e, "could not log reminder"),
            }
        }
    }
    sent
}

/// Ticks once a minute, forever.
pub async fn run_reminder_loop(state: Arc<AppState>) {
    let mut interval = tokio::time::interval(Duration::from_secs(60));
    interval.set_missed_tick_behavior(tokio::time::MissedTickBehavior::Skip);
    loop {
        interval.tick().await;
        let state = state.clone();
        match tokio::task::spawn_blocking(move || tick(&state)).await {
            Ok(sent) if !sent.is_empty() => tracing::info!(count = sent.len(), "reminders sent"),
            Ok(_) => {}
            Err(e) => tracing::error!(error = %e, "reminder tick failed"),
        }
    }
}
