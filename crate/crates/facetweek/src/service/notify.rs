use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Mutex;

use facetweek_core::schedule::ReminderEvent;

#[derive(Debug, thiserror::Error)]
#[error("could not deliver reminder: {0}")]
pub struct NotifyError(pub String);

/// Delivery of reminders. Real text and email gateways are out of scope;
/// these stubs record what would have been sent.
pub trait Notifier: Send + Sync {
    fn notify(&self, event: &ReminderEvent) -> Result<(), NotifyError>;
}

#[derive(Debug, Default)]
pub struct ConsoleNotifier;

impl Notifier for ConsoleNotifier {
    fn notify(&self, e: &ReminderEvent) -> Result<(), NotifyError> {
        tracing::info!(
            participant = %e.participant,
            date = %e.date,
            window = %e.window,
            channel = ?e.channel,
            kind = ?e.kind,
            "reminder"
        );
        Ok(())
    }
}

/// Appends one JSON line per reminder.
#[derive(Debug)]
pub struct FileNotifier {
    path: PathBuf,
    lock: Mutex<()>,
}

impl FileNotifier {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        FileNotifier { path: path.into(), lock: Mutex::new(()) }
    }
}

impl Notifier for FileNotifier {
    fn notify(&self, e: &ReminderEvent) -> Result<(), NotifyError> {
        let _guard = self.lock.lock().unwrap_or_else(|e| e.into_inner());
        let mut line = serde_json::to_vec(e).map_err(|err| NotifyError(err.to_string()))?;
        line.push(b'\n');
        OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .and_then(|mut f| f.write_all(&line))
            .map_err(|err| NotifyError(format!("{}: {err}", self.path.display())))
    }
}
