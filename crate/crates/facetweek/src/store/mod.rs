//! Single-file, append-only store for plans, responses and events.
//!
//! Every change is one framed JSON record appended to the log (see
//! [`frame`]). The in-memory index is rebuilt by replaying the log on open.
//! Writers are serialized by a mutex; readers take a snapshot of the index
//! and never observe a record before it has been written in full.

pub mod frame;
mod record;

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use chrono::{DateTime, FixedOffset, NaiveDate, NaiveDateTime};
use facetweek_core::ema::{build_week_dataset, EmaResponse, SurveyWindow, WeekDataset, WindowTimes};
use facetweek_core::schedule::StudyPlan;

pub use record::{EventKind, EventRecord, Record, UNATTRIBUTED};

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: not a facetweek log (bad header)")]
    BadHeader { path: PathBuf },
    #[error("{path}: damaged record at byte {offset}")]
    Corrupt { path: PathBuf, offset: usize },
    #[error("{path}: unreadable record at byte {offset}: {source}")]
    BadRecord { path: PathBuf, offset: usize, source: serde_json::Error },
    #[error("unknown participant {0}")]
    UnknownParticipant(String),
    #[error("participant {0} is already enrolled with a different plan")]
    PlanConflict(String),
    #[error("event for {participant} at {at} precedes the previous event at {last}")]
    EventOutOfOrder { participant: String, at: DateTime<FixedOffset>, last: DateTime<FixedOffset> },
    #[error("could not encode record: {0}")]
    Encode(#[from] serde_json::Error),
}

/// How hard an append tries to reach the disk before returning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Durability {
    /// `fsync` the data of every append.
    #[default]
    Sync,
    /// Leave flushing to the OS. Survives a killed process but not power loss.
    Buffered,
}

/// What replay found in the file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpenReport {
    pub records: usize,
    /// Bytes of an incomplete final record that were cut off.
    pub truncated_bytes: usize,
}

type SlotKey = (String, NaiveDate, SurveyWindow);

#[derive(Debug, Default)]
struct Index {
    plans: BTreeMap<String, StudyPlan>,
    responses: BTreeMap<String, Vec<EmaResponse>>,
    revisions: BTreeMap<SlotKey, u32>,
    events: BTreeMap<String, Vec<EventRecord>>,
    records: usize,
}

impl Index {
    fn apply(&mut self, record: Record) {
        self.records += 1;
        match record {
            Record::Participant(plan) => {
                self.plans.insert(plan.participant.clone(), plan);
            }
            Record::Response(r) => {
                let key = (r.participant.clone(), r.date, r.window);
                let rev = self.revisions.entry(key).or_default();
                *rev = (*rev).max(r.revision);
                self.responses.entry(r.participant.clone()).or_default().push(r);
            }
            Record::Event(e) => self.events.entry(e.participant.clone()).or_default().push(e),
        }
    }

    fn knows(&self, participant: &str) -> bool {
        self.plans.contains_key(participant) || self.responses.contains_key(participant)
    }
}

pub struct Store {
    path: PathBuf,
    durability: Durability,
    writer: Mutex<File>,
    index: RwLock<Index>,
    report: OpenReport,
}

impl std::fmt::Debug for Store {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Store").field("path", &self.path).field("report", &self.report).finish()
    }
}

impl Store {
    pub fn open(path: impl AsRef<Path>) -> Result<Store, StoreError> {
        Store::open_with(path, Durability::default())
    }

    /// Opens or creates the log at `path` and replays it. A torn final
    /// record is truncated away; damage anywhere else is an error.
    pub fn open_with(path: impl AsRef<Path>, durability: Durability) -> Result<Store, StoreError> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| StoreError::Io { path: path.clone(), source };
        let mut file = OpenOptions::new().read(true).write(true).create(true).truncate(false).open(&path).map_err(io_err)?;
        let mut buf = Vec::new();
        file.read_to_end(&mut buf).map_err(io_err)?;

        if buf.is_empty() {
            file.write_all(frame::MAGIC).map_err(io_err)?;
            file.sync_all().map_err(io_err)?;
            buf.extend_from_slice(frame::MAGIC);
        } else if buf.len() < frame::HEADER_LEN {
            // Killed while writing the header of a brand-new file.
            if frame::MAGIC.starts_with(&buf) {
                file.set_len(0).map_err(io_err)?;
                file.seek(SeekFrom::Start(0)).map_err(io_err)?;
                file.write_all(frame::MAGIC).map_err(io_err)?;
                file.sync_all().map_err(io_err)?;
                buf = frame::MAGIC.to_vec();
            } else {
                return Err(StoreError::BadHeader { path });
            }
        } else if &buf[..frame::HEADER_LEN] != frame::MAGIC {
            return Err(StoreError::BadHeader { path });
        }

        let mut index = Index::default();
        let mut offset = frame::HEADER_LEN;
        let mut report = OpenReport::default();
        loop {
            match frame::scan(&buf, offset) {
                frame::Scan::Frame { payload, next } => {
                    let record: Record = serde_json::from_slice(payload)
                        .map_err(|source| StoreError::BadRecord { path: path.clone(), offset, source })?;
                    index.apply(record);
                    offset = next;
                }
                frame::Scan::End => break,
                frame::Scan::Torn { offset: at } => {
                    report.truncated_bytes = buf.len() - at;
                    file.set_len(at as u64).map_err(io_err)?;
                    file.sync_all().map_err(io_err)?;
                    break;
                }
                frame::Scan::Corrupt { offset: at } => return Err(StoreError::Corrupt { path, offset: at }),
            }
        }
        file.seek(SeekFrom::End(0)).map_err(io_err)?;
        report.records = index.records;
        if report.truncated_bytes > 0 {
            tracing::warn!(path = %path.display(), bytes = report.truncated_bytes, "dropped torn record at end of log");
        }
        Ok(Store { path, durability, writer: Mutex::new(file), index: RwLock::new(index), report })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn open_report(&self) -> OpenReport {
        self.report
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Index> {
        self.index.read().unwrap_or_else(|e| e.into_inner())
    }

    /// Writes one record while holding the writer lock, then publishes it.
    fn append(&self, file: &mut File, record: Record) -> Result<(), StoreError> {
        let payload = serde_json::to_vec(&record)?;
        let io_err = |source| StoreError::Io { path: self.path.clone(), source };
        frame::write_frame(file, &payload).map_err(io_err)?;
        if self.durability == Durability::Sync {
            file.sync_data().map_err(io_err)?;
        }
        self.index.write().unwrap_or_else(|e| e.into_inner()).apply(record);
        Ok(())
    }

    fn lock_writer(&self) -> std::sync::MutexGuard<'_, File> {
        self.writer.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Enrolls a participant. Re-enrolling with an identical plan is a no-op
    /// and returns `false`.
    pub fn put_participant(&self, plan: &StudyPlan) -> Result<bool, StoreError> {
        let mut file = self.lock_writer();
        match self.read().plans.get(&plan.participant) {
            Some(existing) if existing == plan => return Ok(false),
            Some(_) => return Err(StoreError::PlanConflict(plan.participant.clone())),
            None => {}
        }
        self.append(&mut file, Record::Participant(plan.clone()))?;
        Ok(true)
    }

    pub fn participant(&self, participant: &str) -> Option<StudyPlan> {
        self.read().plans.get(participant).cloned()
    }

    pub fn participants(&self) -> Vec<StudyPlan> {
        self.read().plans.values().cloned().collect()
    }

    /// Appends `r` as the next revision of its slot and returns that
    /// revision. Any revision already set on `r` is ignored.
    pub fn put_response(&self, r: &EmaResponse) -> Result<u32, StoreError> {
        let mut file = self.lock_writer();
        let key = (r.participant.clone(), r.date, r.window);
        let revision = self.read().revisions.get(&key).copied().unwrap_or(0) + 1;
        let mut stored = r.clone();
        stored.revision = revision;
        self.append(&mut file, Record::Response(stored))?;
        Ok(revision)
    }

    /// Every stored revision for a participant, in write order.
    pub fn responses(&self, participant: &str) -> Vec<EmaResponse> {
        self.read().responses.get(participant).cloned().unwrap_or_default()
    }

    /// Every stored revision, grouped by participant.
    pub fn all_responses(&self) -> Vec<EmaResponse> {
        self.read().responses.values().flatten().cloned().collect()
    }

    /// The participant's week as of local time `now`, resolved over all
    /// stored revisions.
    pub fn get_week(
        &self,
        participant: &str,
        week_start: NaiveDate,
        now: NaiveDateTime,
        windows: &WindowTimes,
    ) -> Result<WeekDataset, StoreError> {
        let index = self.read();
        if !index.knows(participant) {
            return Err(StoreError::UnknownParticipant(participant.into()));
        }
        let empty = Vec::new();
        let responses = index.responses.get(participant).unwrap_or(&empty);
        let week = build_week_dataset(participant, responses, week_start, now, windows)
            .expect("responses are indexed by participant");
        Ok(week)
    }

    /// Appends an event. Events of one participant must not go back in time.
    pub fn log_event(&self, event: EventRecord) -> Result<(), StoreError> {
        let mut file = self.lock_writer();
        self.check_order(&event)?;
        self.append(&mut file, Record::Event(event))
    }

    /// Appends an event stamped by `at`, which is called under the writer
    /// lock so concurrent callers stay in order.
    pub fn log_event_at(
        &self,
        participant: &str,
        kind: EventKind,
        detail: impl Into<String>,
        at: impl FnOnce() -> DateTime<FixedOffset>,
    ) -> Result<EventRecord, StoreError> {
        let mut file = self.lock_writer();
        let event = EventRecord { participant: participant.into(), at: at(), kind, detail: detail.into() };
        self.check_order(&event)?;
        self.append(&mut file, Record::Event(event.clone()))?;
        Ok(event)
    }

    fn check_order(&self, event: &EventRecord) -> Result<(), StoreError> {
        if let Some(last) = self.read().events.get(&event.participant).and_then(|v| v.last()) {
            if event.at < last.at {
                return Err(StoreError::EventOutOfOrder {
                    participant: event.participant.clone(),
                    at: event.at,
                    last: last.at,
                });
            }
        }
        Ok(())
    }

    /// Events in log order, for one participant or everyone.
    pub fn events(&self, participant: Option<&str>) -> Vec<EventRecord> {
        let index = self.read();
        match participant {
            Some(p) => index.events.get(p).cloned().unwrap_or_default(),
            None => index.events.values().flatten().cloned().collect(),
        }
    }
}
