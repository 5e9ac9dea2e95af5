//! Clinician exports: one row per stored answer revision.
//!
//! CSV columns are fixed: `participant,date,window,qid,revision,value,submitted_at`.
//! A response with no answers still gets one row, with empty `qid` and
//! `value`, so it survives a round trip. Values are written as a person
//! would read them: magnitudes as numbers, clock times as `HH:MM`, ordinal
//! levels by label, categories as a JSON array, flags as `true`/`false`.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use chrono::{DateTime, FixedOffset, NaiveDate};
use facetweek_core::ema::{AnswerKind, AnswerValue, ClockTime, EmaResponse, SurveyDefinition, SurveyWindow};
use serde::{Deserialize, Serialize};

use crate::store::{Store, StoreError};

pub const CSV_HEADER: [&str; 7] = ["participant", "date", "window", "qid", "revision", "value", "submitted_at"];

/// Which responses to export. Date bounds are inclusive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExportFilter {
    pub participant: Option<String>,
    pub from: Option<NaiveDate>,
    pub to: Option<NaiveDate>,
}

impl ExportFilter {
    fn admits(&self, r: &EmaResponse) -> bool {
        self.participant.as_ref().is_none_or(|p| *p == r.participant)
            && self.from.is_none_or(|d| r.date >= d)
            && self.to.is_none_or(|d| r.date <= d)
    }
}

/// One exported row. `qid` and `value` are absent for an empty response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportRow {
    pub participant: String,
    pub date: NaiveDate,
    pub window: SurveyWindow,
    pub qid: Option<String>,
    pub revision: u32,
    pub value: Option<AnswerValue>,
    pub submitted_at: DateTime<FixedOffset>,
}

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
}

/// Rows for every stored revision that passes `filter`, in
/// (participant, date, window, qid, revision) order.
pub fn export_rows(responses: &[EmaResponse], filter: &ExportFilter) -> Vec<ExportRow> {
    let mut rows = Vec::new();
    for r in responses.iter().filter(|r| filter.admits(r)) {
        let row = |qid: Option<&String>, value: Option<&AnswerValue>| ExportRow {
            participant: r.participant.clone(),
            date: r.date,
            window: r.window,
            qid: qid.cloned(),
            revision: r.revision,
            value: value.cloned(),
            submitted_at: r.submitted_at,
        };
        if r.answers.is_empty() {
            rows.push(row(None, None));
        }
        for (qid, value) in &r.answers {
            rows.push(row(Some(qid), Some(value)));
        }
    }
    rows.sort_by(|a, b| {
        (&a.participant, a.date, a.window, &a.qid, a.revision).cmp(&(&b.participant, b.date, b.window, &b.qid, b.revision))
    });
    rows
}

fn level_label(def: &SurveyDefinition, qid: &str, level: u8) -> String {
    def.question(qid)
        .and_then(|q| q.answer.labels().get(usize::from(level)))
        .cloned()
        .unwrap_or_else(|| level.to_string())
}

/// Text form of a value for the CSV `value` column.
pub fn format_value(def: &SurveyDefinition, qid: &str, value: &AnswerValue) -> String {
    match value {
        AnswerValue::Magnitude(m) => m.to_string(),
        AnswerValue::Clock(c) => c.to_string(),
        AnswerValue::Level(l) => level_label(def, qid, *l),
        AnswerValue::Categories(c) => serde_json::to_string(c).expect("strings serialize"),
        AnswerValue::Flag(b) => b.to_string(),
        AnswerValue::Text(t) => t.clone(),
    }
}

/// Reads a CSV `value` back using the question's answer kind.
pub fn parse_value(def: &SurveyDefinition, qid: &str, text: &str) -> Result<AnswerValue, String> {
    let q = def.question(qid).ok_or_else(|| format!("unknown question {qid:?}"))?;
    let bad = || format!("{qid}: cannot read {text:?}");
    Ok(match &q.answer {
        AnswerKind::QuantSequential { .. } => AnswerValue::Magnitude(text.parse().map_err(|_| bad())?),
        AnswerKind::QuantCyclic => AnswerValue::Clock(text.parse::<ClockTime>().map_err(|_| bad())?),
        AnswerKind::OrdinalSequential { levels } | AnswerKind::OrdinalDiverging { levels } => {
            let i = levels.iter().position(|l| l == text).ok_or_else(bad)?;
            AnswerValue::Level(i as u8)
        }
        AnswerKind::Categorical { .. } => AnswerValue::Categories(serde_json::from_str(text).map_err(|_| bad())?),
        AnswerKind::Binary => AnswerValue::Flag(text.parse().map_err(|_| bad())?),
        AnswerKind::FreeText => AnswerValue::Text(text.into()),
    })
}

pub fn write_csv(out: impl Write, rows: &[ExportRow], def: &SurveyDefinition) -> Result<(), ExportError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        let qid = row.qid.as_deref().unwrap_or("");
        let value = row.value.as_ref().map(|v| format_value(def, qid, v)).unwrap_or_default();
        w.write_record([
            row.participant.as_str(),
            &row.date.to_string(),
            row.window.name(),
            qid,
            &row.revision.to_string(),
            &value,
            &row.submitted_at.to_rfc3339(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl Read, def: &SurveyDefinition) -> Result<Vec<ExportRow>, ExportError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(ExportError::Row { row: 0, message: format!("expected header {}", CSV_HEADER.join(",")) });
    }
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let err = |message: String| ExportError::Row { row, message };
        let field = |n: usize| record.get(n).unwrap_or("");
        let qid = field(3);
        let value = if qid.is_empty() { None } else { Some(parse_value(def, qid, field(5)).map_err(err)?) };
        rows.push(ExportRow {
            participant: field(0).into(),
            date: field(1).parse().map_err(|e| err(format!("date: {e}")))?,
            window: field(2).parse().map_err(|e| err(format!("window: {e}")))?,
            qid: (!qid.is_empty()).then(|| qid.to_string()),
            revision: field(4).parse().map_err(|e| err(format!("revision: {e}")))?,
            value,
            submitted_at: DateTime::parse_from_rfc3339(field(6)).map_err(|e| err(format!("submitted_at: {e}")))?,
        });
    }
    Ok(rows)
}

pub fn write_json(out: impl Write, rows: &[ExportRow]) -> Result<(), ExportError> {
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_json(input: impl Read) -> Result<Vec<ExportRow>, ExportError> {
    Ok(serde_json::from_reader(input)?)
}

/// Regroups rows into responses, ordered so that replaying them through
/// `put_response` reproduces the exported revision numbers.
pub fn rows_to_responses(rows: &[ExportRow]) -> Result<Vec<EmaResponse>, ExportError> {
    let mut grouped: BTreeMap<(String, NaiveDate, SurveyWindow, u32), EmaResponse> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        let key = (row.participant.clone(), row.date, row.window, row.revision);
        let r = grouped.entry(key).or_insert_with(|| EmaResponse {
            participant: row.participant.clone(),
            date: row.date,
            window: row.window,
            submitted_at: row.submitted_at,
            answers: BTreeMap::new(),
            revision: row.revision,
        });
        if r.submitted_at != row.submitted_at {
            return Err(ExportError::Row { row: i + 1, message: "rows of one revision disagree on submitted_at".into() });
        }
        if let (Some(q), Some(v)) = (&row.qid, &row.value) {
            r.answers.insert(q.clone(), v.clone());
        }
    }
    Ok(grouped.into_values().collect())
}

/// Appends the rows' responses to `store`, returning how many were written.
///
/// Revisions are reassigned by the store; importing a complete export into
/// an empty store reproduces the original numbering.
pub fn import_rows(store: &Store, rows: &[ExportRow]) -> Result<usize, ExportError> {
    let responses = rows_to_responses(rows)?;
    for r in &responses {
        store.put_response(r)?;
    }
    Ok(responses.len())
}
