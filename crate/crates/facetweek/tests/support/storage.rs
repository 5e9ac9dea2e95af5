use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration as StdDuration, Instant};

use chrono::{DateTime, Days, Duration, FixedOffset, NaiveDate, TimeZone};
use facetweek::store::{frame, Durability, EventKind, EventRecord, Store};
use facetweek_core::ema::{default_survey_definition, EmaResponse, SurveyWindow};
use facetweek_core::synth::fuzz::{random_answers, FuzzOptions};
use facetweek_core::synth::{generate_week, ComplianceProfile, SynthOptions, SyntheticPersona};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{date, oracle::multiset};

pub const CHILD_ENV: &str = "FACETWEEK_TEST_KILL_WRITER";

#[derive(Debug, Default, Clone, Copy)]
pub struct FuzzStats {
    pub responses: usize,
    pub events: usize,
    pub reopens: usize,
}

fn check_equal(store: &Store, responses: &[EmaResponse], events: &[EventRecord], when: &str) -> Result<(), String> {
    if multiset(&store.all_responses()) != multiset(responses) {
        return Err(format!("responses differ {when}"));
    }
    if multiset(&store.events(None)) != multiset(events) {
        return Err(format!("events differ {when}"));
    }
    Ok(())
}

/// Random interleaving of response writes, event writes and reopens,
/// checked against an in-memory model by multiset equality.
pub fn fuzz_round_trip(path: &Path, ops: usize, seed: u64) -> Result<FuzzStats, String> {
    let def = default_survey_definition();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fuzz = FuzzOptions::default();
    let mut store = Store::open_with(path, Durability::Buffered).map_err(|e| e.to_string())?;
    let mut want_responses: Vec<EmaResponse> = Vec::new();
    let mut want_events: Vec<EventRecord> = Vec::new();
    let mut revisions: BTreeMap<(String, NaiveDate, SurveyWindow), u32> = BTreeMap::new();
    let mut clock: BTreeMap<String, DateTime<FixedOffset>> = BTreeMap::new();
    let offsets = [0, -6 * 3600, 5 * 3600 + 1800];
    let mut stats = FuzzStats::default();

    for i in 0..ops {
        let participant = format!("P{:03}", rng.gen_range(1..=6));
        let roll: f64 = rng.gen();
        if roll < 0.005 {
            drop(store);
            store = Store::open_with(path, Durability::Buffered).map_err(|e| e.to_string())?;
            check_equal(&store, &want_responses, &want_events, &format!("after reopen at op {i}"))?;
            stats.reopens += 1;
        } else if roll < 0.25 {
            let offset = FixedOffset::east_opt(offsets[rng.gen_range(0..offsets.len())]).unwrap();
            let last = clock.entry(participant.clone()).or_insert_with(|| {
                offset.from_local_datetime(&date(2026, 3, 2).and_hms_opt(7, 0, 0).unwrap()).unwrap()
            });
            let at = (*last + Duration::seconds(rng.gen_range(0..600))).with_timezone(&offset);
            *last = at;
            let kind = EventKind::ALL[rng.gen_range(0..EventKind::ALL.len())];
            let detail = if rng.gen_bool(0.2) { "line\nbreak \"quoted\" ünïcode".to_string() } else { format!("op {i}") };
            let event = EventRecord { participant, at, kind, detail };
            store.log_event(event.clone()).map_err(|e| e.to_string())?;
            want_events.push(event);
            stats.events += 1;
        } else {
            let window = SurveyWindow::ALL[rng.gen_range(0..3)];
            let day = date(2026, 3, 2) + Days::new(rng.gen_range(0..21));
            let offset = FixedOffset::east_opt(offsets[rng.gen_range(0..offsets.len())]).unwrap();
            let mut r = EmaResponse {
                participant: participant.clone(),
                date: day,
                window,
                submitted_at: offset.from_local_datetime(&day.and_hms_opt(9, rng.gen_range(0..60), 0).unwrap()).unwrap(),
                answers: random_answers(&mut rng, &def, window, &fuzz),
                revision: rng.gen(),
            };
            let rev = revisions.entry((participant, day, window)).or_default();
            *rev += 1;
            let got = store.put_response(&r).map_err(|e| e.to_string())?;
            if got != *rev {
                return Err(format!("op {i}: revision {got}, expected {rev}"));
            }
            r.revision = got;
            want_responses.push(r);
            stats.responses += 1;
        }
    }
    check_equal(&store, &want_responses, &want_events, "at end")?;
    drop(store);
    let store = Store::open(path).map_err(|e| e.to_string())?;
    check_equal(&store, &want_responses, &want_events, "after final reopen")?;
    Ok(stats)
}

/// The i-th response the writer child appends: the 21 slots of one full
/// week, over and over, so the revision of write i is i / 21 + 1.
pub fn nth_response(week: &[EmaResponse], i: usize) -> EmaResponse {
    let mut r = week[i % week.len()].clone();
    r.revision = (i / week.len()) as u32 + 1;
    r
}

pub fn writer_week() -> Vec<EmaResponse> {
    let opts = SynthOptions { dropout: 0.1, ..Default::default() };
    generate_week(3, &SyntheticPersona::default(), ComplianceProfile::Full, date(2026, 3, 2), "P001", &opts)
}

/// Body of the child process: append responses until killed.
pub fn run_writer_child() -> ! {
    let path = std::env::var(CHILD_ENV).expect("child path");
    let week = writer_week();
    let store = Store::open_with(&path, Durability::Buffered).expect("child opens store");
    let mut i = store.all_responses().len();
    loop {
        store.put_response(&nth_response(&week, i)).expect("child write");
        i += 1;
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct KillStats {
    pub kills: usize,
    pub records: usize,
    pub torn_bytes: usize,
}

/// Reads the log back and checks it is exactly a prefix of the child's
/// write sequence.
fn verify_prefix(path: &Path, week: &[EmaResponse]) -> Result<(Store, usize), String> {
    let store = Store::open(path).map_err(|e| format!("store unreadable: {e}"))?;
    let got = store.responses("P001");
    for (i, r) in got.iter().enumerate() {
        if *r != nth_response(week, i) {
            return Err(format!("record {i} differs from what was written"));
        }
    }
    let n = got.len();
    Ok((store, n))
}

/// Spawns `exe args..` as a writer child against `path`, SIGKILLs it after
/// a varying delay, and checks the log after each kill. Every third round
/// also chops a few bytes off the end, as a kill in the middle of a write
/// would.
pub fn kill_during_write(path: &Path, exe: &Path, args: &[&str], rounds: usize) -> Result<KillStats, String> {
    let week = writer_week();
    let mut stats = KillStats::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..rounds {
        let before = std::fs::metadata(path).map(|m| m.len()).unwrap_or(0);
        let mut child = Command::new(exe)
            .args(args)
            .env(CHILD_ENV, path)
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| format!("spawn: {e}"))?;
        let started = Instant::now();
        // Wait until the child has written something new.
        while std::fs::metadata(path).map(|m| m.len()).unwrap_or(0) <= before + 64 {
            if started.elapsed() > StdDuration::from_secs(20) {
                let _ = child.kill();
                return Err("writer child made no progress".into());
            }
            if let Ok(Some(status)) = child.try_wait() {
                return Err(format!("writer child exited early: {status}"));
            }
            std::thread::sleep(StdDuration::from_millis(1));
        }
        std::thread::sleep(StdDuration::from_millis(rng.gen_range(0..15)));
        child.kill().map_err(|e| format!("kill: {e}"))?;
        child.wait().map_err(|e| format!("wait: {e}"))?;
        stats.kills += 1;

        if round % 3 == 2 {
            let len = std::fs::metadata(path).map_err(|e| e.to_string())?.len();
            let cut = rng.gen_range(1..40).min(len.saturating_sub(8));
            let f = std::fs::OpenOptions::new().write(true).open(path).map_err(|e| e.to_string())?;
            f.set_len(len - cut).map_err(|e| e.to_string())?;
        }

        let (store, n) = verify_prefix(path, &week)?;
        stats.torn_bytes += store.open_report().truncated_bytes;
        // The store must also take new writes after recovery.
        store.put_response(&nth_response(&week, n)).map_err(|e| format!("write after recovery: {e}"))?;
        drop(store);
        let (_, m) = verify_prefix(path, &week)?;
        if m != n + 1 {
            return Err(format!("write after recovery not persisted ({n} then {m})"));
        }
        stats.records = m;
    }
    Ok(stats)
}

/// Cuts the log at every byte inside its last record and checks each cut
/// opens to the records before it.
pub fn every_torn_tail(path: &Path) -> Result<usize, String> {
    let week = writer_week();
    {
        let store = Store::open(path).map_err(|e| e.to_string())?;
        for i in 0..5 {
            store.put_response(&nth_response(&week, i)).map_err(|e| e.to_string())?;
        }
    }
    let full = std::fs::read(path).map_err(|e| e.to_string())?;
    // End of the fourth record.
    let mut four = frame::HEADER_LEN;
    for _ in 0..4 {
        match frame::scan(&full, four) {
            frame::Scan::Frame { next, .. } => four = next,
            other => return Err(format!("unexpected {other:?}")),
        }
    }
    let mut cuts = 0;
    for len in four..full.len() {
        std::fs::write(path, &full[..len]).map_err(|e| e.to_string())?;
        let store = Store::open(path).map_err(|e| format!("cut at {len}: {e}"))?;
        let got = store.responses("P001");
        let want: Vec<_> = (0..4).map(|i| nth_response(&week, i)).collect();
        if got != want {
            return Err(format!("cut at {len}: {} records", got.len()));
        }
        if store.open_report().truncated_bytes != len - four {
            return Err(format!("cut at {len}: reported {} torn bytes", store.open_report().truncated_bytes));
        }
        cuts += 1;
    }
    std::fs::write(path, &full).map_err(|e| e.to_string())?;
    Ok(cuts)
}
