use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::{Days, NaiveDate, NaiveDateTime, NaiveTime};
use clap::{Parser, Subcommand, ValueEnum};
use facetweek_core::ema::{build_week_dataset, validate_response, EmaResponse, SurveyDefinition, WindowTimes};
use facetweek_core::render::render_dashboard;
use facetweek_core::synth::{generate_cohort, ComplianceProfile, SynthOptions};

use crate::config::{load_definition, load_theme, ConfigError, Source};
use crate::export::{export_rows, import_rows, read_csv, read_json, write_csv, write_json, ExportError, ExportFilter};
use crate::forensic::forensic_report;
use crate::store::{Store, StoreError};

#[derive(Debug, Parser)]
#[command(name = "facetweek", version, about = "Weekly EMA dashboards for young people with chronic conditions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render one week of responses as an SVG dashboard.
    Render {
        /// JSON array of responses.
        #[arg(long = "in")]
        input: PathBuf,
        /// First day of the week.
        #[arg(long)]
        week: NaiveDate,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        theme: Option<PathBuf>,
        #[arg(long)]
        survey: Option<PathBuf>,
        /// Local time used to tell missed slots from pending ones
        /// [default: end of the week].
        #[arg(long)]
        now: Option<NaiveDateTime>,
        /// Required when the input holds several participants.
        #[arg(long)]
        participant: Option<String>,
    },
    /// Generate a synthetic cohort.
    Synth {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// First day of the study; also fixes the week start day.
        #[arg(long)]
        start: NaiveDate,
        #[arg(long, default_value = "UTC")]
        timezone: String,
        /// full, minimal, binger:N or random:P [default: sampled per participant].
        #[arg(long)]
        profile: Option<ComplianceProfile>,
        #[arg(long)]
        dropout: Option<f64>,
    },
    /// Check responses against the survey definition.
    Validate {
        /// A JSON array of responses, or a directory searched for responses.json files.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        survey: Option<PathBuf>,
    },
    /// Write stored responses as CSV or JSON.
    Export {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        participant: Option<String>,
        #[arg(long)]
        from: Option<NaiveDate>,
        #[arg(long)]
        to: Option<NaiveDate>,
        /// [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        survey: Option<PathBuf>,
    },
    /// Load an export file or a synthetic cohort directory into a store.
    Import {
        #[arg(long)]
        data: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        survey: Option<PathBuf>,
    },
    /// Per-day event timeline of one participant-week.
    Report {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        participant: String,
        #[arg(long)]
        week: NaiveDate,
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Exit status 1 is bad input, 2 is a filesystem problem.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Invalid(_) => ExitCode::from(1),
            CliError::Io(_) => ExitCode::from(2),
        }
    }

    fn io(path: &Path, e: io::Error) -> CliError {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl From<StoreError> for CliError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Read { .. } => CliError::Io(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ExportError> for CliError {
    fn from(e: ExportError) -> Self {
        match e {
            ExportError::Io(_) => CliError::Io(e.to_string()),
            ExportError::Store(s) => s.into(),
            ExportError::Csv(ref c) if matches!(c.kind(), csv::ErrorKind::Io(_)) => CliError::Io(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn source(path: &Option<PathBuf>) -> Source {
    path.clone().map_or(Source::Builtin, Source::File)
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn read_responses(path: &Path) -> Result<Vec<EmaResponse>, CliError> {
    serde_json::from_slice(&read_file(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn check_all(def: &SurveyDefinition, path: &Path, responses: &[EmaResponse]) -> Result<(), CliError> {
    let mut problems = Vec::new();
    for r in responses {
        if let Err(errors) = validate_response(def, r) {
            for e in errors {
                problems.push(format!("{} {} {}: {e}", r.participant, r.date, r.window));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("{}:\n  {}", path.display(), problems.join("\n  "))))
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Render { input, week, out, theme, survey, now, participant } => {
            let def = load_definition(&source(&survey))?;
            let theme = load_theme(&source(&theme))?;
            let responses = read_responses(&input)?;
            check_all(&def, &input, &responses)?;
            let participant = match participant {
                Some(p) => p,
                None => {
                    let mut ids: Vec<&str> = responses.iter().map(|r| r.participant.as_str()).collect();
                    ids.sort_unstable();
                    ids.dedup();
                    match ids.as_slice() {
                        [one] => one.to_string(),
                        [] => return Err(CliError::Invalid("no responses; pass --participant".into())),
                        _ => return Err(CliError::Invalid("several participants in input; pass --participant".into())),
                    }
                }
            };
            let now = now.unwrap_or_else(|| (week + Days::new(7)).and_time(NaiveTime::MIN));
            let data = build_week_dataset(&participant, &responses, week, now, &WindowTimes::default())
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            write_file(&out, render_dashboard(&data, &theme).svg.as_bytes())
        }
        Command::Synth { n, seed, out, start, timezone, profile, dropout } => {
            if timezone.parse::<chrono_tz::Tz>().is_err() {
                return Err(CliError::Invalid(format!("unknown time zone {timezone:?}")));
            }
            let mut options = SynthOptions { profile, ..Default::default() };
            if let Some(d) = dropout {
                if !(0.0..=1.0).contains(&d) {
                    return Err(CliError::Invalid(format!("dropout {d} is not a probability")));
                }
                options.dropout = d;
            }
            let cohort = generate_cohort(n, seed, start, &timezone, &options)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            for p in &cohort {
                let dir = out.join(&p.plan.participant);
                fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
                let responses: Vec<&EmaResponse> = p.weeks.iter().flat_map(|w| &w.responses).collect();
                write_file(&dir.join("plan.json"), &pretty(&p.plan))?;
                write_file(&dir.join("persona.json"), &pretty(&(&p.persona, &p.profile)))?;
                write_file(&dir.join("responses.json"), &pretty(&responses))?;
            }
            println!("wrote {} participants to {}", cohort.len(), out.display());
            Ok(())
        }
        Command::Validate { input, survey } => {
            let def = load_definition(&source(&survey))?;
            let files = if input.is_dir() { find_response_files(&input)? } else { vec![input.clone()] };
            if files.is_empty() {
                return Err(CliError::Invalid(format!("{}: no responses.json found", input.display())));
            }
            let mut failed = Vec::new();
            for f in &files {
                let responses = read_responses(f)?;
                match check_all(&def, f, &responses) {
                    Ok(()) => println!("{}: {} responses ok", f.display(), responses.len()),
                    Err(e) => {
                        eprintln!("{e}");
                        failed.push(f.display().to_string());
                    }
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Invalid(format!("{} of {} files invalid", failed.len(), files.len())))
            }
        }
        Command::Export { data, format, participant, from, to, out, survey } => {
            let def = load_definition(&source(&survey))?;
            if !data.exists() {
                return Err(CliError::Io(format!("{}: no such file", data.display())));
            }
            let store = Store::open(&data)?;
            let rows = export_rows(&store.all_responses(), &ExportFilter { participant, from, to });
            let mut buf = Vec::new();
            match format {
                Format::Csv => write_csv(&mut buf, &rows, &def)?,
                Format::Json => write_json(&mut buf, &rows)?,
            }
            match out {
                Some(path) => write_file(&path, &buf),
                None => io::stdout().write_all(&buf).map_err(|e| CliError::Io(format!("stdout: {e}"))),
            }
        }
        Command::Import { data, input, survey } => {
            let def = load_definition(&source(&survey))?;
            let store = Store::open(&data)?;
            let count = if input.is_dir() {
                import_cohort(&store, &def, &input)?
            } else {
                let bytes = read_file(&input)?;
                let rows = if input.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
                    read_csv(bytes.as_slice(), &def)?
                } else {
                    read_json(bytes.as_slice())?
                };
                let responses = crate::export::rows_to_responses(&rows)?;
                check_all(&def, &input, &responses)?;
                import_rows(&store, &rows)?
            };
            println!("imported {count} responses into {}", data.display());
            Ok(())
        }
        Command::Report { data, participant, week, json } => {
            if !data.exists() {
                return Err(CliError::Io(format!("{}: no such file", data.display())));
            }
            let store = Store::open(&data)?;
            if store.participant(&participant).is_none() && store.responses(&participant).is_empty() {
                return Err(CliError::Invalid(format!("unknown participant {participant}")));
            }
            let report = forensic_report(&store, &participant, week);
            if json {
                println!("{}", String::from_utf8_lossy(&pretty(&report)));
            } else {
                print!("{}", report.to_text());
            }
            Ok(())
        }
        Command::Serve { config } => {
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
            runtime.block_on(crate::service::serve(&config)).map_err(|e| match e {
                crate::service::ServiceError::Config(c) => c.into(),
                crate::service::ServiceError::Store(s) => s.into(),
                other => CliError::Io(other.to_string()),
            })
        }
    }
}

fn pretty<T: serde::Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("serializable");
    v.push(b'\n');
    v
}

fn find_response_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut found = Vec::new();
    let mut entries: Vec<_> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::io(dir, e))?;
    entries.sort_by_key(|e| e.path());
    for entry in entries {
        let path = entry.path();
        if path.is_dir() {
            found.extend(find_response_files(&path)?);
        } else if path.file_name().is_some_and(|n| n == "responses.json") {
            found.push(path);
        }
    }
    Ok(found)
}

/// Imports a directory written by `synth`: plans first, then responses.
fn import_cohort(store: &Store, def: &SurveyDefinition, dir: &Path) -> Result<usize, CliError> {
    let mut count = 0;
    for file in find_response_files(dir)? {
        let folder = file.parent().expect("file has a parent");
        let plan_path = folder.join("plan.json");
        if plan_path.exists() {
            let plan = serde_json::from_slice(&read_file(&plan_path)?)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", plan_path.display())))?;
            store.put_participant(&plan)?;
        }
        let responses = read_responses(&file)?;
        check_all(def, &file, &responses)?;
        for r in &responses {
            store.put_response(r)?;
        }
        count += responses.len();
    }
    Ok(count)
}

pub fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(io::stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
