use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_facetweek"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env("RUST_LOG", "warn").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn render(input: &Path, out: &Path) -> Output {
    run(&["render", "--in", input.to_str().unwrap(), "--week", "2026-03-16", "--out", out.to_str().unwrap()])
}

#[test]
fn golden_svg_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let golden = std::fs::read(fixtures().join("seed7-full.svg")).unwrap();
    for i in 0..3 {
        let out = dir.path().join(format!("{i}.svg"));
        let o = render(&fixtures().join("seed7-full.json"), &out);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert!(std::fs::read(&out).unwrap() == golden, "render {i} differs from the committed snapshot");
    }
}

#[test]
fn synth_reproduces_golden_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cohort");
    let o = run(&[
        "synth", "--n", "1", "--seed", "7", "--profile", "full", "--dropout", "0", "--start", "2026-03-02", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let generated = std::fs::read(out.join("P001/responses.json")).unwrap();
    assert!(generated == std::fs::read(fixtures().join("seed7-full.json")).unwrap());
    let plan: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("P001/plan.json")).unwrap()).unwrap();
    assert_eq!(plan["weeks"][2]["kind"], "ema_plus_viz");
    assert_eq!(plan["weeks"][2]["week_start"], "2026-03-16");
}

#[test]
fn render_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.svg");
    assert_eq!(code(&render(&dir.path().join("missing.json"), &out)), 2);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "[{\"participant\": 3}]").unwrap();
    assert_eq!(code(&render(&garbage, &out)), 1);

    let invalid = dir.path().join("invalid.json");
    let mut rs: serde_json::Value = serde_json::from_slice(&std::fs::read(fixtures().join("seed7-full.json")).unwrap()).unwrap();
    rs[0]["answers"]["symptom_intensity"] = serde_json::json!({"magnitude": 12});
    std::fs::write(&invalid, serde_json::to_vec(&rs).unwrap()).unwrap();
    let o = render(&invalid, &out);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("symptom_intensity"));
    assert!(!out.exists());

    let o = render(&fixtures().join("seed7-full.json"), &dir.path().join("no/such/dir/out.svg"));
    assert_eq!(code(&o), 2);

    let o = run(&["render", "--in", "x", "--week", "not-a-date", "--out", "y"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn render_now_controls_pending() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let out = dir.path().join("out.svg");
    let args = |now: &str| {
        run(&[
            "render", "--in", empty.to_str().unwrap(), "--week", "2026-03-16", "--participant", "P001", "--now", now,
            "--out", out.to_str().unwrap(),
        ])
    };
    assert_eq!(code(&args("2026-03-16T06:00:00")), 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("class=\"missing\"").count(), 0);
    assert_eq!(code(&args("2026-03-23T00:00:00")), 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("class=\"missing\"").count(), 7 + 21 + 21 + 84 + 7 + 7 + 21 + 7 + 21 + 21);
}

#[test]
fn validate_directory_and_bad_file() {
    let dir = tempfile::tempdir().unwrap();
    let cohort = dir.path().join("cohort");
    assert_eq!(code(&run(&["synth", "--n", "3", "--seed", "1", "--start", "2026-03-02", "--out", cohort.to_str().unwrap()])), 0);
    let o = run(&["validate", "--in", cohort.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 3);

    let bad = cohort.join("P002/responses.json");
    let mut rs: serde_json::Value = serde_json::from_slice(&std::fs::read(&bad).unwrap()).unwrap();
    rs[0]["answers"]["made_up"] = serde_json::json!({"flag": true});
    std::fs::write(&bad, serde_json::to_vec(&rs).unwrap()).unwrap();
    assert_eq!(code(&run(&["validate", "--in", cohort.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["validate", "--in", dir.path().join("nope").to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["synth", "--n", "1", "--start", "2026-03-02", "--timezone", "Mars/Olympus", "--out", "x"])), 1);
}

#[test]
fn import_export_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    assert_eq!(code(&run(&["synth", "--n", "2", "--seed", "9", "--start", "2026-03-02", "--out", &p("cohort")])), 0);
    assert_eq!(code(&run(&["import", "--data", &p("a.log"), "--in", &p("cohort")])), 0);
    assert_eq!(code(&run(&["export", "--data", &p("a.log"), "--format", "csv", "--out", &p("all.csv")])), 0);
    assert_eq!(code(&run(&["export", "--data", &p("a.log"), "--format", "json", "--out", &p("all.json")])), 0);
    assert_eq!(code(&run(&["import", "--data", &p("b.log"), "--in", &p("all.csv")])), 0);
    assert_eq!(code(&run(&["import", "--data", &p("c.log"), "--in", &p("all.json")])), 0);
    for log in ["b.log", "c.log"] {
        assert_eq!(code(&run(&["export", "--data", &p(log), "--format", "csv", "--out", &p("again.csv")])), 0);
        assert!(std::fs::read(p("again.csv")).unwrap() == std::fs::read(p("all.csv")).unwrap(), "{log}");
    }
    let o = run(&["export", "--data", &p("a.log"), "--participant", "P002", "--from", "2026-03-03", "--to", "2026-03-03"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.starts_with("P002,2026-03-03,")));

    let o = run(&["report", "--data", &p("a.log"), "--participant", "P001", "--week", "2026-03-16"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["report", "--data", &p("a.log"), "--participant", "P404", "--week", "2026-03-16"])), 1);
    assert_eq!(code(&run(&["export", "--data", &p("none.log")])), 2);

    std::fs::write(p("foreign.log"), "hello").unwrap();
    assert_eq!(code(&run(&["export", "--data", &p("foreign.log")])), 1);
}

#[test]
fn synth_44_and_empty_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cohort");
    assert_eq!(code(&run(&["synth", "--n", "44", "--seed", "7", "--start", "2026-03-02", "--out", out.to_str().unwrap()])), 0);
    let dirs = std::fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().path().is_dir()).count();
    assert_eq!(dirs, 44);
    assert_eq!(code(&run(&["validate", "--in", out.to_str().unwrap()])), 0);

    let log = dir.path().join("empty.log");
    facetweek::store::Store::open(&log).unwrap();
    let csv = dir.path().join("empty.csv");
    let o = run(&["export", "--data", log.to_str().unwrap(), "--format", "csv", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "participant,date,window,qid,revision,value,submitted_at\r\n");
}
