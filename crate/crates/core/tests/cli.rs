use std::io::Write;
use std::process::{Command, Output, Stdio};

use spintensor::cli::{run_job_str, Overrides, ResultDocument};
use spintensor::{DensityKind, DensityVariant};

const TRIVIAL: &str = r#"{"m":5,"pi1":{"sigma":["0","0"],"t":1.0},"pi2":{"kind":"principal","mu":["0","0"],"t":2.0},"command":"decompose"}"#;
const REPORT_M5: &str = r#"{"m":5,"pi1":{"sigma":["1/2","1/2"],"t":1.0},"pi2":{"kind":"principal","mu":["3/2","1/2"],"t":2.0},"command":"report","cutoff":"5/2"}"#;
const REPORT_M4: &str = r#"{"m":4,"pi1":{"sigma":["0","0"],"t":1.0},"pi2":{"kind":"principal","mu":["0","0"],"t":2.0},"command":"report","cutoff":"1/2","t_grid":[1.0]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spintensor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trivial_job_from_stdin() {
    let out = run(&[], TRIVIAL);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.ends_with('\n') && text.lines().count() == 1);
    assert!(text.contains(r#""blocks":[{"delta":["0","0"],"multiplicity":1,"provenance":"#), "{text}");
}

#[test]
fn discrete_series_on_odd_spin_exits_2() {
    let job = r#"{"m":4,"pi1":{"sigma":["0","0"],"t":1.0},"pi2":{"kind":"discrete","sign":"+","a":["0","0","0"]},"command":"decompose"}"#;
    let out = run(&[], job);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "invalid");
    let msgs: Vec<&str> = v["violations"].as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect();
    assert!(msgs.iter().any(|m| m.contains("discrete series exist only for Spin(2n,1)")), "{msgs:?}");
}

#[test]
fn complementary_zero_tail_exits_2() {
    let job = r#"{"m":5,"pi1":{"sigma":["0","0"],"t":1.0},"pi2":{"kind":"complementary","mu":["1","1"],"a":2.4},"command":"decompose"}"#;
    let out = run(&[], job);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("mu_2"), "{}", stdout(&out));
}

#[test]
fn malformed_input_names_the_field() {
    let job = r#"{"m":5,"pi1":{"sigma":["0","0"],"t":1.0},"pi2":{"kind":"principal","mu":["0","0.5"],"t":2.0},"command":"decompose"}"#;
    let out = run(&[], job);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("pi2.mu[1]"), "{}", stdout(&out));

    let out = run(&[], &TRIVIAL.replace("decompose", "explode"));
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("command"), "{}", stdout(&out));
}

#[test]
fn files_and_overrides() {
    let dir = std::env::temp_dir().join(format!("spintensor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("job.json");
    let output = dir.join("result.json");
    std::fs::write(&input, REPORT_M4).unwrap();
    let out = run(
        &["--input", input.to_str().unwrap(), "--output", output.to_str().unwrap(), "--t-grid", "0.25,3", "--threads", "1"],
        "",
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let doc: ResultDocument = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let report = doc.report.unwrap();
    assert!(report.discrete.is_none());
    assert!(!report.continuous.is_empty());
    for c in &report.continuous {
        assert_eq!(c.density.kind, DensityKind::Flat);
        assert_eq!(c.samples.iter().map(|s| s.t).collect::<Vec<_>>(), vec![0.25, 3.0]);
    }
    assert!(report.density_table.starts_with("phi,t,density\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic_across_runs_and_thread_counts() {
    let a = run(&[], REPORT_M5);
    let b = run(&[], REPORT_M5);
    let c = run(&["--threads", "1"], REPORT_M5);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn result_documents_round_trip() {
    for job in [TRIVIAL, REPORT_M5, REPORT_M4] {
        let out = run_job_str(job, &Overrides::default());
        assert_eq!(out.exit_code, 0, "{}", out.output);
        let doc: ResultDocument = serde_json::from_str(&out.output).unwrap();
        assert_eq!(serde_json::to_string(&doc).unwrap() + "\n", out.output);
        let again: ResultDocument = serde_json::from_str(&out.output).unwrap();
        assert_eq!(doc, again);
    }
}

#[test]
fn density_variant_changes_only_density_roots() {
    let prop = Overrides { density_variant: Some(DensityVariant::Proposition), ..Default::default() };
    let thm = Overrides { density_variant: Some(DensityVariant::Theorem), ..Default::default() };
    let a: ResultDocument = serde_json::from_str(&run_job_str(REPORT_M5, &prop).output).unwrap();
    let b: ResultDocument = serde_json::from_str(&run_job_str(REPORT_M5, &thm).output).unwrap();
    assert_eq!(a.blocks, b.blocks);
    let (ra, rb) = (a.report.unwrap(), b.report.unwrap());
    assert_eq!(ra.blocks, rb.blocks);
    assert_eq!(ra.discrete, rb.discrete);
    assert_eq!(ra.continuous.len(), rb.continuous.len());
    let mut differs = false;
    for (x, y) in ra.continuous.iter().zip(&rb.continuous) {
        assert_eq!(x.phi, y.phi);
        assert_eq!(x.multiplicity, y.multiplicity);
        assert_eq!((x.density.kind, x.density.t_power, x.density.pi_power), (y.density.kind, y.density.t_power, y.density.pi_power));
        differs |= x.density.roots != y.density.roots;
    }
    assert!(differs);
}

#[test]
fn cutoff_override_truncates_report() {
    let small = Overrides { cutoff: Some("1/2".parse().unwrap()), ..Default::default() };
    let doc: ResultDocument = serde_json::from_str(&run_job_str(REPORT_M5, &small).output).unwrap();
    let report = doc.report.unwrap();
    assert_eq!(report.cutoff.to_string(), "1/2");
    assert!(report.continuous.iter().all(|c| c.phi.first() <= report.cutoff));
    assert!(report.discrete.unwrap().iter().all(|d| d.a.first() <= report.cutoff));
}

#[test]
fn max_rank_flag_limits_weyl_enumeration() {
    let job = r#"{"m":7,"pi1":{"sigma":["0","0","0"],"t":1.0},"pi2":{"kind":"principal","mu":["0","0","0"],"t":2.0},"command":"decompose"}"#;
    assert_eq!(run(&[], job).status.code(), Some(0));
    let out = run(&["--max-rank", "2"], job);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("rank"), "{}", stdout(&out));
}
