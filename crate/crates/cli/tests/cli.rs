use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_posetrep"))
}

fn data(name: &str) -> String {
    repo().join("data").join(name).to_string_lossy().into_owned()
}

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn definitive_analysis_exits_zero() {
    let o = run(&["analyze", &data("2x5.poset")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("rep_finite: no"), "{text}");
    assert!(text.contains("tame: yes*"), "{text}");
}

#[test]
fn unknown_verdict_exits_two() {
    let o = run(&["analyze", &data("seven.poset")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("g_tame: unknown"));
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "/definitely/not/here.poset"]).status.code(), Some(1));
    assert_eq!(run(&["--budget", "0", "gfan", &data("k3.quiver")]).status.code(), Some(1));
    assert_eq!(run(&["--json", "--dot", "knit", &data("k3.quiver")]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn reads_standard_input() {
    let mut child = bin().args(["analyze", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"a < b\na < c\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rep_finite: yes"));
}

#[test]
fn json_report_round_trips_byte_for_byte() {
    let o = run(&["--json", "analyze", &data("2x5.poset")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["tool"], "posetrep");
    assert_eq!(value["schema"], 1);
    assert_eq!(value["command"]["name"], "analyze");
    assert_eq!(value["config"]["window"], 6);
    assert_eq!(format!("{}\n", serde_json::to_string_pretty(&value).unwrap()), text);
}

#[test]
fn json_output_is_deterministic() {
    let a = stdout(&run(&["--json", "--seed", "7", "analyze", &data("seven.poset")]));
    let b = stdout(&run(&["--json", "--seed", "7", "analyze", &data("seven.poset")]));
    assert_eq!(a, b);
}

#[test]
fn quiver_classification_reports_the_negative_vector() {
    let o = run(&["quiver", "classify", &data("k3.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Wild; hyperbolic; q(1,1)=-1");
}

#[test]
fn generated_families_feed_back_into_analysis() {
    let o = run(&["generate", "product", "2", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let mut child = bin().args(["analyze", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(&o.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(stdout(&out).contains("rep_finite: yes"));
}

#[test]
fn knit_emits_graphviz() {
    let o = run(&["--dot", "--window", "2", "knit", &data("k3.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest", "--frames-dir", &repo().join("crates/core/frames").to_string_lossy()]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn selftest_rejects_a_corrupted_frames_directory() {
    let src = repo().join("crates/core/frames");
    let dst = Path::new(env!("CARGO_TARGET_TMPDIR")).join("corrupted-frames");
    for sub in ["loupias", "les"] {
        std::fs::create_dir_all(dst.join(sub)).unwrap();
        for entry in std::fs::read_dir(src.join(sub)).unwrap() {
            let entry = entry.unwrap();
            std::fs::copy(entry.path(), dst.join(sub).join(entry.file_name())).unwrap();
        }
    }
    std::fs::write(dst.join("loupias/A3.poset"), "x <\n").unwrap();
    let o = run(&["selftest", "--frames-dir", &dst.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  frames directory"));
}
