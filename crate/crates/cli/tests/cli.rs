mod common;

use std::fs;
use std::path::Path;

use common::manifest::{fixture, golden_path, run, CASES};
use descent_ss_cli::commands::seeded_instance_text;
use descent_ss_cli::{run as run_command, Command, Document, Options};

fn bin() -> &'static Path {
    Path::new(env!("CARGO_BIN_EXE_descent-ss"))
}

fn updating() -> bool {
    std::env::var_os("UPDATE_GOLDEN").is_some()
}

#[test]
fn fixtures_match_golden_transcripts() {
    for case in CASES {
        let (code, text) = run(bin(), case);
        assert_eq!(code, case.code, "{}: exit code\n{text}", case.name);
        let path = golden_path(case);
        if updating() {
            fs::write(&path, &text).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(text, want, "{} differs from its golden file", case.name);
    }
}

#[test]
fn reruns_are_byte_identical() {
    for case in CASES {
        assert_eq!(run(bin(), case).1, run(bin(), case).1, "{}", case.name);
    }
}

#[test]
fn seeded_fixture_is_the_seeded_instance() {
    let text = seeded_instance_text(1);
    let path = fixture("seeded_1.txt");
    if updating() {
        fs::write(&path, &text).unwrap();
    }
    assert_eq!(fs::read_to_string(path).unwrap(), text);
}

#[test]
fn seed_and_file_give_the_same_report() {
    let opts = Options { seed: Some(1), ..Options::default() };
    let seeded = run_command(Command::SsCompare, None, &opts).unwrap();
    let file = fs::read_to_string(fixture("seeded_1.txt")).unwrap();
    let from_file = run_command(Command::SsCompare, Some(&file), &Options::default()).unwrap();
    let body = |t: &str| t.split_once('\n').unwrap().1.to_string();
    assert_eq!(body(&seeded.text), body(&from_file.text));
    assert_eq!(seeded.ok, from_file.ok);
}

fn strip_comments(src: &str) -> String {
    let kept: Vec<&str> = src.lines().filter(|l| !l.trim_start().starts_with('#')).collect();
    kept.join("\n").trim().to_string()
}

#[test]
fn fixtures_round_trip_through_the_format() {
    for entry in fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let src = fs::read_to_string(&path).unwrap();
        let Ok(doc) = Document::parse(&src) else {
            assert!(path.ends_with("bad_parse.txt"), "{} does not parse", path.display());
            continue;
        };
        let text = doc.to_text();
        assert_eq!(text.trim(), strip_comments(&src), "{} is not in canonical form", path.display());
        assert_eq!(Document::parse(&text).unwrap().to_text(), text, "{}", path.display());
    }
}

#[test]
fn output_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("descent-ss-out-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let out = dir.join("snf.txt");
    let status = std::process::Command::new(bin())
        .args(["snf", "--input"])
        .arg(fixture("matrix.txt"))
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let direct = run_command(Command::Snf, Some(&fs::read_to_string(fixture("matrix.txt")).unwrap()), &Options::default()).unwrap();
    assert_eq!(fs::read_to_string(&out).unwrap(), direct.text);
    fs::remove_dir_all(dir).unwrap();
}
