use std::path::Path;
use std::process::{Command, Output};

fn msf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msf"))
        .args(args)
        .env_remove("MSF_PRECISION")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fixtures_are_listed() {
    let out = msf(&["fixtures", "list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["g1", "g2", "g4", "fig1-left"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{text}");
    }
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&msf(&["frobnicate"])), 64);
    assert_eq!(code(&msf(&["verify", "/nonexistent/graph.msf"])), 64);
    assert_eq!(code(&msf(&["verify", "fixture:g9"])), 64);
    assert_eq!(code(&msf(&["--precision", "12", "fixtures", "list"])), 64);
}

#[test]
fn fixture_verdicts_set_the_exit_code() {
    let g2 = msf(&["verify", "fixture:g2"]);
    assert_eq!(code(&g2), 0, "{}", stdout(&g2));
    assert_eq!(
        code(&msf(&["verify", "fixture:g1", "--profile", "fixture"])),
        3
    );
    assert_ne!(code(&msf(&["verify", "fixture:fig1-left"])), 0);
}

#[test]
fn solve_then_verify_the_ring() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("g2.msf");
    let ring = dir.path().join("ring.msf");
    let report = dir.path().join("report.json");
    let svg = dir.path().join("ring.svg");

    let out = msf(&["solve", "--template", "g2", "--n", "169", "-o", path(&base)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("alpha"));
    assert_eq!(code(&msf(&["angles", path(&base)])), 0);

    assert_eq!(
        code(&msf(&[
            "assemble",
            "--ring",
            "169",
            path(&base),
            "-o",
            path(&ring)
        ])),
        0
    );
    let out = msf(&["verify", path(&ring), "--report", path(&report)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let json = std::fs::read_to_string(&report).unwrap();
    assert!(
        json.contains("\"planar\": true") || json.contains("\"planar\":true"),
        "{json}"
    );

    assert_eq!(code(&msf(&["svg", path(&ring), "-o", path(&svg)])), 0);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("</svg>"));
}

#[test]
fn search_finds_169() {
    let out = msf(&["search", "--template", "g2", "--from", "165", "--to", "172"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().last(), Some("169"));
}

#[test]
fn precision_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g1.msf");
    let out = Command::new(env!("CARGO_BIN_EXE_msf"))
        .args(["solve", "--template", "g1", "--n", "100", "-o", path(&file)])
        .env("MSF_PRECISION", "45")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(
        text.lines().any(|l| l == "precision 45"),
        "{}",
        &text[..200]
    );

    let out = Command::new(env!("CARGO_BIN_EXE_msf"))
        .args(["fixtures", "list"])
        .env("MSF_PRECISION", "20")
        .output()
        .unwrap();
    assert_eq!(code(&out), 64);
}
