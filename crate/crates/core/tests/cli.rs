mod common;

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use common::corpus_path;

fn dtdgraph(args: &[&str], stdin: Option<&[u8]>) -> Output {
    dtdgraph_env(args, stdin, "never")
}

fn dtdgraph_env(args: &[&str], stdin: Option<&[u8]>, color: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dtdgraph"))
        .args(args)
        .env("DTDGRAPH_COLOR", color)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn corpus_to_dot() {
    let dtd = corpus_path("amv.dtd");
    let links = corpus_path("amv.links");
    let out = dtdgraph(&[path(&dtd), "--annotations", path(&links)], None);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let dot = text(&out.stdout);
    assert!(dot.starts_with("// source: "), "{dot}");
    assert_eq!(dot.matches("fillcolor=\"green\"").count(), 25);
    assert_eq!(dot.matches("arrowhead=onormal").count(), 6);
    dtdgraph::dot::check_dot(&dot).unwrap();
    // The external `body` entity is left unresolved and reported.
    assert!(text(&out.stderr).contains("body"), "{}", text(&out.stderr));
}

#[test]
fn output_is_byte_stable() {
    let dtd = corpus_path("amv.dtd");
    let a = dtdgraph(&[path(&dtd), "--format", "json"], None);
    let b = dtdgraph(&[path(&dtd), "--format", "json"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("amv.dot");
    let out = dtdgraph(&[path(&corpus_path("amv.dtd")), "-o", path(&target)], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.starts_with("// source: "));
}

#[test]
fn missing_input_exits_one() {
    let out = dtdgraph(&["/no/such/file.dtd"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        text(&out.stderr).contains("cannot open"),
        "{}",
        text(&out.stderr)
    );
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_error_exits_one_with_location() {
    let out = dtdgraph(&[], Some(b"<!ELEMENT a (b,>\n"));
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.starts_with("<stdin>:1:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let out = dtdgraph(&["--format", "svg"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = dtdgraph(&["--rankdir", "XY"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = dtdgraph(&["--from-json", "--annotations", "x.links"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = dtdgraph(&["--help"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stdout).contains("--collapse"));
}

#[test]
fn json_round_trip_through_the_binary() {
    let dtd = corpus_path("amv.dtd");
    let links = corpus_path("amv.links");
    let json = dtdgraph(
        &[
            path(&dtd),
            "--annotations",
            path(&links),
            "--format",
            "json",
        ],
        None,
    );
    assert_eq!(json.status.code(), Some(0));

    let verify = dtdgraph(&["--verify"], Some(&json.stdout));
    assert_eq!(verify.status.code(), Some(0), "{}", text(&verify.stderr));
    assert!(verify.stdout.is_empty());

    let direct = dtdgraph(&[path(&dtd), "--annotations", path(&links)], None);
    let via_json = dtdgraph(&["--from-json"], Some(&json.stdout));
    assert_eq!(via_json.status.code(), Some(0));
    assert_eq!(direct.stdout, via_json.stdout);

    let mut tampered = text(&json.stdout);
    tampered = tampered.replacen("\"format\"", " \"format\"", 1);
    let verify = dtdgraph(&["--verify"], Some(tampered.as_bytes()));
    assert_eq!(verify.status.code(), Some(1));
}

#[test]
fn collapse_from_json_matches_collapse_from_dtd() {
    let dtd = corpus_path("amv.dtd");
    let json = dtdgraph(&[path(&dtd), "--format", "json"], None);
    let direct = dtdgraph(&[path(&dtd), "--collapse", "liste-films"], None);
    let via_json = dtdgraph(
        &["--from-json", "--collapse", "liste-films"],
        Some(&json.stdout),
    );
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(direct.stdout, via_json.stdout);
    assert!(text(&direct.stdout).contains("c:liste-films/collapsed"));
}

#[test]
fn entity_map_resolves_external_entity() {
    let dir = tempfile::tempdir().unwrap();
    let body = dir.path().join("body.ent");
    std::fs::write(&body, "p | em").unwrap();
    let dtd = corpus_path("amv.dtd");
    let mapping = format!(
        "http://www.w3.org/TR/xhtml1/DTD/xhtml1-strict.dtd={}",
        path(&body)
    );

    let plain = dtdgraph(&[path(&dtd)], None);
    assert!(text(&plain.stdout).contains("~ %body;"));

    let out = dtdgraph(&[path(&dtd), "--entity-map", &mapping], None);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let dot = text(&out.stdout);
    assert!(!dot.contains("%body;"), "{dot}");
    assert!(dot.contains("\"u:p\""), "{dot}");
    assert!(dot.contains("\"u:em\""), "{dot}");
}

#[test]
fn propose_links_reports_without_applying() {
    let dtd = corpus_path("amv.dtd");
    let out = dtdgraph(&[path(&dtd), "--propose-links"], None);
    assert_eq!(out.status.code(), Some(0));
    let err = text(&out.stderr);
    assert!(err.contains("proposed: like.client -> client"), "{err}");
    assert_eq!(err.matches("proposed:").count(), 1, "{err}");
    assert!(!text(&out.stdout).contains("onormal"));
}

#[test]
fn text_hint_and_style_flags() {
    let src = b"<!ELEMENT titre (#PCDATA)>\n<!ATTLIST titre id ID #REQUIRED>\n";
    let out = dtdgraph(
        &[
            "--text-hint",
            "titre=string",
            "--element-color",
            "lightblue",
            "--rankdir",
            "LR",
            "--glyph",
            "one=none",
            "--no-attributes",
        ],
        Some(src),
    );
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let dot = text(&out.stdout);
    assert!(dot.contains("label=\"string\""), "{dot}");
    assert!(dot.contains("fillcolor=\"lightblue\""), "{dot}");
    assert!(dot.contains("rankdir=LR;"), "{dot}");
    assert!(dot.contains("arrowhead=none"), "{dot}");
    assert!(!dot.contains("a:titre"), "{dot}");
}

#[test]
fn legend_needs_no_input() {
    let out = dtdgraph(&["--format", "legend"], None);
    assert_eq!(out.status.code(), Some(0));
    let dot = text(&out.stdout);
    dtdgraph::dot::check_dot(&dot).unwrap();
    for glyph in ["teetee", "teeodot", "crowodot", "crowtee"] {
        assert!(dot.contains(glyph), "{glyph}");
    }
}

#[test]
fn color_changes_diagnostics_only() {
    let src = b"<!ELEMENT a (b)>\n";
    let plain = dtdgraph_env(&[], Some(src), "never");
    let colored = dtdgraph_env(&[], Some(src), "always");
    assert_eq!(plain.stdout, colored.stdout);
    assert!(!text(&plain.stderr).contains('\x1b'));
    assert!(text(&colored.stderr).contains('\x1b'));
}
