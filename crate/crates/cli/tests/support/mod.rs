//! Golden-file cases for the `mml` binary.
#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// File fed to standard input, relative to the tests directory.
    pub stdin: Option<&'static str>,
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, stdin: None, exit }
}

pub const CASES: &[Case] = &[
    case("parse-frac", &["parse", "data/frac.mml"], 0),
    case("parse-pretty", &["parse", "--pretty", "data/frac.mml"], 0),
    case("parse-lenient-no-namespace", &["parse", "--lenient", "data/frac-no-namespace.mml"], 0),
    Case {
        name: "parse-lenient-stdin",
        args: &["parse", "--lenient", "-"],
        stdin: Some("data/entities.mml"),
        exit: 0,
    },
    case("clean-xrefs-annotations", &["clean", "--features", "cross-references,annotations", "data/frac.mml"], 0),
    case("clean-content-branch", &["clean", "--features", "content-branch", "--pretty", "data/frac.mml"], 0),
    case("split-content", &["split", "--branch", "content", "data/frac.mml"], 0),
    case("split-presentation", &["split", "--branch", "presentation", "--pretty", "data/frac.mml"], 0),
    case("extract-whole", &["extract", "data/frac.mml"], 0),
    case("extract-content", &["extract", "--scope", "content", "data/frac.mml"], 0),
    case("select-lib", &["select", "--lib", "all-identifiers", "data/frac.mml"], 0),
    case("select-expr", &["select", "--expr", "//annotation-xml/* | //mfrac", "data/frac.mml"], 0),
    case("select-list", &["select", "--list"], 0),
    case("histogram-whole", &["histogram", "--scope", "whole", "data/frac.mml"], 0),
    case("histogram-presentation", &["histogram", "--scope", "presentation", "data/frac.mml"], 0),
    case(
        "histogram-structural-sum",
        &["histogram", "--include-structural", "data/frac.mml", "data/x-plus-x.mml"],
        0,
    ),
    case("dist-cosine-identity", &["dist", "--measure", "cosine", "data/x-plus-x.mml", "data/x-plus-x.mml"], 0),
    case("dist-cosine", &["dist", "--measure", "cosine", "data/frac.mml", "data/presentation-only.mml"], 0),
    case("dist-hist-abs", &["dist", "--measure", "hist-abs", "data/frac.mml", "data/x-plus-x.mml"], 0),
    case("dist-hist-rel", &["dist", "--measure", "hist-rel", "data/frac.mml", "data/x-plus-x.mml"], 0),
    case("dist-emd", &["dist", "--measure", "emd", "data/frac.mml", "data/x-plus-x.mml"], 0),
    case("dist-ted", &["dist", "--measure", "ted", "data/frac.mml", "data/x-plus-x.mml"], 0),
    case(
        "dist-ted-weighted",
        &[
            "dist", "--measure", "ted", "--scope", "presentation", "--costs", "2,0.5,1", "data/frac.mml",
            "data/presentation-only.mml",
        ],
        0,
    ),
    case(
        "dist-ted-leaf-text",
        &[
            "dist", "--measure", "ted", "--labels", "name-and-text", "--scope", "presentation", "data/frac.mml",
            "data/presentation-only.mml",
        ],
        0,
    ),
    case(
        "doc-dist-emd-duplicated",
        &["doc-dist", "--measure", "emd", "--left", "data/frac.mml", "--right", "data/frac.mml", "data/frac.mml"],
        0,
    ),
    case(
        "doc-dist-cosine",
        &["doc-dist", "--measure", "cosine", "--left", "data/frac.mml", "data/x-plus-x.mml", "--right", "data/x-plus-x.mml"],
        0,
    ),
    case("convert-stub", &["convert", "--tool", "echo-frac", "data/frac.tex"], 0),
    case("convert-config", &["convert", "--converters", "data/converters.json", "--tool", "identity", "data/frac.mml"], 0),
    case("convert-list", &["convert", "--list"], 0),
    case("gold-validate-ok", &["gold-validate", "--gold", "data/gold-valid.json"], 0),
    // Domain errors: exit 1.
    case("gold-validate-findings", &["gold-validate", "--gold", "data/gold-small.json"], 1),
    case("err-malformed", &["parse", "data/malformed.mml"], 1),
    case("err-strict-repair", &["parse", "data/frac-no-namespace.mml"], 1),
    case("err-missing-branch", &["split", "--branch", "content", "data/presentation-only.mml"], 1),
    case("err-converter-failed", &["convert", "--converters", "data/converters.json", "--tool", "fail", "data/frac.tex"], 1),
    case("err-converter-timeout", &["convert", "--tool", "slow", "data/frac.tex"], 1),
    case("err-converter-output", &["convert", "--tool", "not-mathml", "data/frac.tex"], 1),
    case("err-gold-schema", &["gold-validate", "--gold", "../../core/tests/fixtures/gold/duplicate-id.json"], 1),
    // Usage errors: exit 2.
    case("err-missing-file", &["parse", "data/does-not-exist.mml"], 2),
    case("err-no-subcommand", &[], 2),
    case("err-bad-measure", &["dist", "--measure", "jaccard", "data/frac.mml", "data/frac.mml"], 2),
    case("err-bad-query", &["select", "--expr", "//[", "data/frac.mml"], 2),
    case("err-unknown-library-entry", &["select", "--lib", "no-such-entry", "data/frac.mml"], 2),
    case("err-bad-costs", &["dist", "--measure", "ted", "--costs", "1,2", "data/frac.mml", "data/frac.mml"], 2),
    case("err-unknown-feature", &["clean", "--features", "colors", "data/frac.mml"], 2),
    case("err-unknown-tool", &["convert", "--tool", "nope", "data/frac.tex"], 2),
    case("err-stdin-twice", &["dist", "--measure", "ted", "-", "-"], 2),
];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn golden_path(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.stdout"))
}

pub fn run_case(case: &Case) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mml"))
        .args(case.args)
        .current_dir(tests_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("mml starts");
    let input = case
        .stdin
        .map(|p| std::fs::read(tests_dir().join(p)).expect("stdin fixture"))
        .unwrap_or_default();
    child.stdin.take().expect("piped").write_all(&input).expect("stdin written");
    child.wait_with_output().expect("mml finishes")
}

/// Compares against the golden file; `UPDATE_GOLDEN=1` rewrites it instead.
pub fn check_case(case: &Case) -> Result<(), String> {
    let first = run_case(case);
    let second = run_case(case);
    let code = first.status.code();
    if code != Some(case.exit) {
        return Err(format!(
            "{}: exit {code:?}, expected {}; stderr: {}",
            case.name,
            case.exit,
            String::from_utf8_lossy(&first.stderr)
        ));
    }
    if first.stdout != second.stdout || second.status.code() != code {
        return Err(format!("{}: output differs between runs", case.name));
    }
    let path = golden_path(case.name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first.stdout).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want != first.stdout {
        return Err(format!(
            "{}: stdout differs from golden file\n--- want\n{}\n--- got\n{}",
            case.name,
            String::from_utf8_lossy(&want),
            String::from_utf8_lossy(&first.stdout)
        ));
    }
    Ok(())
}
