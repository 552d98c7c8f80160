//! Adapters for external LaTeX to MathML converters.
//!
//! A converter is an external process: it receives TeX on standard input or
//! as an argument, writes MathML to standard output and exits with status 0.
//! Standard error is only kept for diagnostics. Whatever the tool prints is
//! parsed leniently, so every successful conversion yields a [`MathDoc`]
//! regardless of which engine produced it.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::sync::RwLock;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mathml::{MathDoc, MathNode, ParseMode, ParseReport, SerializeOptions, CONTENT_ENCODING, PRESENTATION_ENCODING};
use crate::samples::PARALLEL_FRAC;

/// Stands for the input in argument-mode command templates.
pub const TEX_PLACEHOLDER: &str = "{tex}";

pub const DEFAULT_TIMEOUT_MS: u64 = 30_000;

const STDERR_EXCERPT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputMode {
    Argument,
    #[serde(alias = "standard-input")]
    Stdin,
}

fn default_timeout_ms() -> u64 {
    DEFAULT_TIMEOUT_MS
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverterSpec {
    pub name: String,
    /// Program and arguments.
    pub command: Vec<String>,
    pub input_mode: InputMode,
    #[serde(default = "default_timeout_ms")]
    pub timeout_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("invalid converter spec: {0}")]
    InvalidSpec(String),
    #[error("converter `{0}` is already registered")]
    DuplicateName(String),
    #[error("no converter named `{0}`")]
    UnknownConverter(String),
    #[error("{tool}: cannot start: {reason}")]
    ToolUnavailable { tool: String, reason: String },
    #[error("{tool}: exited with {}: {stderr}", code.map_or("a signal".to_owned(), |c| format!("status {c}")))]
    ToolFailed {
        tool: String,
        code: Option<i32>,
        stderr: String,
        raw: String,
    },
    #[error("{tool}: no result after {} ms", after.as_millis())]
    Timeout { tool: String, after: Duration, raw: String },
    #[error("{tool}: output is not MathML: {reason}")]
    OutputNotMathML { tool: String, reason: String, raw: String },
}

impl ConverterSpec {
    pub fn new(name: &str, command: &[&str], input_mode: InputMode) -> Self {
        ConverterSpec {
            name: name.to_owned(),
            command: command.iter().map(|s| s.to_string()).collect(),
            input_mode,
            timeout_ms: DEFAULT_TIMEOUT_MS,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout_ms = timeout.as_millis() as u64;
        self
    }

    pub fn timeout(&self) -> Duration {
        Duration::from_millis(self.timeout_ms)
    }

    pub fn validate(&self) -> Result<(), ConvertError> {
        let bad = |m: String| Err(ConvertError::InvalidSpec(format!("{}: {m}", self.name)));
        if self.name.is_empty() {
            return Err(ConvertError::InvalidSpec("empty converter name".into()));
        }
        if self.command.first().is_none_or(|p| p.is_empty()) {
            return bad("empty command".into());
        }
        if self.timeout_ms == 0 {
            return bad("timeout must be positive".into());
        }
        let placeholders: usize = self.command.iter().map(|a| a.matches(TEX_PLACEHOLDER).count()).sum();
        match (self.input_mode, placeholders) {
            (InputMode::Argument, 1) | (InputMode::Stdin, 0) => Ok(()),
            (InputMode::Argument, n) => bad(format!("argument mode needs exactly one {TEX_PLACEHOLDER}, found {n}")),
            (InputMode::Stdin, _) => bad(format!("stdin mode takes no {TEX_PLACEHOLDER}")),
        }
    }

    /// Runs the tool on `tex` and parses its output leniently.
    pub fn run(&self, tex: &str) -> Result<ConversionResult, ConvertError> {
        self.validate()?;
        let tool = self.name.clone();
        let start = Instant::now();
        let mut cmd = Command::new(&self.command[0]);
        for arg in &self.command[1..] {
            cmd.arg(arg.replace(TEX_PLACEHOLDER, tex));
        }
        cmd.stdin(match self.input_mode {
            InputMode::Stdin => Stdio::piped(),
            InputMode::Argument => Stdio::null(),
        })
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());

        let mut child = cmd.spawn().map_err(|e| ConvertError::ToolUnavailable {
            tool: tool.clone(),
            reason: e.to_string(),
        })?;
        if let Some(mut stdin) = child.stdin.take() {
            let input = tex.to_owned();
            // The tool may exit without reading; a broken pipe is not our error.
            thread::spawn(move || {
                let _ = stdin.write_all(input.as_bytes());
            });
        }
        let stdout = collect(child.stdout.take().expect("piped stdout"));
        let stderr = collect(child.stderr.take().expect("piped stderr"));

        let timeout = self.timeout();
        let status = loop {
            match child.try_wait() {
                Ok(Some(status)) => break status,
                Ok(None) if start.elapsed() >= timeout => {
                    let _ = child.kill();
                    let _ = child.wait();
                    let raw = stdout.recv_timeout(Duration::from_millis(100)).unwrap_or_default();
                    return Err(ConvertError::Timeout {
                        tool,
                        after: timeout,
                        raw: String::from_utf8_lossy(&raw).into_owned(),
                    });
                }
                Ok(None) => thread::sleep(Duration::from_millis(2)),
                Err(e) => {
                    return Err(ConvertError::ToolUnavailable {
                        tool,
                        reason: e.to_string(),
                    })
                }
            }
        };
        let raw_bytes = stdout.recv().unwrap_or_default();
        let err_bytes = stderr.recv().unwrap_or_default();
        let raw = String::from_utf8_lossy(&raw_bytes).into_owned();
        if !status.success() {
            let stderr: String = String::from_utf8_lossy(&err_bytes).chars().take(STDERR_EXCERPT).collect();
            return Err(ConvertError::ToolFailed {
                tool,
                code: status.code(),
                stderr: stderr.trim().to_owned(),
                raw,
            });
        }
        if std::str::from_utf8(&raw_bytes).is_err() {
            return Err(ConvertError::OutputNotMathML {
                tool,
                reason: "output is not UTF-8".into(),
                raw,
            });
        }
        match MathDoc::parse(&raw, ParseMode::Lenient) {
            Ok((mathml, report)) => Ok(ConversionResult {
                mathml,
                raw,
                report,
                tool,
                elapsed: start.elapsed(),
            }),
            Err(e) => Err(ConvertError::OutputNotMathML {
                tool,
                reason: e.to_string(),
                raw,
            }),
        }
    }
}

fn collect<R: Read + Send + 'static>(mut pipe: R) -> mpsc::Receiver<Vec<u8>> {
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = pipe.read_to_end(&mut buf);
        let _ = tx.send(buf);
    });
    rx
}

#[derive(Debug, Clone)]
pub struct ConversionResult {
    /// Leniently parsed tool output.
    pub mathml: MathDoc,
    /// Verbatim tool output.
    pub raw: String,
    pub report: ParseReport,
    pub tool: String,
    pub elapsed: Duration,
}

/// Converters by name, in registration order. Safe to share between threads.
#[derive(Debug, Default)]
pub struct Registry {
    specs: RwLock<Vec<ConverterSpec>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// A registry holding the hermetic stub adapters (see [`stub_converters`]).
    pub fn with_stubs() -> Self {
        let r = Registry::new();
        for spec in stub_converters() {
            r.register(spec).expect("stub names are unique");
        }
        r
    }

    /// Loads converter specs from JSON: either an array of objects or a
    /// sequence of top-level objects.
    pub fn from_json(text: &str) -> Result<Registry, ConvertError> {
        let registry = Registry::new();
        let stream = serde_json::Deserializer::from_str(text).into_iter::<serde_json::Value>();
        for value in stream {
            let value = value.map_err(|e| ConvertError::InvalidSpec(e.to_string()))?;
            let items = match value {
                serde_json::Value::Array(items) => items,
                other => vec![other],
            };
            for item in items {
                let spec: ConverterSpec =
                    serde_json::from_value(item).map_err(|e| ConvertError::InvalidSpec(e.to_string()))?;
                registry.register(spec)?;
            }
        }
        Ok(registry)
    }

    pub fn register(&self, spec: ConverterSpec) -> Result<(), ConvertError> {
        spec.validate()?;
        let mut specs = self.specs.write().expect("registry lock");
        if specs.iter().any(|s| s.name == spec.name) {
            return Err(ConvertError::DuplicateName(spec.name));
        }
        specs.push(spec);
        Ok(())
    }

    pub fn list(&self) -> Vec<String> {
        self.specs
            .read()
            .expect("registry lock")
            .iter()
            .map(|s| s.name.clone())
            .collect()
    }

    pub fn get(&self, name: &str) -> Result<ConverterSpec, ConvertError> {
        self.specs
            .read()
            .expect("registry lock")
            .iter()
            .find(|s| s.name == name)
            .cloned()
            .ok_or_else(|| ConvertError::UnknownConverter(name.to_owned()))
    }

    pub fn convert(&self, name: &str, tex: &str) -> Result<ConversionResult, ConvertError> {
        self.get(name)?.run(tex)
    }

    /// Runs an external canonicalizer registered under `name` on `doc`.
    pub fn canonicalize_with(&self, name: &str, doc: &MathDoc) -> Result<ConversionResult, ConvertError> {
        self.convert(name, &doc.serialize(SerializeOptions::default()))
    }
}

/// Hermetic stand-ins for real converters, for tests and demos.
///
/// - `identity`: echoes its input (stdin)
/// - `echo-arg`: prints its argument
/// - `echo-frac`: always prints the parallel markup for `\frac{a}{b}`
/// - `fail`: exits with status 1
/// - `slow`: sleeps past its 10 ms timeout
/// - `not-mathml`: prints plain text
pub fn stub_converters() -> Vec<ConverterSpec> {
    vec![
        ConverterSpec::new("identity", &["cat"], InputMode::Stdin),
        ConverterSpec::new("echo-arg", &["printf", "%s", TEX_PLACEHOLDER], InputMode::Argument),
        ConverterSpec::new("echo-frac", &["printf", "%s", PARALLEL_FRAC], InputMode::Stdin),
        ConverterSpec::new("fail", &["sh", "-c", "echo 'conversion failed' >&2; exit 1"], InputMode::Stdin),
        ConverterSpec::new("slow", &["sleep", "5"], InputMode::Stdin).with_timeout(Duration::from_millis(10)),
        ConverterSpec::new("not-mathml", &["echo", "this is not MathML"], InputMode::Stdin),
    ]
}

fn semantics_rank(node: &MathNode) -> u8 {
    match (node.name.as_str(), node.attr("encoding")) {
        ("annotation-xml", Some(PRESENTATION_ENCODING)) => 1,
        ("annotation-xml", Some(CONTENT_ENCODING)) => 2,
        ("annotation-xml", _) => 3,
        ("annotation", _) => 4,
        _ => 0,
    }
}

fn canonical_tree(node: &mut MathNode) {
    node.attributes.sort_by(|a, b| a.0.cmp(&b.0));
    if node.name == "semantics" {
        node.children.sort_by_key(semantics_rank);
    }
    node.children.iter_mut().for_each(canonical_tree);
}

/// Built-in normal form: attributes sorted by key and `semantics` children
/// ordered as primary branch, presentation and content `annotation-xml`,
/// other `annotation-xml`, then `annotation`. Whitespace and namespace
/// prefixes are already normalized by parsing.
pub fn canonicalize(doc: &MathDoc) -> MathDoc {
    let mut tree = doc.to_tree();
    canonical_tree(&mut tree);
    MathDoc::from_tree(tree).expect("reordering keeps a valid document")
}
