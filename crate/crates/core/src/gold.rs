//! Gold-standard benchmark entries.
//!
//! A gold file is a JSON array of objects with at least `id`, `tex` and
//! `mathml`. `title`, `uri` and `check` are optional; any other field is kept
//! as-is and written back on save.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::mathml::{Branch, MathDoc, ParseMode};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldEntry {
    pub id: u64,
    pub tex: String,
    pub mathml: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uri: Option<String>,
    /// Tool name to verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<BTreeMap<String, String>>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema error in entry {}: {message}", describe(*.id, *.index))]
    Schema {
        id: Option<u64>,
        index: usize,
        message: String,
    },
    #[error("entry {id}: invalid gold MathML: {reason}")]
    InvalidGoldMathML { id: u64, reason: String },
}

fn describe(id: Option<u64>, index: usize) -> String {
    match id {
        Some(id) => format!("id {id}"),
        None => format!("#{index}"),
    }
}

impl GoldEntry {
    pub fn new(id: u64, tex: impl Into<String>, mathml: impl Into<String>) -> Self {
        GoldEntry {
            id,
            tex: tex.into(),
            mathml: mathml.into(),
            title: None,
            uri: None,
            check: None,
            extra: BTreeMap::new(),
        }
    }

    /// Strict parse of the reference MathML.
    pub fn doc(&self) -> Result<MathDoc, crate::mathml::Error> {
        MathDoc::parse(&self.mathml, ParseMode::Strict).map(|(d, _)| d)
    }
}

/// Parses and validates a gold file, keeping file order.
pub fn load_gold(input: &str) -> Result<Vec<GoldEntry>, GoldError> {
    let value: Value = serde_json::from_str(input).map_err(|e| GoldError::Json(e.to_string()))?;
    let Value::Array(items) = value else {
        return Err(GoldError::Schema {
            id: None,
            index: 0,
            message: "top level must be an array".into(),
        });
    };
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(items.len());
    for (index, item) in items.into_iter().enumerate() {
        let schema = |id: Option<u64>, message: String| GoldError::Schema { id, index, message };
        let Value::Object(fields) = &item else {
            return Err(schema(None, "entry must be an object".into()));
        };
        let id = match fields.get("id") {
            None => return Err(schema(None, "missing field `id`".into())),
            Some(v) => match v.as_u64() {
                Some(id) if id > 0 => id,
                _ => return Err(schema(None, format!("`id` must be a positive integer, got {v}"))),
            },
        };
        for required in ["tex", "mathml"] {
            if !fields.contains_key(required) {
                return Err(schema(Some(id), format!("missing field `{required}`")));
            }
        }
        let entry: GoldEntry =
            serde_json::from_value(item).map_err(|e| schema(Some(id), e.to_string()))?;
        if !seen.insert(id) {
            return Err(schema(Some(id), format!("duplicate id {id}")));
        }
        if entry.tex.is_empty() {
            return Err(schema(Some(id), "`tex` is empty".into()));
        }
        let doc = entry.doc().map_err(|e| GoldError::InvalidGoldMathML {
            id,
            reason: e.to_string(),
        })?;
        for branch in [Branch::Presentation, Branch::Content] {
            if doc.branch_root(branch).is_none() {
                return Err(GoldError::InvalidGoldMathML {
                    id,
                    reason: format!("no {branch} branch"),
                });
            }
        }
        entries.push(entry);
    }
    Ok(entries)
}

/// Pretty JSON with sorted keys, entries in id order.
pub fn save_gold(entries: &[GoldEntry]) -> String {
    let mut sorted: Vec<&GoldEntry> = entries.iter().collect();
    sorted.sort_by_key(|e| e.id);
    // serde_json's map is ordered by key, so objects come out sorted.
    let value = serde_json::to_value(sorted).expect("gold entries serialize");
    serde_json::to_string_pretty(&value).expect("JSON value serializes")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    InvalidMathML(String),
    MissingBranch(Branch),
    /// An `xref` on the element with `node_id` (if any) names `target`, which
    /// no element carries.
    DanglingXref { node_id: Option<String>, target: String },
    MissingTexAnnotation,
    TexMismatch { entry: String, annotation: String },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::InvalidMathML(e) => write!(f, "invalid MathML: {e}"),
            Finding::MissingBranch(b) => write!(f, "missing {b} branch"),
            Finding::DanglingXref { node_id, target } => match node_id {
                Some(id) => write!(f, "dangling xref {id} -> {target}"),
                None => write!(f, "dangling xref -> {target}"),
            },
            Finding::MissingTexAnnotation => f.write_str("no application/x-tex annotation"),
            Finding::TexMismatch { entry, annotation } => {
                write!(f, "tex {entry:?} differs from annotation {annotation:?}")
            }
        }
    }
}

/// Problems with one entry; empty means valid.
pub fn validate_entry(entry: &GoldEntry) -> Vec<Finding> {
    let doc = match entry.doc() {
        Ok(doc) => doc,
        Err(e) => return vec![Finding::InvalidMathML(e.to_string())],
    };
    let mut findings = Vec::new();
    for branch in [Branch::Presentation, Branch::Content] {
        if doc.branch_root(branch).is_none() {
            findings.push(Finding::MissingBranch(branch));
        }
    }
    for (node, target) in doc.dangling_xrefs() {
        findings.push(Finding::DanglingXref {
            node_id: doc.node(node).attr("id").map(str::to_owned),
            target,
        });
    }
    match doc.get_tex() {
        None => findings.push(Finding::MissingTexAnnotation),
        Some(tex) if tex != entry.tex => findings.push(Finding::TexMismatch {
            entry: entry.tex.clone(),
            annotation: tex.to_owned(),
        }),
        Some(_) => {}
    }
    findings
}
