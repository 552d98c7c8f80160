//! Browser bindings for the MathML toolkit.
//!
//! Every export takes plain strings and returns a JSON string, so the page
//! only needs `JSON.parse`. The same functions are plain Rust and are tested
//! natively.

use mathml_tools::mathml::Scope;
use mathml_tools::query::{PathLibrary, PathQuery};
use mathml_tools::samples::{PARALLEL_FRAC, X_PLUS_X};
use mathml_tools::similarity::{
    cosine_similarity, emd, hist_distance_absolute, hist_distance_relative, histogram, tree_edit_distance,
    CostConfig, GroundDistance, Histogram,
};
use mathml_tools::{Branch, MathDoc, NodeId, ParseMode, SerializeOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn mode(lenient: bool) -> ParseMode {
    if lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    }
}

fn failure(message: impl ToString) -> Value {
    json!({ "ok": false, "error": message.to_string() })
}

fn hist_json(h: &Histogram) -> Value {
    h.iter().map(|(k, v)| json!([k, v])).collect()
}

fn outline(doc: &MathDoc, id: NodeId) -> Value {
    let node = doc.node(id);
    let branch = if Some(id) == doc.presentation_root() {
        Some("presentation")
    } else if Some(id) == doc.content_root() {
        Some("content")
    } else {
        None
    };
    json!({
        "name": node.name(),
        "text": node.text(),
        "id": node.attr("id"),
        "xref": node.attr("xref"),
        "branch": branch,
        "children": node.child_ids().iter().map(|&c| outline(doc, c)).collect::<Vec<_>>(),
    })
}

/// Parse report, branch roots, cross-reference pairs, histograms and an
/// outline of the element tree.
pub fn analyze_json(mathml: &str, lenient: bool) -> Value {
    let (doc, report) = match MathDoc::parse(mathml, mode(lenient)) {
        Ok(parsed) => parsed,
        Err(e) => return failure(e),
    };
    let root_name = |b: Branch| doc.branch_root(b).map(|id| doc.node(id).name());
    let hist = |scope: Scope| histogram(&doc, scope, false).ok().map(|h| hist_json(&h));
    let pairs: Vec<Value> = doc
        .xref_pairs()
        .into_iter()
        .map(|(a, b)| json!([doc.node(a).attr("id"), doc.node(b).attr("id")]))
        .collect();
    json!({
        "ok": true,
        "canonical": doc.serialize(SerializeOptions::pretty()),
        "repairs": report.repairs.iter().map(|r| json!({ "kind": r.kind.as_str(), "offset": r.offset })).collect::<Vec<_>>(),
        "dangling": report.dangling_xrefs.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>(),
        "presentation": root_name(Branch::Presentation),
        "content": root_name(Branch::Content),
        "tex": doc.get_tex(),
        "xrefPairs": pairs,
        "histograms": {
            "presentation": hist(Scope::Presentation),
            "content": hist(Scope::Content),
            "whole": hist(Scope::Whole),
        },
        "tree": outline(&doc, doc.root()),
    })
}

fn parse_scope(scope: &str) -> Result<Scope, Value> {
    scope.parse::<Scope>().map_err(failure)
}

/// All five measures between two formulas within `scope`.
pub fn compare_json(a: &str, b: &str, scope: &str, lenient: bool, costs: [f64; 3]) -> Value {
    let run = || -> Result<Value, Value> {
        let scope = parse_scope(scope)?;
        let costs = CostConfig::new(costs[0], costs[1], costs[2]).map_err(failure)?;
        let da = MathDoc::parse(a, mode(lenient)).map_err(|e| failure(format!("left: {e}")))?.0;
        let db = MathDoc::parse(b, mode(lenient)).map_err(|e| failure(format!("right: {e}")))?.0;
        let ha = histogram(&da, scope, false).map_err(|e| failure(format!("left: {e}")))?;
        let hb = histogram(&db, scope, false).map_err(|e| failure(format!("right: {e}")))?;
        let tree = |d: &MathDoc| match scope {
            Scope::Whole => Ok(d.to_tree()),
            Scope::Presentation => d.split(Branch::Presentation).map(|s| s.to_tree()),
            Scope::Content => d.split(Branch::Content).map(|s| s.to_tree()),
        };
        let ted = tree_edit_distance(&tree(&da).map_err(failure)?, &tree(&db).map_err(failure)?, &costs);
        let or_null = |r: Result<f64, _>| r.ok();
        Ok(json!({
            "ok": true,
            "left": hist_json(&ha),
            "right": hist_json(&hb),
            "histAbs": hist_distance_absolute(&ha, &hb),
            "histRel": hist_distance_relative(&ha, &hb),
            "emd": or_null(emd(&ha, &hb, &GroundDistance::discrete())),
            "cosine": or_null(cosine_similarity(&ha, &hb)),
            "ted": ted,
        }))
    };
    run().unwrap_or_else(|e| e)
}

/// Subtrees matched by a path expression, serialized.
pub fn query_json(mathml: &str, expr: &str, lenient: bool) -> Value {
    let query = match PathQuery::parse(expr) {
        Ok(q) => q,
        Err(e) => return failure(e),
    };
    let doc = match MathDoc::parse(mathml, mode(lenient)) {
        Ok((doc, _)) => doc,
        Err(e) => return failure(e),
    };
    let matches: Vec<Value> = query
        .select(&doc)
        .into_iter()
        .map(|id| json!({ "node": id.index(), "markup": doc.serialize_subtree(id, SerializeOptions::default()) }))
        .collect();
    json!({ "ok": true, "query": query.to_string(), "matches": matches })
}

pub fn library_json() -> Value {
    PathLibrary::builtin()
        .entries()
        .iter()
        .map(|e| json!({ "name": e.name, "expr": e.text, "description": e.description }))
        .collect()
}

#[wasm_bindgen]
pub fn analyze(mathml: &str, lenient: bool) -> String {
    analyze_json(mathml, lenient).to_string()
}

#[wasm_bindgen]
pub fn compare(a: &str, b: &str, scope: &str, lenient: bool, insert: f64, delete: f64, rename: f64) -> String {
    compare_json(a, b, scope, lenient, [insert, delete, rename]).to_string()
}

#[wasm_bindgen]
pub fn query(mathml: &str, expr: &str, lenient: bool) -> String {
    query_json(mathml, expr, lenient).to_string()
}

#[wasm_bindgen]
pub fn library() -> String {
    library_json().to_string()
}

#[wasm_bindgen]
pub fn sample(name: &str) -> String {
    match name {
        "x-plus-x" => X_PLUS_X,
        _ => PARALLEL_FRAC,
    }
    .to_owned()
}
