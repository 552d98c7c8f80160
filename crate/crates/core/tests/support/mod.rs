//! Random generators and brute-force oracles for the integration tests and
//! the acceptance harness.
#![allow(dead_code)]

use std::collections::HashMap;

use mathml_tools::mathml::Scope;
use mathml_tools::query::{Axis, NameTest, PathQuery, Predicate, Step};
use mathml_tools::samples::{PARALLEL_FRAC, X_PLUS_X};
use mathml_tools::similarity::{CostConfig, GroundDistance, Histogram};
use mathml_tools::{MathDoc, MathNode, NodeId, ParseMode, RepairKind, MATHML_NS};
use rand::seq::SliceRandom;
use rand::Rng;

pub const TOL: f64 = 1e-9;

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn parallel_frac() -> MathDoc {
    MathDoc::parse(PARALLEL_FRAC, ParseMode::Strict).expect("sample parses").0
}

// ---------------------------------------------------------------------------
// Random documents

const LETTERS: [&str; 5] = ["a", "b", "x", "y", "n"];
const DIGITS: [&str; 3] = ["1", "2", "10"];

struct Ids {
    prefix: &'static str,
    next: usize,
}

impl Ids {
    fn take(&mut self) -> String {
        self.next += 1;
        format!("{}.{}", self.prefix, self.next)
    }
}

fn presentation<R: Rng>(rng: &mut R, depth: usize, ids: &mut Ids) -> MathNode {
    let id = ids.take();
    let node = if depth >= 3 || rng.gen_bool(0.4) {
        match rng.gen_range(0..4) {
            0 | 1 => {
                let mi = MathNode::new("mi").with_text(*LETTERS.choose(rng).unwrap());
                if rng.gen_bool(0.2) {
                    mi.with_attr("mathvariant", "bold")
                } else {
                    mi
                }
            }
            2 => MathNode::new("mn").with_text(*DIGITS.choose(rng).unwrap()),
            _ => MathNode::new("mo").with_text(*["+", "-", "="].choose(rng).unwrap()),
        }
    } else {
        let (name, arity) = *[("mrow", 0), ("mfrac", 2), ("msup", 2)].choose(rng).unwrap();
        let arity = if arity == 0 { rng.gen_range(1..=3) } else { arity };
        let mut node = MathNode::new(name);
        for _ in 0..arity {
            node.children.push(presentation(rng, depth + 1, ids));
        }
        node
    };
    node.with_attr("id", id)
}

fn content<R: Rng>(rng: &mut R, depth: usize, ids: &mut Ids) -> MathNode {
    let id = ids.take();
    if depth >= 3 || rng.gen_bool(0.4) {
        let leaf = if rng.gen_bool(0.7) {
            MathNode::new("ci").with_text(*LETTERS.choose(rng).unwrap())
        } else {
            MathNode::new("cn").with_text(*DIGITS.choose(rng).unwrap())
        };
        return leaf.with_attr("id", id);
    }
    let op = match rng.gen_range(0..5) {
        0 => MathNode::new("csymbol").with_attr("cd", "arith1").with_text("power"),
        k => MathNode::new(["plus", "times", "divide", "minus"][k - 1]),
    };
    let mut apply = MathNode::new("apply").with_attr("id", id).with_child(op.with_attr("id", ids.take()));
    for _ in 0..rng.gen_range(1..=2) {
        apply.children.push(content(rng, depth + 1, ids));
    }
    apply
}

fn collect_ids(node: &MathNode, out: &mut Vec<String>) {
    out.extend(node.attr("id").map(str::to_owned));
    node.children.iter().for_each(|c| collect_ids(c, out));
}

fn set_xref(node: &mut MathNode, id: &str, target: &str) -> bool {
    if node.attr("id") == Some(id) {
        node.attributes.push(("xref".into(), target.into()));
        return true;
    }
    node.children.iter_mut().any(|c| set_xref(c, id, target))
}

/// Random formula markup. Layouts: parallel with TeX annotation, parallel
/// with an extra foreign annotation, presentation only, content only, and
/// content-first parallel markup.
pub fn random_tree<R: Rng>(rng: &mut R) -> MathNode {
    let mut pres = presentation(rng, 0, &mut Ids { prefix: "p", next: 0 });
    let mut cont = content(rng, 0, &mut Ids { prefix: "c", next: 0 });

    let (mut p_ids, mut c_ids) = (Vec::new(), Vec::new());
    collect_ids(&pres, &mut p_ids);
    collect_ids(&cont, &mut c_ids);
    c_ids.shuffle(rng);
    for (p, c) in p_ids.iter().zip(&c_ids) {
        if rng.gen_bool(0.5) {
            set_xref(&mut pres, p, c);
            set_xref(&mut cont, c, p);
        }
    }

    let tex = MathNode::new("annotation")
        .with_attr("encoding", "application/x-tex")
        .with_text("x");
    let annotation_xml =
        |encoding: &str, child: MathNode| MathNode::new("annotation-xml").with_attr("encoding", encoding).with_child(child);
    let math = MathNode::new("math");
    match rng.gen_range(0..5) {
        0 => math.with_child(
            MathNode::new("semantics")
                .with_child(pres)
                .with_child(annotation_xml("MathML-Content", cont))
                .with_child(tex),
        ),
        1 => math.with_child(
            MathNode::new("semantics")
                .with_child(pres)
                .with_child(annotation_xml("MathML-Content", cont))
                .with_child(annotation_xml("application/openmath+xml", MathNode::new("OMOBJ"))),
        ),
        2 => math.with_child(pres),
        3 => math.with_child(cont),
        _ => math.with_child(
            MathNode::new("semantics")
                .with_child(cont)
                .with_child(annotation_xml("MathML-Presentation", pres))
                .with_child(tex),
        ),
    }
}

pub fn random_doc<R: Rng>(rng: &mut R) -> MathDoc {
    MathDoc::from_tree(random_tree(rng)).expect("generated trees are valid")
}

/// Parallel markup only (layouts 0, 1 and 4).
pub fn random_parallel_doc<R: Rng>(rng: &mut R) -> MathDoc {
    loop {
        let doc = random_doc(rng);
        if doc.presentation_root().is_some() && doc.content_root().is_some() {
            return doc;
        }
    }
}

// ---------------------------------------------------------------------------
// Leniency fixtures

pub struct Mutant {
    pub name: &'static str,
    pub pristine: String,
    pub mutated: String,
    /// Repair kinds in report order.
    pub expected: Vec<RepairKind>,
}

fn prefix_elements(src: &str, prefix: &str) -> String {
    let mut out = String::new();
    let mut rest = src;
    while let Some(i) = rest.find('<') {
        out.push_str(&rest[..=i]);
        rest = &rest[i + 1..];
        if let Some(r) = rest.strip_prefix('/') {
            out.push('/');
            rest = r;
        }
        out.push_str(prefix);
        out.push(':');
    }
    out.push_str(rest);
    out
}

fn without_ns(src: &str) -> String {
    src.replacen(&format!(" xmlns=\"{MATHML_NS}\""), "", 1)
}

fn with_entities(pristine: &str, pairs: &[(&str, &str)]) -> String {
    pairs.iter().fold(pristine.to_owned(), |s, (ch, name)| s.replace(ch, &format!("&{name};")))
}

/// Mutated fixtures and the pristine documents they must parse to.
pub fn leniency_fixtures() -> Vec<Mutant> {
    use RepairKind::*;
    let frac = PARALLEL_FRAC.to_owned();
    let elements = frac.matches("</").count() + frac.matches("/>").count();
    let xrefs = frac.matches(" xref=").count();
    let greek = format!(
        r#"<math xmlns="{MATHML_NS}"><mrow><mi>α</mi><mo>⁢</mo><mi>β</mi><mo>±</mo><mn>1</mn></mrow></math>"#
    );
    let spaced = format!(r#"<math xmlns="{MATHML_NS}"><mtext>a{}b</mtext><mi title="θ">t</mi></math>"#, '\u{a0}');
    let times = X_PLUS_X.replace('+', "×");
    let n = |k: usize, kind: RepairKind| vec![kind; k];

    vec![
        Mutant {
            name: "frac-namespace-removed",
            pristine: frac.clone(),
            mutated: without_ns(&frac),
            expected: vec![NamespaceInserted],
        },
        Mutant {
            name: "x-plus-x-namespace-removed",
            pristine: X_PLUS_X.into(),
            mutated: without_ns(X_PLUS_X),
            expected: vec![NamespaceInserted],
        },
        Mutant {
            name: "frac-bound-prefix",
            pristine: frac.clone(),
            mutated: prefix_elements(&frac, "m").replacen(" xmlns=", " xmlns:m=", 1),
            expected: n(elements, AttributeNamespaceDropped),
        },
        Mutant {
            name: "frac-unbound-prefix",
            pristine: frac.clone(),
            mutated: prefix_elements(&without_ns(&frac), "mml"),
            expected: [vec![NamespaceInserted], n(elements, AttributeNamespaceDropped)].concat(),
        },
        Mutant {
            name: "frac-prefixed-xref",
            pristine: frac.clone(),
            mutated: frac
                .replace(" xref=", " m:xref=")
                .replacen("<math ", &format!("<math xmlns:m=\"{MATHML_NS}\" "), 1),
            expected: n(xrefs, AttributeNamespaceDropped),
        },
        Mutant {
            name: "x-plus-x-bound-prefix-default-kept",
            pristine: X_PLUS_X.into(),
            mutated: prefix_elements(X_PLUS_X, "m")
                .replacen("<m:math ", &format!("<m:math xmlns:m=\"{MATHML_NS}\" "), 1),
            expected: n(5, AttributeNamespaceDropped),
        },
        Mutant {
            name: "times-entity",
            mutated: with_entities(&times, &[("×", "times")]),
            pristine: times,
            expected: vec![EntityReplaced],
        },
        Mutant {
            name: "greek-and-operator-entities",
            mutated: with_entities(&greek, &[("α", "alpha"), ("⁢", "InvisibleTimes"), ("β", "beta"), ("±", "PlusMinus")]),
            pristine: greek.clone(),
            expected: n(4, EntityReplaced),
        },
        Mutant {
            name: "entities-in-text-and-attribute",
            mutated: with_entities(&spaced, &[("\u{a0}", "nbsp"), ("θ", "theta")]),
            pristine: spaced,
            expected: n(2, EntityReplaced),
        },
        Mutant {
            name: "namespace-removed-with-entities",
            mutated: without_ns(&with_entities(&greek, &[("α", "alpha"), ("β", "beta")])),
            pristine: greek.clone(),
            expected: [vec![NamespaceInserted], n(2, EntityReplaced)].concat(),
        },
        Mutant {
            name: "all-three-rules",
            mutated: prefix_elements(&without_ns(&with_entities(&greek, &[("±", "pm")])), "m"),
            pristine: greek,
            expected: [vec![NamespaceInserted], n(1, EntityReplaced), n(7, AttributeNamespaceDropped)].concat(),
        },
        Mutant {
            name: "frac-tex-entity",
            pristine: frac.replace("\\frac{a}{b}", "a ≤ b"),
            mutated: frac.replace("\\frac{a}{b}", "a &le; b"),
            expected: vec![EntityReplaced],
        },
    ]
}

/// Byte offset sanity: each repair must point at the construct it fixed.
pub fn repair_offset_ok(input: &str, kind: RepairKind, offset: usize) -> bool {
    let Some(rest) = input.get(offset..) else { return false };
    match kind {
        RepairKind::NamespaceInserted => rest.starts_with('<'),
        RepairKind::EntityReplaced => rest.starts_with('&'),
        RepairKind::AttributeNamespaceDropped => {
            let name: String = rest.chars().take_while(|c| !c.is_whitespace() && !"=/>".contains(*c)).collect();
            name.contains(':')
        }
    }
}

// ---------------------------------------------------------------------------
// Query oracle

fn step_matches(step: &Step, doc: &MathDoc, id: NodeId) -> bool {
    let node = doc.node(id);
    let name_ok = match &step.test {
        NameTest::Any => true,
        NameTest::Name(n) => node.name() == n,
    };
    name_ok
        && step.predicates.iter().all(|p| match p {
            Predicate::Equals { key, value } => node.attributes().iter().any(|(k, v)| k == key && v == value),
            Predicate::Absent { key } => node.attributes().iter().all(|(k, _)| k != key),
        })
}

fn path_ends_at(doc: &MathDoc, steps: &[Step], id: NodeId) -> bool {
    let (last, rest) = steps.split_last().expect("paths are non-empty");
    if !step_matches(last, doc, id) {
        return false;
    }
    let parent = doc.node(id).parent().map(|p| p.id());
    if rest.is_empty() {
        return match last.axis {
            Axis::Child => parent.is_none(),
            Axis::Descendant => true,
        };
    }
    match last.axis {
        Axis::Child => parent.is_some_and(|p| path_ends_at(doc, rest, p)),
        Axis::Descendant => {
            let mut up = parent;
            while let Some(a) = up {
                if path_ends_at(doc, rest, a) {
                    return true;
                }
                up = doc.node(a).parent().map(|p| p.id());
            }
            false
        }
    }
}

/// Tests every node against every path, matching steps right to left.
pub fn select_oracle(doc: &MathDoc, query: &PathQuery) -> Vec<NodeId> {
    doc.nodes()
        .map(|n| n.id())
        .filter(|&id| query.paths().iter().any(|p| path_ends_at(doc, p.steps(), id)))
        .collect()
}

/// Random query text over names and attributes that occur in generated docs.
pub fn random_query_text<R: Rng>(rng: &mut R) -> String {
    const NAMES: [&str; 14] = [
        "*", "*", "math", "semantics", "mrow", "mi", "mo", "apply", "ci", "cn", "annotation-xml", "annotation", "mfrac", "csymbol",
    ];
    const KEYS: [(&str, &[&str]); 4] = [
        ("encoding", &["MathML-Content", "MathML-Presentation", "application/x-tex"]),
        ("id", &["p.1", "c.1", "p.2"]),
        ("mathvariant", &["bold"]),
        ("xref", &["c.1", "p.1"]),
    ];
    let path = |rng: &mut R| {
        let mut s = String::new();
        for i in 0..rng.gen_range(1..=3) {
            let sep = ["/", "//"].choose(rng).unwrap();
            if i > 0 || rng.gen_bool(0.8) {
                s.push_str(sep);
            }
            s.push_str(NAMES.choose(rng).unwrap());
            if rng.gen_bool(0.3) {
                let (key, values) = KEYS.choose(rng).unwrap();
                if rng.gen_bool(0.3) {
                    s.push_str(&format!("[not(@{key})]"));
                } else {
                    s.push_str(&format!("[@{key}='{}']", values.choose(rng).unwrap()));
                }
            }
        }
        s
    };
    let mut q = path(rng);
    if rng.gen_bool(0.3) {
        q.push_str(" | ");
        q.push_str(&path(rng));
    }
    q
}

// ---------------------------------------------------------------------------
// Histograms

const HIST_NAMES: [&str; 6] = ["mi", "mo", "mn", "mrow", "mfrac", "ci"];

pub fn random_histogram<R: Rng>(rng: &mut R, max_support: usize, max_count: u64) -> Histogram {
    loop {
        let k = rng.gen_range(1..=max_support.min(HIST_NAMES.len()));
        let h: Histogram = HIST_NAMES
            .choose_multiple(rng, k)
            .map(|&n| (n, rng.gen_range(0..=max_count)))
            .collect();
        if !h.is_empty() {
            return h;
        }
    }
}

/// ½ Σ |a/|a| − b/|b||.
pub fn half_l1(a: &Histogram, b: &Histogram) -> f64 {
    let (ta, tb) = (a.total() as f64, b.total() as f64);
    a.union_keys(b)
        .into_iter()
        .map(|k| (a.get(k) as f64 / ta - b.get(k) as f64 / tb).abs())
        .sum::<f64>()
        / 2.0
}

pub fn random_ground<R: Rng>(rng: &mut R) -> GroundDistance {
    let mut g = GroundDistance::discrete();
    for (i, a) in HIST_NAMES.iter().enumerate() {
        for b in &HIST_NAMES[i + 1..] {
            if rng.gen_bool(0.5) {
                let cost = rng.gen_range(0..=40) as f64 / 8.0;
                g = g.with_override(a, b, cost).expect("valid override");
            }
        }
    }
    g
}

/// Minimum over all transport plans reachable by repeatedly choosing a cell
/// and shipping as much as its row and column allow. Every vertex of the
/// transportation polytope arises this way, so this is the exact optimum.
pub fn transport_oracle(supply: &[u64], demand: &[u64], cost: &[Vec<f64>]) -> f64 {
    fn go(s: &mut Vec<u64>, d: &mut Vec<u64>, cost: &[Vec<f64>], memo: &mut HashMap<(Vec<u64>, Vec<u64>), f64>) -> f64 {
        if s.iter().all(|&x| x == 0) {
            return 0.0;
        }
        if let Some(&v) = memo.get(&(s.clone(), d.clone())) {
            return v;
        }
        let mut best = f64::INFINITY;
        for i in 0..s.len() {
            for j in 0..d.len() {
                if s[i] == 0 || d[j] == 0 {
                    continue;
                }
                let q = s[i].min(d[j]);
                s[i] -= q;
                d[j] -= q;
                best = best.min(q as f64 * cost[i][j] + go(s, d, cost, memo));
                s[i] += q;
                d[j] += q;
            }
        }
        memo.insert((s.clone(), d.clone()), best);
        best
    }
    go(&mut supply.to_vec(), &mut demand.to_vec(), cost, &mut HashMap::new())
}

pub fn emd_oracle(a: &Histogram, b: &Histogram, ground: &GroundDistance) -> f64 {
    let supply: Vec<u64> = a.iter().map(|(_, v)| v * b.total()).collect();
    let demand: Vec<u64> = b.iter().map(|(_, v)| v * a.total()).collect();
    let cost: Vec<Vec<f64>> = a
        .iter()
        .map(|(x, _)| b.iter().map(|(y, _)| ground.distance(x, y)).collect())
        .collect();
    transport_oracle(&supply, &demand, &cost) / (a.total() * b.total()) as f64
}

// ---------------------------------------------------------------------------
// Tree edit distance oracle

pub const TED_LABELS: [&str; 3] = ["mi", "mo", "mrow"];

/// Random ordered tree with 1..=max_nodes nodes over three labels.
pub fn random_small_tree<R: Rng>(rng: &mut R, max_nodes: usize) -> MathNode {
    let n = rng.gen_range(1..=max_nodes);
    let mut children = vec![Vec::new(); n];
    for i in 1..n {
        children[rng.gen_range(0..i)].push(i);
    }
    let labels: Vec<&str> = (0..n).map(|_| *TED_LABELS.choose(rng).unwrap()).collect();
    fn build(i: usize, labels: &[&str], children: &[Vec<usize>]) -> MathNode {
        let mut node = MathNode::new(labels[i]);
        node.children = children[i].iter().map(|&c| build(c, labels, children)).collect();
        node
    }
    build(0, &labels, &children)
}

fn preorder(node: &MathNode, parent: Option<usize>, labels: &mut Vec<String>, parents: &mut Vec<Option<usize>>) {
    let me = labels.len();
    labels.push(node.name.clone());
    parents.push(parent);
    for c in &node.children {
        preorder(c, Some(me), labels, parents);
    }
}

/// Keeping a subset of nodes and deleting the rest leaves an ordered forest;
/// its shape is the preorder sequence of depths. Returns, per shape, the
/// kept-node count and kept labels of every subset.
fn kept_forests(tree: &MathNode) -> (usize, HashMap<Vec<usize>, Vec<(usize, Vec<String>)>>) {
    let (mut labels, mut parents) = (Vec::new(), Vec::new());
    preorder(tree, None, &mut labels, &mut parents);
    let n = labels.len();
    let mut shapes: HashMap<Vec<usize>, Vec<(usize, Vec<String>)>> = HashMap::new();
    for mask in 0u32..(1 << n) {
        let kept = |i: usize| mask & (1 << i) != 0;
        let mut shape = Vec::new();
        let mut kept_labels = Vec::new();
        for i in (0..n).filter(|&i| kept(i)) {
            let mut depth = 0;
            let mut up = parents[i];
            while let Some(p) = up {
                depth += kept(p) as usize;
                up = parents[p];
            }
            shape.push(depth);
            kept_labels.push(labels[i].clone());
        }
        shapes.entry(shape).or_default().push((kept_labels.len(), kept_labels));
    }
    (n, shapes)
}

/// Exhaustive search over edit scripts in normal form: delete a subset of
/// `a`, rename, insert a subset of `b`. Requires at most ~12 nodes per tree.
pub fn ted_oracle(a: &MathNode, b: &MathNode, costs: &CostConfig) -> f64 {
    let (na, fa) = kept_forests(a);
    let (nb, fb) = kept_forests(b);
    let mut best = f64::INFINITY;
    for (shape, left) in &fa {
        let Some(right) = fb.get(shape) else { continue };
        for (k, la) in left {
            for (_, lb) in right {
                let renames = la.iter().zip(lb).filter(|(x, y)| x != y).count();
                let cost = costs.delete() * (na - k) as f64
                    + costs.insert() * (nb - k) as f64
                    + costs.rename() * renames as f64;
                best = best.min(cost);
            }
        }
    }
    best
}

pub fn random_costs<R: Rng>(rng: &mut R) -> CostConfig {
    let w = |rng: &mut R| rng.gen_range(1..=16) as f64 / 4.0;
    loop {
        let (i, d, r) = (w(rng), w(rng), w(rng));
        if i != d {
            return CostConfig::new(i, d, r).expect("positive weights");
        }
    }
}

/// Every element name inside `scope`, for completeness checks.
pub fn scope_names(doc: &MathDoc, scope: Scope) -> Vec<String> {
    doc.scope_nodes(scope)
        .map(|ids| ids.into_iter().map(|id| doc.node(id).name().to_owned()).collect())
        .unwrap_or_default()
}

// ---------------------------------------------------------------------------
// Gold files

pub fn fixture_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

/// Which error a schema-violation fixture must produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldExpect {
    Json,
    Schema(Option<u64>),
    InvalidMathML(u64),
}

/// `(file under fixtures/gold, expected error, text the message must name)`.
pub const GOLD_VIOLATIONS: [(&str, GoldExpect, &str); 12] = [
    ("missing-tex.json", GoldExpect::Schema(Some(7)), "id 7"),
    ("missing-mathml.json", GoldExpect::Schema(Some(3)), "id 3"),
    ("duplicate-id.json", GoldExpect::Schema(Some(5)), "id 5"),
    ("string-id.json", GoldExpect::Schema(None), "x12"),
    ("zero-id.json", GoldExpect::Schema(None), "got 0"),
    ("tex-not-string.json", GoldExpect::Schema(Some(4)), "id 4"),
    ("empty-tex.json", GoldExpect::Schema(Some(2)), "id 2"),
    ("title-not-string.json", GoldExpect::Schema(Some(6)), "id 6"),
    ("invalid-mathml.json", GoldExpect::InvalidMathML(9), "entry 9"),
    ("missing-content-branch.json", GoldExpect::InvalidMathML(11), "entry 11"),
    ("not-an-array.json", GoldExpect::Schema(None), "array"),
    ("truncated.json", GoldExpect::Json, "invalid JSON"),
];

pub fn gold_error_matches(err: &mathml_tools::gold::GoldError, expect: GoldExpect, names: &str) -> bool {
    use mathml_tools::gold::GoldError;
    let kind_ok = match (err, expect) {
        (GoldError::Json(_), GoldExpect::Json) => true,
        (GoldError::Schema { id, .. }, GoldExpect::Schema(want)) => *id == want,
        (GoldError::InvalidGoldMathML { id, .. }, GoldExpect::InvalidMathML(want)) => *id == want,
        _ => false,
    };
    kind_ok && err.to_string().contains(names)
}

/// Fraction entry as id 1 plus `n - 1` generated parallel-markup entries.
pub fn synthetic_gold<R: Rng>(rng: &mut R, n: usize) -> Vec<mathml_tools::gold::GoldEntry> {
    use mathml_tools::gold::GoldEntry;
    use mathml_tools::SerializeOptions;
    let mut entries = vec![GoldEntry::new(1, "\\frac{a}{b}", PARALLEL_FRAC)];
    for id in 2..=n as u64 {
        let doc = random_parallel_doc(rng);
        let opts = if rng.gen_bool(0.5) { SerializeOptions::pretty() } else { SerializeOptions::default() };
        let mut e = GoldEntry::new(id, doc.get_tex().unwrap_or("x").to_owned(), doc.serialize(opts));
        if rng.gen_bool(0.5) {
            e.title = Some(format!("formula {id}"));
        }
        if rng.gen_bool(0.3) {
            e.uri = Some(format!("https://example.org/f/{id}"));
        }
        if rng.gen_bool(0.3) {
            e.check = Some([("latexml".to_owned(), "ok".to_owned())].into_iter().collect());
        }
        if rng.gen_bool(0.3) {
            e.extra.insert("source".into(), serde_json::json!({ "page": id, "tags": ["synthetic"] }));
        }
        entries.push(e);
    }
    entries.shuffle(rng);
    entries
}
