//! A small XPath subset and a shipped library of expressions.
//!
//! Grammar (every accepted expression is also valid XPath 1.0):
//!
//! ```text
//! query     := path ( "|" path )*
//! path      := ( "/" | "//" )? step ( ( "/" | "//" ) step )*
//! step      := ( name | "*" ) predicate*
//! predicate := "[@" key "=" quoted "]" | "[not(@" key ")]"
//! ```
//!
//! A path without a leading slash is read like one starting with `/`: its
//! first step is matched against the document's top-level element.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::mathml::{MathDoc, NodeId, NodeRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown library entry `{0}`")]
    UnknownName(String),
    #[error("library line {line}: {message}")]
    Library { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Child,
    Descendant,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NameTest {
    Any,
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predicate {
    /// `[@key='value']`
    Equals { key: String, value: String },
    /// `[not(@key)]`
    Absent { key: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub axis: Axis,
    pub test: NameTest,
    pub predicates: Vec<Predicate>,
}

/// A non-empty sequence of location steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathExpr {
    steps: Vec<Step>,
}

/// Union of paths; results are merged in document order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathQuery {
    paths: Vec<PathExpr>,
}

impl NameTest {
    pub fn matches(&self, name: &str) -> bool {
        match self {
            NameTest::Any => true,
            NameTest::Name(n) => n == name,
        }
    }
}

impl Predicate {
    pub fn matches(&self, node: &NodeRef<'_>) -> bool {
        match self {
            Predicate::Equals { key, value } => node.attr(key) == Some(value.as_str()),
            Predicate::Absent { key } => node.attr(key).is_none(),
        }
    }
}

impl Step {
    pub fn matches(&self, node: &NodeRef<'_>) -> bool {
        self.test.matches(node.name()) && self.predicates.iter().all(|p| p.matches(node))
    }
}

impl PathExpr {
    pub fn new(steps: Vec<Step>) -> Option<PathExpr> {
        (!steps.is_empty()).then_some(PathExpr { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn parse(text: &str) -> Result<PathExpr, QueryError> {
        let mut p = Parser { src: text, pos: 0 };
        let expr = p.path()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    /// Matching nodes in preorder, without duplicates.
    pub fn select(&self, doc: &MathDoc) -> Vec<NodeId> {
        // `None` stands for the document node above the math element.
        let mut context: Vec<Option<NodeId>> = vec![None];
        for step in &self.steps {
            let mut next = BTreeSet::new();
            for ctx in &context {
                let candidates: Box<dyn Iterator<Item = NodeId>> = match (step.axis, ctx) {
                    (Axis::Child, None) => Box::new(std::iter::once(doc.root())),
                    (Axis::Child, Some(id)) => Box::new(doc.node(*id).child_ids().iter().copied()),
                    (Axis::Descendant, None) => Box::new(doc.nodes().map(|n| n.id())),
                    (Axis::Descendant, Some(id)) => {
                        Box::new(doc.subtree_range(*id).skip(1).map(NodeId))
                    }
                };
                next.extend(candidates.filter(|&id| step.matches(&doc.node(id))));
            }
            context = next.into_iter().map(Some).collect();
        }
        context.into_iter().flatten().collect()
    }
}

impl PathQuery {
    pub fn new(paths: Vec<PathExpr>) -> Option<PathQuery> {
        (!paths.is_empty()).then_some(PathQuery { paths })
    }

    pub fn paths(&self) -> &[PathExpr] {
        &self.paths
    }

    pub fn parse(text: &str) -> Result<PathQuery, QueryError> {
        let mut p = Parser { src: text, pos: 0 };
        let mut paths = vec![p.path()?];
        loop {
            p.skip_ws();
            if p.eat("|") {
                paths.push(p.path()?);
            } else if p.pos == text.len() {
                return Ok(PathQuery { paths });
            } else {
                return Err(p.error("expected `|` or end of expression"));
            }
        }
    }

    pub fn select(&self, doc: &MathDoc) -> Vec<NodeId> {
        let merged: BTreeSet<NodeId> = self.paths.iter().flat_map(|p| p.select(doc)).collect();
        merged.into_iter().collect()
    }
}

impl From<PathExpr> for PathQuery {
    fn from(p: PathExpr) -> PathQuery {
        PathQuery { paths: vec![p] }
    }
}

pub fn parse_path(text: &str) -> Result<PathExpr, QueryError> {
    PathExpr::parse(text)
}

pub fn select(doc: &MathDoc, expr: &PathExpr) -> Vec<NodeId> {
    expr.select(doc)
}

fn quote(value: &str) -> String {
    if value.contains('\'') {
        format!("\"{value}\"")
    } else {
        format!("'{value}'")
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.axis {
            Axis::Child => "/",
            Axis::Descendant => "//",
        })?;
        match &self.test {
            NameTest::Any => f.write_str("*")?,
            NameTest::Name(n) => f.write_str(n)?,
        }
        for p in &self.predicates {
            match p {
                Predicate::Equals { key, value } => write!(f, "[@{key}={}]", quote(value))?,
                Predicate::Absent { key } => write!(f, "[not(@{key})]")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| s.fmt(f))
    }
}

impl fmt::Display for PathQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.paths.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            p.fmt(f)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PathExpr {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, QueryError> {
        PathExpr::parse(s)
    }
}

impl std::str::FromStr for PathQuery {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, QueryError> {
        PathQuery::parse(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> QueryError {
        QueryError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), QueryError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn name(&mut self) -> Result<String, QueryError> {
        let len = self
            .rest()
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || matches!(c, '-' | '_' | '.' | ':')))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        let name = self.rest()[..len].to_owned();
        self.pos += len;
        Ok(name)
    }

    fn quoted(&mut self) -> Result<String, QueryError> {
        let q = match self.rest().chars().next() {
            Some(q @ ('\'' | '"')) => q,
            _ => return Err(self.error("expected a quoted value")),
        };
        self.pos += 1;
        let end = self
            .rest()
            .find(q)
            .ok_or_else(|| self.error("unterminated string"))?;
        let value = self.rest()[..end].to_owned();
        self.pos += end + 1;
        Ok(value)
    }

    fn axis(&mut self) -> Option<Axis> {
        if self.eat("//") {
            Some(Axis::Descendant)
        } else if self.eat("/") {
            Some(Axis::Child)
        } else {
            None
        }
    }

    fn path(&mut self) -> Result<PathExpr, QueryError> {
        self.skip_ws();
        let first = self.axis().unwrap_or(Axis::Child);
        let mut steps = vec![self.step(first)?];
        while let Some(axis) = self.axis() {
            steps.push(self.step(axis)?);
        }
        Ok(PathExpr { steps })
    }

    fn step(&mut self, axis: Axis) -> Result<Step, QueryError> {
        let test = if self.eat("*") {
            NameTest::Any
        } else {
            NameTest::Name(self.name()?)
        };
        let mut predicates = Vec::new();
        while self.eat("[") {
            self.skip_ws();
            let predicate = if self.eat("not(") {
                self.skip_ws();
                self.expect("@")?;
                let key = self.name()?;
                self.skip_ws();
                self.expect(")")?;
                Predicate::Absent { key }
            } else {
                self.expect("@")?;
                let key = self.name()?;
                self.skip_ws();
                self.expect("=")?;
                self.skip_ws();
                let value = self.quoted()?;
                Predicate::Equals { key, value }
            };
            self.skip_ws();
            self.expect("]")?;
            predicates.push(predicate);
        }
        Ok(Step { axis, test, predicates })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LibraryEntry {
    pub name: String,
    /// The XPath text as stored in the library file.
    pub text: String,
    pub description: String,
    pub query: PathQuery,
}

/// Named expressions, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathLibrary {
    entries: Vec<LibraryEntry>,
}

/// The shipped library file: `name<TAB>xpath<TAB>description` per line,
/// `#` starts a comment line.
pub const LIBRARY_TSV: &str = include_str!("../data/path-library.tsv");

impl PathLibrary {
    pub fn from_tsv(text: &str) -> Result<PathLibrary, QueryError> {
        let mut lib = PathLibrary::default();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| QueryError::Library { line: line_no, message };
            let mut fields = line.split('\t');
            let (Some(name), Some(xpath), Some(description), None) =
                (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(err("expected three tab-separated fields".into()));
            };
            let query = PathQuery::parse(xpath).map_err(|e| err(e.to_string()))?;
            lib.insert(LibraryEntry {
                name: name.to_owned(),
                text: xpath.to_owned(),
                description: description.to_owned(),
                query,
            })
            .map_err(|e| err(e.to_string()))?;
        }
        Ok(lib)
    }

    pub fn builtin() -> &'static PathLibrary {
        static LIB: OnceLock<PathLibrary> = OnceLock::new();
        LIB.get_or_init(|| PathLibrary::from_tsv(LIBRARY_TSV).expect("shipped library parses"))
    }

    pub fn insert(&mut self, entry: LibraryEntry) -> Result<(), QueryError> {
        if entry.name.is_empty() || self.entries.iter().any(|e| e.name == entry.name) {
            return Err(QueryError::Library {
                line: 0,
                message: format!("duplicate or empty name `{}`", entry.name),
            });
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&LibraryEntry, QueryError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| QueryError::UnknownName(name.to_owned()))
    }

    pub fn entries(&self) -> &[LibraryEntry] {
        &self.entries
    }

    pub fn to_tsv(&self) -> String {
        self.entries
            .iter()
            .map(|e| format!("{}\t{}\t{}\n", e.name, e.text, e.description))
            .collect()
    }
}

/// Looks up an expression in the shipped library.
pub fn library_get(name: &str) -> Result<&'static PathQuery, QueryError> {
    PathLibrary::builtin().get(name).map(|e| &e.query)
}
