//! Parallel-markup MathML documents.
//!
//! A [`MathDoc`] is parsed once and never mutated; splitting, cleaning and
//! canonicalization return new documents. Nodes are addressed by [`NodeId`],
//! the node's position in preorder.

mod doc;
mod node;
mod parse;
mod serialize;
mod xml;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use doc::{Annotation, CleanFeature, Identifier, IdentifierKind, MathDoc, NodeRef};
pub use node::{MathNode, Preorder};
pub use parse::{ParseMode, ParseReport, Repair, RepairKind};
pub use serialize::SerializeOptions;

pub const MATHML_NS: &str = "http://www.w3.org/1998/Math/MathML";

pub const TEX_ENCODING: &str = "application/x-tex";
pub const CONTENT_ENCODING: &str = "MathML-Content";
pub const PRESENTATION_ENCODING: &str = "MathML-Presentation";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input at byte {offset}: {message}")]
    MalformedInput { offset: usize, message: String },
    #[error("strict mode: input needs repair `{kind}` at byte {offset}")]
    RepairRequired { kind: RepairKind, offset: usize },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("invalid node: {0}")]
    InvalidNode(String),
    #[error("document has no {0} branch")]
    MissingBranch(Scope),
    #[error("removing the requested features would leave no math content")]
    WouldBeEmpty,
    #[error("no features to clean")]
    NoFeatures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) usize);

impl NodeId {
    /// Preorder position.
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Presentation,
    Content,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Scope::from(*self).fmt(f)
    }
}

/// Part of a document an operation looks at. `Whole` covers every element,
/// wrappers and annotations included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Presentation,
    Content,
    Whole,
}

impl From<Branch> for Scope {
    fn from(b: Branch) -> Scope {
        match b {
            Branch::Presentation => Scope::Presentation,
            Branch::Content => Scope::Content,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Presentation => "presentation",
            Scope::Content => "content",
            Scope::Whole => "whole",
        })
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Scope, String> {
        match s {
            "presentation" => Ok(Scope::Presentation),
            "content" => Ok(Scope::Content),
            "whole" | "both" => Ok(Scope::Whole),
            _ => Err(format!("unknown scope `{s}` (presentation, content, whole)")),
        }
    }
}

impl FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> Result<Branch, String> {
        match s {
            "presentation" => Ok(Branch::Presentation),
            "content" => Ok(Branch::Content),
            _ => Err(format!("unknown branch `{s}` (presentation, content)")),
        }
    }
}

/// Content MathML element names. Used to tell a bare content tree from a
/// presentation tree when there is no `semantics` wrapper.
pub fn is_content_element(name: &str) -> bool {
    const NAMES: &[&str] = &[
        "abs", "and", "apply", "approx", "arccos", "arccosh", "arccot", "arccoth", "arccsc",
        "arccsch", "arcsec", "arcsech", "arcsin", "arcsinh", "arctan", "arctanh", "arg", "bind",
        "bvar", "card", "cartesianproduct", "cbytes", "ceiling", "cerror", "ci", "cn", "codomain",
        "complexes", "compose", "condition", "conjugate", "cos", "cosh", "cot", "coth", "cs",
        "csc", "csch", "csymbol", "curl", "declare", "degree", "determinant", "diff",
        "divergence", "divide", "domain", "domainofapplication", "emptyset", "eq", "equivalent",
        "eulergamma", "exists", "exp", "exponentiale", "factorial", "factorof", "false", "floor",
        "fn", "forall", "gcd", "geq", "grad", "gt", "ident", "image", "imaginary", "imaginaryi",
        "implies", "in", "infinity", "int", "integers", "intersect", "interval", "inverse",
        "lambda", "laplacian", "lcm", "leq", "limit", "list", "ln", "log", "logbase", "lowlimit",
        "lt", "matrix", "matrixrow", "max", "mean", "median", "min", "minus", "mode", "moment",
        "momentabout", "naturalnumbers", "neq", "not", "notanumber", "notin", "notprsubset",
        "notsubset", "or", "otherwise", "outerproduct", "partialdiff", "pi", "piece",
        "piecewise", "plus", "power", "primes", "product", "prsubset", "quotient", "rationals",
        "real", "reals", "reln", "rem", "root", "scalarproduct", "sdev", "sec", "sech",
        "selector", "set", "setdiff", "share", "sin", "sinh", "subset", "sum", "tan", "tanh",
        "tendsto", "times", "transpose", "true", "union", "uplimit", "variance", "vector",
        "vectorproduct", "xor",
    ];
    NAMES.binary_search(&name).is_ok()
}
