//! Tools for fully descriptive (parallel-markup) MathML.
//!
//! The crate is split by concern:
//!
//! - [`mathml`]: lenient/strict parsing, the [`MathDoc`] model, serialization,
//!   branch splitting, cleaning and cross-reference navigation.
//! - [`query`]: a small path-expression language and a shipped library of
//!   reusable expressions.
//! - [`similarity`]: element histograms, histogram distances, tree edit
//!   distance, earth mover's distance and cosine similarity.
//! - [`gold`]: gold-standard benchmark entries stored as JSON.
//! - [`convert`]: adapters for external LaTeX to MathML tools and the
//!   built-in canonical form.
//!
//! ```
//! use mathml_tools::{MathDoc, ParseMode, samples};
//!
//! let (doc, report) = MathDoc::parse(samples::PARALLEL_FRAC, ParseMode::Strict).unwrap();
//! assert!(report.repairs.is_empty());
//! assert_eq!(doc.get_tex(), Some("\\frac{a}{b}"));
//! ```

pub mod convert;
pub mod gold;
pub mod mathml;
pub mod query;
pub mod samples;
pub mod similarity;

pub use mathml::{
    Branch, CleanFeature, Error, Identifier, IdentifierKind, MathDoc, MathNode, NodeId,
    ParseMode, ParseReport, Repair, RepairKind, SerializeOptions, MATHML_NS,
};
