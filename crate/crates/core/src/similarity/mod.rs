//! Histogram, tree-edit, earth mover's and cosine measures over MathML.
//!
//! Every measure except tree edit distance works on [`Histogram`]s of element
//! names. For whole documents the per-formula histograms are summed first.

mod emd;
mod histogram;
mod ted;

use thiserror::Error;

use crate::mathml::{self, MathDoc, Scope};

pub use emd::{emd, GroundDistance};
pub use histogram::{hist_distance_absolute, hist_distance_relative, Histogram, STRUCTURAL_ELEMENTS};
pub use ted::{tree_edit_distance, tree_edit_distance_with, CostConfig, LabelMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimilarityError {
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("document list is empty")]
    EmptyDocumentList,
    #[error("invalid cost: {0}")]
    InvalidCost(String),
    #[error("invalid ground distance: {0}")]
    InvalidGround(String),
    #[error(transparent)]
    Document(#[from] mathml::Error),
}

pub fn histogram(doc: &MathDoc, scope: Scope, include_structural: bool) -> Result<Histogram, SimilarityError> {
    Ok(Histogram::of_doc(doc, scope, include_structural)?)
}

/// Cosine of the angle between two count vectors; in `[0, 1]`.
pub fn cosine_similarity(a: &Histogram, b: &Histogram) -> Result<f64, SimilarityError> {
    if a.is_empty() || b.is_empty() {
        return Err(SimilarityError::EmptyHistogram);
    }
    let norm = |h: &Histogram| h.iter().map(|(_, v)| (v as f64).powi(2)).sum::<f64>().sqrt();
    let dot: f64 = a
        .iter()
        .map(|(k, v)| v as f64 * b.get(k) as f64)
        .sum();
    Ok((dot / (norm(a) * norm(b))).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub enum DocumentMeasure {
    Emd(GroundDistance),
    Cosine,
}

/// Compares two documents given as lists of formulas. Each list is
/// accumulated into one histogram before the measure is applied.
pub fn document_distance(
    a: &[MathDoc],
    b: &[MathDoc],
    measure: &DocumentMeasure,
    scope: Scope,
    include_structural: bool,
) -> Result<f64, SimilarityError> {
    if a.is_empty() || b.is_empty() {
        return Err(SimilarityError::EmptyDocumentList);
    }
    let accumulate = |docs: &[MathDoc]| -> Result<Histogram, SimilarityError> {
        let hs = docs
            .iter()
            .map(|d| histogram(d, scope, include_structural))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Histogram::accumulate(&hs))
    };
    let (ha, hb) = (accumulate(a)?, accumulate(b)?);
    match measure {
        DocumentMeasure::Emd(ground) => emd(&ha, &hb, ground),
        DocumentMeasure::Cosine => cosine_similarity(&ha, &hb),
    }
}
