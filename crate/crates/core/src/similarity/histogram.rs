use std::collections::BTreeMap;
use std::fmt;

use crate::mathml::{Error, MathDoc, Scope};

/// Element names that only wrap or annotate a formula.
pub const STRUCTURAL_ELEMENTS: [&str; 4] = ["math", "semantics", "annotation", "annotation-xml"];

/// Element-name counts. Zero counts are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Histogram {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts elements of `doc` within `scope` by local name; text is ignored.
    pub fn of_doc(doc: &MathDoc, scope: Scope, include_structural: bool) -> Result<Histogram, Error> {
        let mut h = Histogram::new();
        for id in doc.scope_nodes(scope)? {
            let name = doc.node(id).name();
            if include_structural || !STRUCTURAL_ELEMENTS.contains(&name) {
                h.add(name, 1);
            }
        }
        Ok(h)
    }

    pub fn add(&mut self, name: &str, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(name.to_owned()).or_insert(0) += count;
        self.total += count;
    }

    pub fn get(&self, name: &str) -> u64 {
        self.counts.get(name).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Number of distinct names.
    pub fn support(&self) -> usize {
        self.counts.len()
    }

    /// `(name, count)` in lexicographic name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.counts.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Sorted union of both key sets.
    pub fn union_keys<'a>(&'a self, other: &'a Histogram) -> Vec<&'a str> {
        let mut keys: Vec<&str> = self.counts.keys().chain(other.counts.keys()).map(String::as_str).collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    /// Pointwise sum.
    pub fn accumulate<'a, I>(hs: I) -> Histogram
    where
        I: IntoIterator<Item = &'a Histogram>,
    {
        let mut acc = Histogram::new();
        for h in hs {
            acc.merge(h);
        }
        acc
    }

    pub fn merge(&mut self, other: &Histogram) {
        for (k, v) in other.iter() {
            self.add(k, v);
        }
    }

    /// `name<TAB>count` lines, sorted by name.
    pub fn to_text(&self) -> String {
        self.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
    }
}

impl<S: Into<String>> FromIterator<(S, u64)> for Histogram {
    fn from_iter<T: IntoIterator<Item = (S, u64)>>(iter: T) -> Self {
        let mut h = Histogram::new();
        for (k, v) in iter {
            h.add(&k.into(), v);
        }
        h
    }
}

impl fmt::Display for Histogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Σ |a[k] − b[k]| over the union of keys.
pub fn hist_distance_absolute(a: &Histogram, b: &Histogram) -> f64 {
    a.union_keys(b)
        .into_iter()
        .map(|k| a.get(k).abs_diff(b.get(k)))
        .sum::<u64>() as f64
}

/// Absolute distance over `a.total + b.total`; 0 when both are empty.
pub fn hist_distance_relative(a: &Histogram, b: &Histogram) -> f64 {
    let mass = a.total() + b.total();
    if mass == 0 {
        0.0
    } else {
        hist_distance_absolute(a, b) / mass as f64
    }
}
