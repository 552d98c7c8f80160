//! Earth mover's distance between normalized element histograms.
//!
//! Both histograms are scaled to integer masses with a common total so the
//! transportation problem is solved exactly by successive shortest paths on
//! the bipartite supply/demand graph.

use std::collections::BTreeMap;

use super::{Histogram, SimilarityError};

/// Per-bin cost of moving mass from one element name to another.
///
/// Discrete by default (0 for equal names, 1 otherwise); individual unordered
/// name pairs can be overridden.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GroundDistance {
    overrides: BTreeMap<(String, String), f64>,
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

impl GroundDistance {
    pub fn discrete() -> Self {
        Self::default()
    }

    pub fn with_override(mut self, a: &str, b: &str, cost: f64) -> Result<Self, SimilarityError> {
        if a == b {
            return Err(SimilarityError::InvalidGround(format!(
                "distance of `{a}` to itself is fixed at 0"
            )));
        }
        if !cost.is_finite() || cost < 0.0 {
            return Err(SimilarityError::InvalidGround(format!("cost {cost} for `{a}`/`{b}`")));
        }
        self.overrides.insert(ordered(a, b), cost);
        Ok(self)
    }

    pub fn distance(&self, a: &str, b: &str) -> f64 {
        if a == b {
            return 0.0;
        }
        self.overrides.get(&ordered(a, b)).copied().unwrap_or(1.0)
    }

    pub fn is_discrete(&self) -> bool {
        self.overrides.is_empty()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Minimum transport cost from `a / a.total` to `b / b.total`.
pub fn emd(a: &Histogram, b: &Histogram, ground: &GroundDistance) -> Result<f64, SimilarityError> {
    if a.is_empty() || b.is_empty() {
        return Err(SimilarityError::EmptyHistogram);
    }
    let g = gcd(a.total(), b.total());
    let (scale_a, scale_b) = ((b.total() / g) as u128, (a.total() / g) as u128);
    let mass = a.total() as u128 * scale_a;

    let sources: Vec<(&str, u128)> = a.iter().map(|(k, v)| (k, v as u128 * scale_a)).collect();
    let sinks: Vec<(&str, u128)> = b.iter().map(|(k, v)| (k, v as u128 * scale_b)).collect();
    let cost: Vec<Vec<f64>> = sources
        .iter()
        .map(|(s, _)| sinks.iter().map(|(t, _)| ground.distance(s, t)).collect())
        .collect();
    let supply: Vec<u128> = sources.iter().map(|s| s.1).collect();
    let demand: Vec<u128> = sinks.iter().map(|s| s.1).collect();
    Ok(min_cost_transport(&supply, &demand, &cost) / mass as f64)
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u128,
    cost: f64,
    rev: usize,
}

struct FlowGraph {
    adj: Vec<Vec<Edge>>,
}

impl FlowGraph {
    fn new(n: usize) -> Self {
        FlowGraph { adj: vec![Vec::new(); n] }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u128, cost: f64) {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push(Edge { to, cap, cost, rev: rev_from });
        self.adj[to].push(Edge { to: from, cap: 0, cost: -cost, rev: rev_to });
    }

    /// Bellman–Ford over the residual graph; returns the predecessor edge of
    /// every reachable node.
    fn shortest_path(&self, source: usize) -> Vec<Option<(usize, usize)>> {
        const EPS: f64 = 1e-12;
        let n = self.adj.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![None; n];
        dist[source] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                if dist[u].is_infinite() {
                    continue;
                }
                for (ei, e) in self.adj[u].iter().enumerate() {
                    if e.cap > 0 && dist[u] + e.cost < dist[e.to] - EPS {
                        dist[e.to] = dist[u] + e.cost;
                        pred[e.to] = Some((u, ei));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        pred
    }
}

/// Exact optimum of the balanced transportation problem.
pub(crate) fn min_cost_transport(supply: &[u128], demand: &[u128], cost: &[Vec<f64>]) -> f64 {
    let (m, n) = (supply.len(), demand.len());
    let (source, sink) = (0, m + n + 1);
    let mut g = FlowGraph::new(m + n + 2);
    for (i, &s) in supply.iter().enumerate() {
        g.add_edge(source, 1 + i, s, 0.0);
    }
    for (j, &d) in demand.iter().enumerate() {
        g.add_edge(1 + m + j, sink, d, 0.0);
    }
    for i in 0..m {
        for j in 0..n {
            g.add_edge(1 + i, 1 + m + j, u128::MAX, cost[i][j]);
        }
    }

    let mut total = 0.0;
    loop {
        let pred = g.shortest_path(source);
        if pred[sink].is_none() {
            break;
        }
        let mut bottleneck = u128::MAX;
        let mut v = sink;
        while let Some((u, ei)) = pred[v] {
            bottleneck = bottleneck.min(g.adj[u][ei].cap);
            v = u;
        }
        let mut v = sink;
        while let Some((u, ei)) = pred[v] {
            let e = &mut g.adj[u][ei];
            e.cap -= bottleneck;
            total += bottleneck as f64 * e.cost;
            let (to, rev) = (e.to, e.rev);
            g.adj[to][rev].cap += bottleneck;
            v = u;
        }
    }
    total
}
