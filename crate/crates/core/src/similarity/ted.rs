//! Ordered labeled tree edit distance (Zhang–Shasha).

use crate::mathml::MathNode;

use super::SimilarityError;

/// Weights of the three edit operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostConfig {
    insert: f64,
    delete: f64,
    rename: f64,
}

impl Default for CostConfig {
    fn default() -> Self {
        CostConfig {
            insert: 1.0,
            delete: 1.0,
            rename: 1.0,
        }
    }
}

impl CostConfig {
    pub fn new(insert: f64, delete: f64, rename: f64) -> Result<CostConfig, SimilarityError> {
        for (what, w) in [("insert", insert), ("delete", delete), ("rename", rename)] {
            if !w.is_finite() || w < 0.0 {
                return Err(SimilarityError::InvalidCost(format!("{what} weight {w}")));
            }
        }
        Ok(CostConfig { insert, delete, rename })
    }

    pub fn insert(&self) -> f64 {
        self.insert
    }

    pub fn delete(&self) -> f64 {
        self.delete
    }

    pub fn rename(&self) -> f64 {
        self.rename
    }
}

/// What two nodes must share to be matched without a rename.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    /// Element name only.
    #[default]
    Name,
    /// Element name, plus the text of leaf elements (`mi`, `cn`, ...).
    NameAndLeafText,
}

fn label(node: &MathNode, mode: LabelMode) -> String {
    match (mode, &node.text) {
        (LabelMode::NameAndLeafText, Some(text)) if node.children.is_empty() => {
            format!("{}\u{0}{text}", node.name)
        }
        _ => node.name.clone(),
    }
}

/// Postorder arrays for the dynamic program.
struct Postorder {
    labels: Vec<String>,
    /// Leftmost leaf descendant of each node, as a postorder index.
    leftmost: Vec<usize>,
    keyroots: Vec<usize>,
}

impl Postorder {
    fn new(root: &MathNode, mode: LabelMode) -> Postorder {
        fn walk(node: &MathNode, mode: LabelMode, labels: &mut Vec<String>, leftmost: &mut Vec<usize>) -> usize {
            let mut first_leaf = None;
            for child in &node.children {
                let l = walk(child, mode, labels, leftmost);
                first_leaf.get_or_insert(l);
            }
            let me = labels.len();
            labels.push(label(node, mode));
            let l = first_leaf.unwrap_or(me);
            leftmost.push(l);
            l
        }
        let mut labels = Vec::new();
        let mut leftmost = Vec::new();
        walk(root, mode, &mut labels, &mut leftmost);
        let n = labels.len();
        // A keyroot is the highest node for its leftmost leaf.
        let mut seen = vec![false; n];
        let mut keyroots = Vec::new();
        for i in (0..n).rev() {
            if !seen[leftmost[i]] {
                seen[leftmost[i]] = true;
                keyroots.push(i);
            }
        }
        keyroots.reverse();
        Postorder { labels, leftmost, keyroots }
    }
}

/// Minimum-cost edit script turning `a` into `b`, labels by element name.
pub fn tree_edit_distance(a: &MathNode, b: &MathNode, costs: &CostConfig) -> f64 {
    tree_edit_distance_with(a, b, costs, LabelMode::Name)
}

pub fn tree_edit_distance_with(a: &MathNode, b: &MathNode, costs: &CostConfig, mode: LabelMode) -> f64 {
    let a = Postorder::new(a, mode);
    let b = Postorder::new(b, mode);
    let (n, m) = (a.labels.len(), b.labels.len());
    let mut tree = vec![vec![0.0f64; m]; n];
    let mut forest = vec![vec![0.0f64; m + 1]; n + 1];

    for &i in &a.keyroots {
        for &j in &b.keyroots {
            let (li, lj) = (a.leftmost[i], b.leftmost[j]);
            forest[0][0] = 0.0;
            for x in li..=i {
                forest[x - li + 1][0] = forest[x - li][0] + costs.delete;
            }
            for y in lj..=j {
                forest[0][y - lj + 1] = forest[0][y - lj] + costs.insert;
            }
            for x in li..=i {
                for y in lj..=j {
                    let (dx, dy) = (x - li + 1, y - lj + 1);
                    let del = forest[dx - 1][dy] + costs.delete;
                    let ins = forest[dx][dy - 1] + costs.insert;
                    if a.leftmost[x] == li && b.leftmost[y] == lj {
                        let ren = if a.labels[x] == b.labels[y] { 0.0 } else { costs.rename };
                        let v = del.min(ins).min(forest[dx - 1][dy - 1] + ren);
                        forest[dx][dy] = v;
                        tree[x][y] = v;
                    } else {
                        let (px, py) = (a.leftmost[x] - li, b.leftmost[y] - lj);
                        forest[dx][dy] = del.min(ins).min(forest[px][py] + tree[x][y]);
                    }
                }
            }
        }
    }
    tree[n - 1][m - 1]
}
