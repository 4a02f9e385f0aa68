use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use fixedbitset::FixedBitSet;

use crate::complex::{Complex, VertexId};
use crate::error::{Error, Result};

/// Simple undirected graph over labelled vertices, stored as dense bit rows.
///
/// Vertices are addressed internally by their index in the sorted label list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<VertexId>,
    rows: Vec<FixedBitSet>,
}

impl Graph {
    /// Graph on vertices `0..n` with the given index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let labels = (0..n as u32).map(VertexId).collect();
        let mut g = Graph::empty(labels);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::parameter(format!("edge ({u},{v}) out of range for order {n}")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph on the given labels (deduplicated, sorted) and labelled edges.
    pub fn with_labels<I>(labels: Vec<VertexId>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut labels = labels;
        labels.sort_unstable();
        labels.dedup();
        let mut g = Graph::empty(labels);
        for (a, b) in edges {
            let (u, v) = match (g.index_of(a), g.index_of(b)) {
                (Some(u), Some(v)) => (u, v),
                _ => return Err(Error::parameter(format!("edge ({a},{b}) uses an undeclared vertex"))),
            };
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn empty(labels: Vec<VertexId>) -> Graph {
        let n = labels.len();
        Graph {
            labels,
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::parameter(format!("self-loop at {}", self.labels[u])));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> VertexId {
        self.labels[i]
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.labels.binary_search(&v).ok()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            out.extend(self.rows[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(self.labels.clone());
        for u in 0..n {
            let mut row = self.rows[u].clone();
            row.toggle_range(..);
            row.set(u, false);
            g.rows[u] = row;
        }
        g
    }

    /// Connected components as sorted index lists, ordered by first index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.rows[u].ones() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices adjacent to every vertex in `set`; all vertices if `set` is empty.
    pub fn common_neighbors(&self, set: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.order());
        acc.insert_range(..);
        for &u in set {
            acc.intersect_with(&self.rows[u]);
        }
        for &u in set {
            acc.set(u, false);
        }
        acc
    }

    /// Induced subgraph on the given indices (labels kept).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let labels: Vec<VertexId> = keep.iter().map(|&i| self.labels[i]).collect();
        let mut edges = Vec::new();
        for (a, &u) in keep.iter().enumerate() {
            for &v in &keep[a + 1..] {
                if self.adjacent(u, v) {
                    edges.push((self.labels[u], self.labels[v]));
                }
            }
        }
        Graph::with_labels(labels, edges).expect("induced subgraph of a valid graph")
    }

    /// `true` when the graph is a single cycle of length ≥ 3.
    pub fn is_cycle(&self) -> bool {
        self.order() >= 3 && (0..self.order()).all(|u| self.degree(u) == 2) && self.is_connected()
    }
}

/// Graph whose edges are the 1-faces of `c`.
pub fn one_skeleton(c: &Complex) -> Graph {
    let mut edges = BTreeSet::new();
    for f in c.facets() {
        let vs = f.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                edges.insert((vs[i], vs[j]));
            }
        }
    }
    Graph::with_labels(c.vertices().to_vec(), edges).expect("facets use their own vertices")
}

/// Parses the `.g` edge-list format: `#` comments, one `u v` edge per line,
/// and an optional `vertices N` line declaring vertices `0..N`.
pub fn parse_g(text: &str) -> Result<Graph> {
    let mut labels = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let num = |t: &str| {
            t.parse::<u32>().map_err(|e| Error::Parse {
                line,
                message: format!("bad vertex label {t:?}: {e}"),
            })
        };
        match toks.as_slice() {
            ["vertices", n] => {
                let n = num(n)?;
                labels.extend((0..n).map(VertexId));
            }
            [a, b] => {
                let (a, b) = (VertexId(num(a)?), VertexId(num(b)?));
                if a == b {
                    return Err(Error::Parse {
                        line,
                        message: format!("self-loop at {a}"),
                    });
                }
                labels.insert(a);
                labels.insert(b);
                edges.push((a, b));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `u v` or `vertices N`, got {body:?}"),
                })
            }
        }
    }
    Graph::with_labels(labels.into_iter().collect(), edges)
}

/// Writes the `.g` format with edges sorted lexicographically. A `vertices N`
/// header is emitted when the labels are exactly `0..N` and some vertex is
/// isolated; isolated vertices with other labels cannot be expressed.
pub fn write_g(g: &Graph) -> Result<String> {
    let mut out = String::new();
    let isolated = (0..g.order()).any(|u| g.degree(u) == 0);
    if isolated {
        let contiguous = g.labels().iter().enumerate().all(|(i, v)| v.0 as usize == i);
        if !contiguous {
            return Err(Error::Unsupported(
                "isolated vertices with non-contiguous labels".into(),
            ));
        }
        let _ = writeln!(out, "vertices {}", g.order());
    }
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (g.label(u).0, g.label(v).0))
        .collect();
    edges.sort_unstable();
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    Ok(out)
}

pub fn read_g_file(path: impl AsRef<Path>) -> Result<Graph> {
    parse_g(&std::fs::read_to_string(path)?)
}
