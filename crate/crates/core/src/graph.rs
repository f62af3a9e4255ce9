//! Simple undirected graphs on vertices `0..n`, blowups, and the strict
//! edge-list text format.

use std::fmt;
use std::ops::Range;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("blowup class size must be positive")]
    ZeroClassSize,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Simple undirected graph with sorted adjacency lists.
///
/// Immutable once built. Equality is label-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Graph {
            adj,
            edge_count: n * n.saturating_sub(1) / 2,
        }
    }

    /// Cycle `0-1-...-(n-1)-0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges).expect("petersen edges are valid")
    }

    /// Builds a graph from an edge list in any order and orientation.
    /// Rejects loops, out-of-range endpoints and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
        })
    }

    /// Builds a graph from `n` and a bitmask per vertex (`n <= 64`).
    pub fn from_bitmasks(masks: &[u64]) -> Result<Self, GraphError> {
        let n = masks.len();
        let mut edges = Vec::new();
        for (u, &mask) in masks.iter().enumerate() {
            for v in 0..64 {
                if mask >> v & 1 == 1 {
                    check_vertex(v, n)?;
                    if u == v {
                        return Err(GraphError::SelfLoop(u));
                    }
                    if masks[v] >> u & 1 == 0 {
                        return Err(GraphError::Parse {
                            line: 0,
                            msg: format!("asymmetric adjacency between {u} and {v}"),
                        });
                    }
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Copy of this graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut edges: Vec<_> = self.edges().collect();
        edges.push((u, v));
        Graph::from_edges(self.vertex_count(), &edges)
    }

    /// Graph with vertex `v` relabelled to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.vertex_count(), &edges).expect("relabelling preserves validity")
    }

    /// Adjacency bitmasks; only for graphs with at most 64 vertices.
    pub fn to_bitmasks(&self) -> Vec<u64> {
        assert!(self.vertex_count() <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect()
    }

    /// Serializes as `n m` followed by one sorted `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Strict reader for the edge-list format written by [`Graph::to_text`].
    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let perr = |line: usize, msg: &str| GraphError::Parse {
            line,
            msg: msg.to_string(),
        };
        if !text.ends_with('\n') {
            return Err(perr(0, "input must be newline-terminated"));
        }
        let mut lines = text[..text.len() - 1].split('\n');
        let header = lines.next().ok_or_else(|| perr(1, "missing header"))?;
        let (n, m) = parse_pair(header).ok_or_else(|| perr(1, "expected `n m`"))?;
        let mut edges = Vec::with_capacity(m);
        let mut prev: Option<(usize, usize)> = None;
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            let (u, v) = parse_pair(line).ok_or_else(|| perr(lineno, "expected `u v`"))?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u > v {
                return Err(perr(lineno, "edge endpoints must satisfy u < v"));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if let Some(p) = prev {
                if p == (u, v) {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                if p > (u, v) {
                    return Err(perr(lineno, "edges not sorted"));
                }
            }
            prev = Some((u, v));
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(perr(
                1,
                &format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Graph::from_edges(n, &edges)
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split(' ');
    let a = parse_decimal(it.next()?)?;
    let b = parse_decimal(it.next()?)?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

// ASCII digits only; `usize::from_str` would also accept a leading `+`.
fn parse_decimal(tok: &str) -> Option<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok()
}

fn check_vertex(v: usize, n: usize) -> Result<(), GraphError> {
    if v >= n {
        Err(GraphError::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Exact average degree `2|E| / |V|`.
pub fn average_degree(g: &Graph) -> Result<Ratio<u64>, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    Ok(Ratio::new(
        2 * g.edge_count() as u64,
        g.vertex_count() as u64,
    ))
}

/// True iff no edge of `g` joins a vertex of `a` to a vertex of `b`.
///
/// Overlap between `a` and `b` is not considered here.
pub fn non_adjacent(g: &Graph, a: &[usize], b: &[usize]) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    for &v in a.iter().chain(b) {
        check_vertex(v, n)?;
    }
    let mut in_b = vec![false; n];
    for &v in b {
        in_b[v] = true;
    }
    Ok(!a.iter().any(|&u| g.neighbors(u).iter().any(|&w| in_b[w])))
}

/// A graph obtained from `base` by replacing every vertex with an independent
/// set of `r` vertices and every edge with a complete bipartite graph.
///
/// Class `x` occupies vertices `x*r .. x*r + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupGraph {
    base: Graph,
    r: usize,
    graph: Graph,
}

impl BlowupGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn class_size(&self) -> usize {
        self.r
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Base vertex whose class contains `v`.
    pub fn class_of(&self, v: usize) -> usize {
        v / self.r
    }

    pub fn class(&self, x: usize) -> Range<usize> {
        x * self.r..(x + 1) * self.r
    }
}

pub fn blowup(base: &Graph, r: usize) -> Result<BlowupGraph, GraphError> {
    if r == 0 {
        return Err(GraphError::ZeroClassSize);
    }
    let n = base.vertex_count() * r;
    let adj = (0..n)
        .map(|v| {
            base.neighbors(v / r)
                .iter()
                .flat_map(|&y| y * r..(y + 1) * r)
                .collect()
        })
        .collect();
    let graph = Graph {
        adj,
        edge_count: base.edge_count() * r * r,
    };
    Ok(BlowupGraph {
        base: base.clone(),
        r,
        graph,
    })
}
