use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Branch sets `X_v`, one per vertex `v` of the pattern graph, each kept
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    branch_sets: Vec<Vec<usize>>,
}

impl MinorModel {
    pub fn new(mut branch_sets: Vec<Vec<usize>>) -> Self {
        for set in &mut branch_sets {
            set.sort_unstable();
        }
        MinorModel { branch_sets }
    }

    pub fn branch_sets(&self) -> &[Vec<usize>] {
        &self.branch_sets
    }

    pub fn branch_set(&self, v: usize) -> &[usize] {
        &self.branch_sets[v]
    }

    pub fn len(&self) -> usize {
        self.branch_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branch_sets.is_empty()
    }

    /// One line per pattern vertex with its branch-set vertex ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for set in &self.branch_sets {
            let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MinorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelViolation {
    #[error("model has {got} branch sets, pattern has {expected} vertices")]
    WrongCount { expected: usize, got: usize },
    #[error("branch set {0} is empty")]
    Empty(usize),
    #[error("branch set {set} contains vertex {vertex} outside the host")]
    OutOfRange { set: usize, vertex: usize },
    #[error("vertex {vertex} lies in branch sets {first} and {second}")]
    Overlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("branch set {0} does not induce a connected subgraph")]
    Disconnected(usize),
    #[error("no host edge between branch sets {0} and {1}")]
    MissingEdge(usize, usize),
}

/// Checks, in order: count, non-emptiness, range, disjointness,
/// connectivity, and an edge of `g` between `X_v` and `X_w` for every edge
/// `vw` of `h`. Returns the first violation.
pub fn validate_model(model: &MinorModel, h: &Graph, g: &Graph) -> Result<(), ModelViolation> {
    if model.len() != h.vertex_count() {
        return Err(ModelViolation::WrongCount {
            expected: h.vertex_count(),
            got: model.len(),
        });
    }
    let n = g.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, set) in model.branch_sets().iter().enumerate() {
        if set.is_empty() {
            return Err(ModelViolation::Empty(i));
        }
        for &x in set {
            if x >= n {
                return Err(ModelViolation::OutOfRange { set: i, vertex: x });
            }
            if let Some(j) = owner[x] {
                return Err(ModelViolation::Overlap {
                    vertex: x,
                    first: j,
                    second: i,
                });
            }
            owner[x] = Some(i);
        }
    }
    for (i, set) in model.branch_sets().iter().enumerate() {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([set[0]]);
        seen[set[0]] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !seen[y] && owner[y] == Some(i) {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != set.len() {
            return Err(ModelViolation::Disconnected(i));
        }
    }
    for (v, w) in h.edges() {
        let touches = model
            .branch_set(v)
            .iter()
            .any(|&x| g.neighbors(x).iter().any(|&y| owner[y] == Some(w)));
        if !touches {
            return Err(ModelViolation::MissingEdge(v, w));
        }
    }
    Ok(())
}
