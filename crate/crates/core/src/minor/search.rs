//! Branch-and-bound minor search.
//!
//! Pattern vertices are placed one at a time. Each receives a connected
//! branch set drawn from the still-unused host vertices, enumerated by
//! increasing size, that touches the branch set of every already placed
//! neighbour. After every placement the remaining problem is checked for
//! feasibility (enough free vertices, each connected block of unplaced
//! pattern vertices fits in one free component touching all the branch sets
//! it must reach, and enough host edges left to witness the unplaced pattern
//! edges).
//!
//! Vertices with identical neighbourhoods (every class of a blowup) can be
//! swapped between branch sets without breaking a model, so within each
//! such class the branch sets placed earlier always hold the lower indices.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{MinorError, MinorModel};
use crate::graph::Graph;

pub const MAX_HOST_VERTICES: usize = 128;

type Mask = u128;

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[inline]
fn count(m: Mask) -> usize {
    m.count_ones() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Maximum number of candidate branch sets examined.
    pub node_limit: u64,
    /// Wall-clock limit in seconds.
    pub time_limit: Option<f64>,
}

impl SearchBudget {
    pub fn nodes(node_limit: u64) -> Self {
        SearchBudget {
            node_limit,
            time_limit: None,
        }
    }

    pub fn unlimited() -> Self {
        Self::nodes(u64::MAX)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinorOutcome {
    Model(MinorModel),
    NoMinor,
    Inconclusive { nodes: u64, elapsed_secs: f64 },
}

impl MinorOutcome {
    pub fn is_model(&self) -> bool {
        matches!(self, MinorOutcome::Model(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub outcome: MinorOutcome,
    pub nodes: u64,
    pub elapsed_secs: f64,
}

/// Decides whether `h` is a minor of `g` within `budget`.
pub fn find_minor(h: &Graph, g: &Graph, budget: SearchBudget) -> Result<MinorOutcome, MinorError> {
    find_minor_report(h, g, budget).map(|r| r.outcome)
}

pub fn find_minor_report(
    h: &Graph,
    g: &Graph,
    budget: SearchBudget,
) -> Result<SearchReport, MinorError> {
    let start = Instant::now();
    let trivial = |outcome| SearchReport {
        outcome,
        nodes: 0,
        elapsed_secs: start.elapsed().as_secs_f64(),
    };
    if h.vertex_count() == 0 {
        return Ok(trivial(MinorOutcome::Model(MinorModel::new(Vec::new()))));
    }
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return Ok(trivial(MinorOutcome::NoMinor));
    }
    if g.vertex_count() > MAX_HOST_VERTICES {
        return Err(MinorError::HostTooLarge {
            n: g.vertex_count(),
            max: MAX_HOST_VERTICES,
        });
    }

    let host = Host::new(g);
    let pattern = Pattern::new(h);
    let mut state = State {
        sets: vec![0; h.vertex_count()],
        reach: vec![0; h.vertex_count()],
        unused: host.all,
        nodes: 0,
        node_limit: budget.node_limit,
        deadline: budget
            .time_limit
            .map(|s| start + Duration::from_secs_f64(s.max(0.0))),
    };
    let flow = place(&host, &pattern, &mut state, 0);
    let elapsed_secs = start.elapsed().as_secs_f64();
    let outcome = match flow {
        Flow::Found => {
            let sets = state
                .sets
                .iter()
                .map(|&m| bits(m).map(|i| host.label[i]).collect())
                .collect();
            MinorOutcome::Model(MinorModel::new(sets))
        }
        Flow::Exhausted => MinorOutcome::NoMinor,
        Flow::OutOfBudget => MinorOutcome::Inconclusive {
            nodes: state.nodes,
            elapsed_secs,
        },
    };
    Ok(SearchReport {
        outcome,
        nodes: state.nodes,
        elapsed_secs,
    })
}

/// Host relabelled so that internal index order is decreasing degree, ties
/// by label.
struct Host {
    adj: Vec<Mask>,
    label: Vec<usize>,
    all: Mask,
    /// Lower-index vertices with the same open neighbourhood.
    lower_twins: Vec<Mask>,
}

impl Host {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut label: Vec<usize> = (0..n).collect();
        label.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut rank = vec![0; n];
        for (i, &v) in label.iter().enumerate() {
            rank[v] = i;
        }
        let adj: Vec<Mask> = label
            .iter()
            .map(|&v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << rank[w]))
            .collect();
        let all = if n == 128 { Mask::MAX } else { (1 << n) - 1 };
        let lower_twins = (0..n)
            .map(|v| {
                (0..v)
                    .filter(|&u| adj[u] == adj[v])
                    .fold(0, |m, u| m | 1 << u)
            })
            .collect();
        Host {
            adj,
            label,
            all,
            lower_twins,
        }
    }

    /// Twins are interchangeable between branch sets, so only sets that take
    /// the lowest-index free vertices of each twin class are tried.
    fn takes_lowest_twins(&self, set: Mask, unused: Mask) -> bool {
        bits(set).all(|v| self.lower_twins[v] & unused & !set == 0)
    }

    fn neighborhood(&self, set: Mask) -> Mask {
        bits(set).fold(0, |m, v| m | self.adj[v]) & !set
    }

    /// Connected component of `within` containing `root`.
    fn component(&self, root: usize, within: Mask) -> Mask {
        let mut comp: Mask = 1 << root;
        let mut frontier = comp;
        while frontier != 0 {
            let grown = bits(frontier).fold(0, |m, v| m | self.adj[v]) & within & !comp;
            comp |= grown;
            frontier = grown;
        }
        comp
    }

    fn components(&self, mut within: Mask) -> Vec<Mask> {
        let mut out = Vec::new();
        while within != 0 {
            let c = self.component(within.trailing_zeros() as usize, within);
            within &= !c;
            out.push(c);
        }
        out
    }
}

/// Pattern vertices in placement order: highest degree first, then always
/// the vertex with most placed neighbours (ties by degree, then label).
struct Pattern {
    adj: Vec<Vec<usize>>,
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Pattern {
    fn new(h: &Graph) -> Self {
        let n = h.vertex_count();
        let adj: Vec<Vec<usize>> = (0..n).map(|v| h.neighbors(v).to_vec()).collect();
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], adj[v].len(), std::cmp::Reverse(v)))
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
            for &w in &adj[next] {
                links[w] += 1;
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        Pattern { adj, order, pos }
    }
}

struct State {
    sets: Vec<Mask>,
    /// Host neighbourhood of each placed branch set.
    reach: Vec<Mask>,
    unused: Mask,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
}

impl State {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return false;
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                return Instant::now() < deadline;
            }
        }
        true
    }
}

enum Flow {
    Found,
    Exhausted,
    OutOfBudget,
}

fn place(host: &Host, pattern: &Pattern, state: &mut State, k: usize) -> Flow {
    if k == pattern.order.len() {
        return Flow::Found;
    }
    let u = pattern.order[k];
    let required: Vec<Mask> = pattern.adj[u]
        .iter()
        .filter(|&&w| pattern.pos[w] < k)
        .map(|&w| state.reach[w])
        .collect();
    let frontier = required
        .iter()
        .map(|&r| r & state.unused)
        .min_by_key(|&m| count(m))
        .unwrap_or(state.unused);
    let remaining_after = pattern.order.len() - k - 1;
    let free = count(state.unused);
    if frontier == 0 || free < remaining_after + 1 {
        return Flow::Exhausted;
    }
    let max_size = free - remaining_after;

    for size in 1..=max_size {
        let mut earlier: Mask = 0;
        for root in bits(frontier) {
            let allowed = state.unused & !earlier;
            earlier |= 1 << root;
            let comp = host.component(root, allowed);
            if count(comp) < size || required.iter().any(|&r| r & comp == 0) {
                continue;
            }
            let sets = ConnectedSets::new(&host.adj, comp, root, size);
            for set in sets {
                if !state.tick() {
                    return Flow::OutOfBudget;
                }
                if required.iter().any(|&r| r & set == 0)
                    || !host.takes_lowest_twins(set, state.unused)
                {
                    continue;
                }
                state.sets[u] = set;
                state.reach[u] = host.neighborhood(set);
                state.unused &= !set;
                if feasible(host, pattern, state, k + 1) {
                    match place(host, pattern, state, k + 1) {
                        Flow::Found => return Flow::Found,
                        Flow::OutOfBudget => return Flow::OutOfBudget,
                        Flow::Exhausted => {}
                    }
                }
                state.unused |= set;
                state.sets[u] = 0;
                state.reach[u] = 0;
            }
        }
    }
    Flow::Exhausted
}

/// Necessary conditions for completing a partial model whose first `k`
/// pattern vertices (in placement order) are placed.
fn feasible(host: &Host, pattern: &Pattern, state: &State, k: usize) -> bool {
    let n = pattern.order.len();
    if k == n {
        return true;
    }
    let unused = state.unused;
    if count(unused) < n - k {
        return false;
    }
    let placed = |v: usize| pattern.pos[v] < k;

    // host edges that can still witness pattern edges
    let used = host.all & !unused;
    let (mut inner, mut cross) = (0usize, 0usize);
    for v in bits(unused) {
        inner += count(host.adj[v] & unused);
        cross += count(host.adj[v] & used);
    }
    let needed = pattern
        .order
        .iter()
        .skip(k)
        .map(|&u| {
            pattern.adj[u]
                .iter()
                .filter(|&&w| placed(w) || pattern.pos[w] > pattern.pos[u])
                .count()
        })
        .sum::<usize>();
    if needed > inner / 2 + cross {
        return false;
    }

    let free_components = host.components(unused);
    let mut seen = vec![false; n];
    for &start in &pattern.order[k..] {
        if seen[start] {
            continue;
        }
        // a connected block of unplaced pattern vertices and the branch sets
        // it must touch
        let mut block = 0usize;
        let mut must_touch: Vec<Mask> = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            block += 1;
            for &w in &pattern.adj[x] {
                if placed(w) {
                    must_touch.push(state.reach[w]);
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let fits = free_components
            .iter()
            .any(|&c| count(c) >= block && must_touch.iter().all(|&r| r & c != 0));
        if !fits {
            return false;
        }
    }
    true
}

/// Connected subsets of `allowed` of exactly `size` vertices that contain
/// `root`, each produced once. Every step either adds or permanently
/// excludes the lowest-index boundary vertex.
struct ConnectedSets<'a> {
    adj: &'a [Mask],
    allowed: Mask,
    size: usize,
    stack: Vec<(Mask, Mask, Mask)>,
}

impl<'a> ConnectedSets<'a> {
    fn new(adj: &'a [Mask], allowed: Mask, root: usize, size: usize) -> Self {
        let set: Mask = 1 << root;
        let boundary = adj[root] & allowed & !set;
        ConnectedSets {
            adj,
            allowed,
            size,
            stack: vec![(set, boundary, 0)],
        }
    }
}

impl Iterator for ConnectedSets<'_> {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        while let Some((set, boundary, excluded)) = self.stack.pop() {
            if count(set) == self.size {
                return Some(set);
            }
            if boundary == 0 {
                continue;
            }
            let w = boundary.trailing_zeros() as usize;
            let bit: Mask = 1 << w;
            self.stack.push((set, boundary & !bit, excluded | bit));
            let grown = set | bit;
            let new_boundary =
                (boundary & !bit) | (self.adj[w] & self.allowed & !grown & !excluded);
            self.stack.push((grown, new_boundary, excluded));
        }
        None
    }
}
