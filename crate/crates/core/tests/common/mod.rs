#![allow(dead_code)]

use std::collections::BTreeSet;

use extremal_minors::minor::MinorModel;
use extremal_minors::randgen::SeededRng;
use extremal_minors::Graph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One graph per isomorphism class on exactly `n` vertices, chosen as the
/// class member with the smallest edge bitmask.
pub fn catalogue(n: usize) -> Vec<Graph> {
    let ps = pairs(n);
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        ps.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    // relabel[perm][pair] = pair index after applying perm
    let relabel: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| ps.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = BTreeSet::new();
    for mask in 0u32..1 << ps.len() {
        let canon = relabel
            .iter()
            .map(|map| {
                (0..ps.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u32, |acc, i| acc | 1 << map[i])
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|mask| {
            let edges: Vec<_> = (0..ps.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| ps[i])
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// All graphs up to isomorphism on at most `max_n` vertices.
pub fn catalogue_up_to(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(catalogue).collect()
}

pub fn random_graph(n: usize, p: f64, rng: &mut SeededRng) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.bernoulli(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Brute-force count of `t`-tuples of non-empty subsets of a `d`-set with
/// total size at most `n`.
pub fn brute_force_tuples(d: usize, t: usize, n: usize) -> u64 {
    fn go(d: usize, left_t: usize, left_n: i64) -> u64 {
        if left_n < 0 {
            return 0;
        }
        if left_t == 0 {
            return 1;
        }
        (1u32..1 << d)
            .map(|m| go(d, left_t - 1, left_n - m.count_ones() as i64))
            .sum()
    }
    go(d, t, n as i64)
}

/// Smallest number of non-adjacent member pairs over every collection of
/// `s` pairwise disjoint non-empty sets of at most `cap` vertices, found by
/// labelling each vertex with 0 (unused) or a set number. Returns the number
/// of collections and the minimum, or `None` when no collection exists.
pub fn min_star_pairs(g: &Graph, cap: usize, s: usize) -> (u64, Option<u64>) {
    let n = g.vertex_count();
    let mut label = vec![0usize; n];
    let mut best: Option<u64> = None;
    let mut collections = 0;
    loop {
        let mut sets = vec![Vec::new(); s];
        for v in 0..n {
            if label[v] > 0 {
                sets[label[v] - 1].push(v);
            }
        }
        // each unordered collection once: sets non-empty, ordered by least vertex
        let valid = sets.iter().all(|x| !x.is_empty() && x.len() <= cap)
            && sets.windows(2).all(|w| w[0][0] < w[1][0]);
        if valid {
            collections += 1;
            let mut count = 0;
            for i in 0..s {
                for j in i + 1..s {
                    let adjacent = sets[i]
                        .iter()
                        .any(|&u| sets[j].iter().any(|&v| g.has_edge(u, v)));
                    if !adjacent {
                        count += 1;
                    }
                }
            }
            best = Some(best.map_or(count, |b: u64| b.min(count)));
        }
        // next labelling in base s+1
        let mut i = 0;
        loop {
            if i == n {
                return (collections, best);
            }
            label[i] += 1;
            if label[i] <= s {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

/// A minor model in `g` built by growing `k` disjoint connected sets from
/// random seeds, together with a random subset of the quotient
/// edges as pattern. `None` if fewer than `k` vertices are available.
pub fn random_model(g: &Graph, k: usize, rng: &mut SeededRng) -> Option<(Graph, MinorModel)> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.index(i + 1));
    }
    let mut owner = vec![usize::MAX; n];
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for &v in order.iter().take(k) {
        owner[v] = sets.len();
        sets.push(vec![v]);
    }
    // grow each set a few random steps
    for _ in 0..n {
        let i = rng.index(k);
        let frontier: Vec<usize> = sets[i]
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|&w| owner[w] == usize::MAX)
            .collect();
        if !frontier.is_empty() && rng.bernoulli(0.6) {
            let w = frontier[rng.index(frontier.len())];
            owner[w] = i;
            sets[i].push(w);
        }
    }
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let touch = sets[a]
                .iter()
                .any(|&u| g.neighbors(u).iter().any(|&w| owner[w] == b));
            if touch && rng.bernoulli(0.7) {
                edges.push((a, b));
            }
        }
    }
    let h = Graph::from_edges(k, &edges).unwrap();
    Some((h, MinorModel::new(sets)))
}
