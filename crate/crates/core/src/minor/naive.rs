//! Exhaustive minor test by enumerating partitions of the host's vertices.
//!
//! Only for checking [`super::find_minor`]; it shares no code with it.

use std::collections::VecDeque;

use super::MinorError;
use crate::graph::Graph;

pub const NAIVE_MAX_HOST: usize = 9;

/// Enumerates every assignment of host vertices to "unused" or to one of
/// exactly `|V(h)|` unlabelled blocks, keeps assignments whose blocks are all
/// connected, and tries every bijection from pattern vertices to blocks.
pub fn naive_minor(h: &Graph, g: &Graph) -> Result<bool, MinorError> {
    let n = g.vertex_count();
    if n > NAIVE_MAX_HOST {
        return Err(MinorError::NaiveTooLarge { n });
    }
    let k = h.vertex_count();
    if k == 0 {
        return Ok(true);
    }
    let mut block = vec![usize::MAX; n];
    Ok(assign(h, g, 0, 0, &mut block))
}

// block[v] == usize::MAX marks v as unused; blocks are numbered in order of
// first appearance so each partition is visited once.
fn assign(h: &Graph, g: &Graph, v: usize, used_blocks: usize, block: &mut [usize]) -> bool {
    let k = h.vertex_count();
    if v == block.len() {
        return used_blocks == k
            && blocks_connected(g, block, k)
            && some_bijection_works(h, g, block);
    }
    block[v] = usize::MAX;
    if assign(h, g, v + 1, used_blocks, block) {
        return true;
    }
    for b in 0..used_blocks {
        block[v] = b;
        if assign(h, g, v + 1, used_blocks, block) {
            return true;
        }
    }
    if used_blocks < k {
        block[v] = used_blocks;
        if assign(h, g, v + 1, used_blocks + 1, block) {
            return true;
        }
    }
    false
}

fn blocks_connected(g: &Graph, block: &[usize], k: usize) -> bool {
    (0..k).all(|b| {
        let members: Vec<usize> = (0..block.len()).filter(|&v| block[v] == b).collect();
        let mut seen = vec![false; block.len()];
        let mut queue = VecDeque::from([members[0]]);
        seen[members[0]] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if block[y] == b && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == members.len()
    })
}

fn some_bijection_works(h: &Graph, g: &Graph, block: &[usize]) -> bool {
    let k = h.vertex_count();
    let mut quotient = vec![vec![false; k]; k];
    for (x, y) in g.edges() {
        let (a, b) = (block[x], block[y]);
        if a != usize::MAX && b != usize::MAX && a != b {
            quotient[a][b] = true;
            quotient[b][a] = true;
        }
    }
    let h_edges: Vec<_> = h.edges().collect();
    let mut perm: Vec<usize> = (0..k).collect();
    permutations_any(&mut perm, 0, &mut |p| {
        h_edges.iter().all(|&(u, v)| quotient[p[u]][p[v]])
    })
}

fn permutations_any(perm: &mut [usize], i: usize, test: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if i == perm.len() {
        return test(perm);
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        if permutations_any(perm, i + 1, test) {
            return true;
        }
        perm.swap(i, j);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn single_edge_in_anything_with_an_edge() {
        let k2 = Graph::complete(2);
        assert!(naive_minor(&k2, &Graph::path(2)).unwrap());
        assert!(naive_minor(&k2, &Graph::cycle(7)).unwrap());
        assert!(!naive_minor(&k2, &Graph::empty(5)).unwrap());
    }

    #[test]
    fn triangle_not_in_trees() {
        let k3 = Graph::complete(3);
        assert!(!naive_minor(&k3, &Graph::path(7)).unwrap());
        assert!(!naive_minor(&k3, &star(8)).unwrap());
        assert!(naive_minor(&k3, &Graph::cycle(6)).unwrap());
    }

    #[test]
    fn k4_not_in_c5() {
        assert!(!naive_minor(&Graph::complete(4), &Graph::cycle(5)).unwrap());
        assert!(naive_minor(&Graph::complete(3), &Graph::cycle(5)).unwrap());
    }

    #[test]
    fn guard() {
        assert!(naive_minor(&Graph::complete(2), &Graph::empty(10)).is_err());
    }
}
