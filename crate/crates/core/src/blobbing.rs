//! Blobs, blobbings, projections of minor models onto the base of a blowup,
//! good pairs, and the tuple-counting function `g(d, t, n)`.
//!
//! A blob is a non-empty subset of `V(G0)`. A blobbing is an ordered
//! `t`-tuple of blobs whose sizes sum to at most `|V(G)| = d·r` and in which
//! every vertex of `G0` occurs at most `r` times.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{non_adjacent, BlowupGraph, Graph};
use crate::minor::MinorModel;
use crate::params::ConstructionParams;
use crate::randgen::SeededRng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlobError {
    #[error("blob {0} is empty")]
    EmptyBlob(usize),
    #[error("blob {blob} contains vertex {vertex}, base has {d} vertices")]
    VertexOutOfRange {
        blob: usize,
        vertex: usize,
        d: usize,
    },
    #[error("blob {blob} lists vertex {vertex} twice")]
    RepeatedVertex { blob: usize, vertex: usize },
    #[error("total blob size {total} exceeds capacity {capacity}")]
    OverCapacity { total: usize, capacity: usize },
    #[error("vertex {vertex} lies in {count} blobs, limit is {r}")]
    Multiplicity {
        vertex: usize,
        count: usize,
        r: usize,
    },
    #[error("branch set {set} contains host vertex {vertex} outside the blowup")]
    BranchOutOfRange { set: usize, vertex: usize },
    #[error("host vertex {vertex} lies in branch sets {first} and {second}")]
    BranchOverlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("enumeration work estimate {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: f64, budget: f64 },
    #[error("base graphs with more than 63 vertices cannot be enumerated")]
    BaseTooLarge,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blobbing {
    blobs: Vec<Vec<usize>>,
    d: usize,
    capacity: usize,
    r: usize,
}

impl Blobbing {
    /// Validates every blobbing invariant. Blobs are stored sorted.
    pub fn new(
        mut blobs: Vec<Vec<usize>>,
        d: usize,
        capacity: usize,
        r: usize,
    ) -> Result<Self, BlobError> {
        let mut multiplicity = vec![0usize; d];
        let mut total = 0;
        for (i, blob) in blobs.iter_mut().enumerate() {
            if blob.is_empty() {
                return Err(BlobError::EmptyBlob(i));
            }
            blob.sort_unstable();
            for (j, &x) in blob.iter().enumerate() {
                if x >= d {
                    return Err(BlobError::VertexOutOfRange {
                        blob: i,
                        vertex: x,
                        d,
                    });
                }
                if j > 0 && blob[j - 1] == x {
                    return Err(BlobError::RepeatedVertex { blob: i, vertex: x });
                }
                multiplicity[x] += 1;
            }
            total += blob.len();
        }
        if total > capacity {
            return Err(BlobError::OverCapacity { total, capacity });
        }
        if let Some((vertex, &count)) = multiplicity.iter().enumerate().find(|(_, &c)| c > r) {
            return Err(BlobError::Multiplicity { vertex, count, r });
        }
        Ok(Blobbing {
            blobs,
            d,
            capacity,
            r,
        })
    }

    pub fn blobs(&self) -> &[Vec<usize>] {
        &self.blobs
    }

    pub fn len(&self) -> usize {
        self.blobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blobs.is_empty()
    }

    pub fn base_order(&self) -> usize {
        self.d
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn max_multiplicity(&self) -> usize {
        self.r
    }

    pub fn total_size(&self) -> usize {
        self.blobs.iter().map(Vec::len).sum()
    }

    /// Same blobs in the order given by `perm` (blob `i` of the result is
    /// blob `perm[i]` of `self`).
    pub fn permuted(&self, perm: &[usize]) -> Blobbing {
        Blobbing {
            blobs: perm.iter().map(|&i| self.blobs[i].clone()).collect(),
            ..self.clone()
        }
    }

    /// `t` lines of space-separated base vertex ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for blob in &self.blobs {
            let ids: Vec<String> = blob.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str, d: usize, capacity: usize, r: usize) -> Result<Self, BlobError> {
        let blobs = text
            .lines()
            .enumerate()
            .map(|(i, line)| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>().map_err(|e| BlobError::Parse {
                            line: i + 1,
                            msg: e.to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Blobbing::new(blobs, d, capacity, r)
    }
}

/// `B_v = { x : X_v ∩ I_x ≠ ∅ }` for every branch set `X_v` of `model`.
///
/// The result is validated as a blobbing with capacity `|V(G)|` and
/// multiplicity bound `r`; an error here for a valid model would contradict
/// `Σ|B_v| ≤ Σ|X_v| ≤ |V(G)|` and the class sizes.
pub fn project(model: &MinorModel, host: &BlowupGraph) -> Result<Blobbing, BlobError> {
    let n = host.graph().vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut blobs = Vec::with_capacity(model.len());
    for (i, set) in model.branch_sets().iter().enumerate() {
        let mut blob = Vec::new();
        for &v in set {
            if v >= n {
                return Err(BlobError::BranchOutOfRange { set: i, vertex: v });
            }
            if let Some(j) = owner[v] {
                return Err(BlobError::BranchOverlap {
                    vertex: v,
                    first: j,
                    second: i,
                });
            }
            owner[v] = Some(i);
            blob.push(host.class_of(v));
        }
        blob.sort_unstable();
        blob.dedup();
        blobs.push(blob);
    }
    let d = host.base().vertex_count();
    let r = host.class_size();
    Blobbing::new(blobs, d, d * r, r)
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Whether two blobs are disjoint, non-adjacent ℓ-sets (size at most `⌊ell⌋`).
pub fn is_good_pair(g0: &Graph, a: &[usize], b: &[usize], ell: f64) -> bool {
    let cap = ell.floor();
    a.len() as f64 <= cap
        && b.len() as f64 <= cap
        && disjoint(a, b)
        && non_adjacent(g0, a, b).expect("blobs lie in the base graph")
}

/// Number of unordered good pairs among the blobs.
pub fn count_good_pairs(blobbing: &Blobbing, g0: &Graph, ell: f64) -> u64 {
    assert_eq!(blobbing.base_order(), g0.vertex_count());
    let blobs = blobbing.blobs();
    let mut count = 0;
    for i in 0..blobs.len() {
        for j in i + 1..blobs.len() {
            if is_good_pair(g0, &blobs[i], &blobs[j], ell) {
                count += 1;
            }
        }
    }
    count
}

/// True iff for every edge `ij` of `h` the blobs `B_i` and `B_j` intersect
/// or are joined by an edge of `g0`.
pub fn is_h_compatible(blobbing: &Blobbing, g0: &Graph, h: &Graph) -> bool {
    assert_eq!(h.vertex_count(), blobbing.len());
    let blobs = blobbing.blobs();
    h.edges().all(|(i, j)| {
        !disjoint(&blobs[i], &blobs[j])
            || !non_adjacent(g0, &blobs[i], &blobs[j]).expect("blobs lie in the base graph")
    })
}

/// Edges of `h` whose blobs form a good pair. Zero for every compatible
/// blobbing, whatever `ell`.
pub fn edges_on_good_pairs(blobbing: &Blobbing, g0: &Graph, h: &Graph, ell: f64) -> usize {
    let blobs = blobbing.blobs();
    h.edges()
        .filter(|&(i, j)| is_good_pair(g0, &blobs[i], &blobs[j], ell))
        .count()
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of `t`-tuples of non-empty subsets of a `d`-set with sizes summing
/// to at most `n`: `g(d,t,n) = Σ_{i=1..d} C(d,i) g(d,t-1,n-i)`, `g(d,0,n) = 1`.
pub fn g_count(d: u64, t: u64, n: u64) -> BigUint {
    if n < t {
        return BigUint::zero();
    }
    let n = n as usize;
    let choose: Vec<BigUint> = (0..=d).map(|i| binomial(d, i)).collect();
    // prev[m] = g(d, level, m)
    let mut prev = vec![BigUint::one(); n + 1];
    for _ in 0..t {
        let mut next = vec![BigUint::zero(); n + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            for i in 1..=(d as usize).min(m) {
                *slot += &choose[i] * &prev[m - i];
            }
        }
        prev = next;
    }
    prev.swap_remove(n)
}

/// `(4d)^n`.
pub fn blobbing_bound(d: u64, n: u64) -> BigUint {
    BigUint::from(4 * d).pow(n as u32)
}

/// Raw number of `t`-tuples of non-empty subsets, `(2^d - 1)^t`, as a float.
pub fn enumeration_work(d: usize, t: usize) -> f64 {
    ((d as f64).exp2() - 1.0).powi(t as i32)
}

fn check_enumerable(d: usize, t: usize, budget: f64) -> Result<(), BlobError> {
    if d > 63 {
        return Err(BlobError::BaseTooLarge);
    }
    let estimate = enumeration_work(d, t);
    if estimate > budget {
        return Err(BlobError::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

/// Calls `visit` on every blobbing, each given as `t` subset bitmasks, in
/// lexicographic order of (blob index, bitmask).
pub fn for_each_blobbing(
    d: usize,
    t: usize,
    capacity: usize,
    r: usize,
    budget: f64,
    mut visit: impl FnMut(&[u64]),
) -> Result<(), BlobError> {
    check_enumerable(d, t, budget)?;
    let mut tuple = vec![0u64; t];
    let mut multiplicity = vec![0usize; d];
    walk(d, capacity, r, 0, &mut tuple, &mut multiplicity, &mut visit);
    Ok(())
}

fn walk(
    d: usize,
    capacity_left: usize,
    r: usize,
    i: usize,
    tuple: &mut [u64],
    multiplicity: &mut [usize],
    visit: &mut impl FnMut(&[u64]),
) {
    if i == tuple.len() {
        visit(tuple);
        return;
    }
    let still_needed = tuple.len() - i - 1;
    for mask in 1u64..1 << d {
        let size = mask.count_ones() as usize;
        if size + still_needed > capacity_left {
            continue;
        }
        if (0..d).any(|x| mask >> x & 1 == 1 && multiplicity[x] == r) {
            continue;
        }
        for x in (0..d).filter(|&x| mask >> x & 1 == 1) {
            multiplicity[x] += 1;
        }
        tuple[i] = mask;
        walk(
            d,
            capacity_left - size,
            r,
            i + 1,
            tuple,
            multiplicity,
            visit,
        );
        for x in (0..d).filter(|&x| mask >> x & 1 == 1) {
            multiplicity[x] -= 1;
        }
    }
}

/// Exact number of blobbings, sharded over the choice of the first blob.
pub fn count_blobbings(
    d: usize,
    t: usize,
    capacity: usize,
    r: usize,
    budget: f64,
) -> Result<u64, BlobError> {
    check_enumerable(d, t, budget)?;
    if t == 0 {
        return Ok(1);
    }
    if r == 0 {
        return Ok(0);
    }
    let total = (1u64..1 << d)
        .into_par_iter()
        .map(|first| {
            let size = first.count_ones() as usize;
            if size + t - 1 > capacity {
                return 0;
            }
            let mut tuple = vec![0u64; t];
            tuple[0] = first;
            let mut multiplicity: Vec<usize> = (0..d).map(|x| (first >> x & 1) as usize).collect();
            let mut n = 0u64;
            walk(
                d,
                capacity - size,
                r,
                1,
                &mut tuple,
                &mut multiplicity,
                &mut |_| n += 1,
            );
            n
        })
        .sum();
    Ok(total)
}

/// `ε²/400 · d^{-α} · t²`, the number of good pairs every blobbing has once
/// `d` is large enough.
pub fn good_pair_threshold(params: &ConstructionParams) -> f64 {
    params.epsilon * params.epsilon / 400.0
        * (params.d as f64).powf(-params.alpha)
        * (params.t * params.t) as f64
}

/// Random blobbing: blob sizes uniform in what capacity still allows, vertices
/// uniform among those below multiplicity `r`.
pub fn sample_blobbing(
    d: usize,
    t: usize,
    capacity: usize,
    r: usize,
    max_blob: usize,
    rng: &mut SeededRng,
) -> Blobbing {
    assert!(t <= capacity && capacity <= d * r && max_blob >= 1);
    let mut multiplicity = vec![0usize; d];
    let mut left = capacity;
    let mut blobs = Vec::with_capacity(t);
    for i in 0..t {
        let upper = (left - (t - i - 1)).min(max_blob).min(d);
        let size = 1 + rng.index(upper);
        let mut open: Vec<usize> = (0..d).filter(|&x| multiplicity[x] < r).collect();
        let mut blob = Vec::with_capacity(size);
        while blob.len() < size && !open.is_empty() {
            let x = open.swap_remove(rng.index(open.len()));
            multiplicity[x] += 1;
            blob.push(x);
        }
        left -= blob.len();
        blobs.push(blob);
    }
    Blobbing::new(blobs, d, capacity, r).expect("sampler respects the blobbing invariants")
}

/// Smallest good-pair count seen against the asymptotic threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodPairDiagnostic {
    pub threshold: f64,
    pub samples: usize,
    pub min_good_pairs: u64,
    pub meets_threshold: bool,
    pub witness: Vec<Vec<usize>>,
}

/// Samples blobbings for the host of `params` over `g0` and reports the
/// smallest good-pair count found.
pub fn good_pair_diagnostic(
    g0: &Graph,
    params: &ConstructionParams,
    samples: usize,
    rng: &mut SeededRng,
) -> GoodPairDiagnostic {
    let d = params.d as usize;
    let t = params.t as usize;
    let r = params.r as usize;
    let capacity = d * r;
    let max_blob = params.set_size_cap().max(1) + 1;
    let threshold = good_pair_threshold(params);
    let mut best: Option<(u64, Blobbing)> = None;
    for _ in 0..samples {
        if t > capacity {
            break;
        }
        let b = sample_blobbing(d, t, capacity, r, max_blob, rng);
        let c = count_good_pairs(&b, g0, params.ell);
        if best.as_ref().is_none_or(|(m, _)| c < *m) {
            best = Some((c, b));
        }
    }
    let (min_good_pairs, witness) = match best {
        Some((c, b)) => (c, b.blobs),
        None => (0, Vec::new()),
    };
    GoodPairDiagnostic {
        threshold,
        samples,
        min_good_pairs,
        meets_threshold: min_good_pairs as f64 >= threshold,
        witness,
    }
}
