//! Property (⋆) of a base graph `G0`: for every collection `S` of `s`
//! pairwise disjoint ℓ-sets, more than `½ d^{-α} C(s,2)` pairs of members of
//! `S` are non-adjacent. Also the lower-tail Chernoff bound used for edge
//! counts, and the resampling loop that produces a usable `G0`.
//!
//! Only [`StarMode::Exhaustive`] proves (⋆). The sampled and adversarial
//! modes can only fail to find a violation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blobbing::binomial;
use crate::graph::Graph;
use crate::params::ConstructionParams;
use crate::randgen::{sample_gnp, Seed, SeededRng};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("exhaustive work estimate {estimate:.3e} exceeds budget {budget:.3e}")]
    BudgetExceeded { estimate: f64, budget: f64 },
    #[error("base graph has {got} vertices, expected {expected}")]
    WrongOrder { expected: usize, got: usize },
    #[error("base graphs above 63 vertices are not supported")]
    BaseTooLarge,
    #[error(transparent)]
    InvalidCollection(#[from] CollectionError),
    #[error("no acceptable base graph after {attempts} attempts")]
    RetriesExhausted {
        attempts: usize,
        best: Box<G0Candidate>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollectionError {
    #[error("set {0} is empty")]
    Empty(usize),
    #[error("set {set} has {size} vertices, cap is {cap}")]
    Oversized { set: usize, size: usize, cap: usize },
    #[error("vertex {vertex} lies in sets {first} and {second}")]
    Overlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
}

/// `exp(-δ² p n / 2)`, the bound on `P(X ≤ (1-δ) p n)` for
/// `X ~ Binomial(n, p)`.
pub fn chernoff_lower_tail(n: u64, p: f64, delta: f64) -> f64 {
    (-delta * delta / 2.0 * p * n as f64).exp()
}

/// Monte-Carlo frequency of the lower-tail event `X ≤ (1-δ) p n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub n: u64,
    pub p: f64,
    pub delta: f64,
    pub samples: u64,
    pub hits: u64,
    pub frequency: f64,
    pub std_error: f64,
    pub bound: f64,
}

impl TailEstimate {
    /// Frequency does not exceed the bound plus `k` standard errors.
    pub fn respects_bound(&self, k: f64) -> bool {
        self.frequency <= self.bound + k * self.std_error
    }
}

/// Sample `samples` binomials (sample `i` on substream `i` of `seed`).
pub fn empirical_lower_tail(n: u64, p: f64, delta: f64, samples: u64, seed: Seed) -> TailEstimate {
    let cut = (1.0 - delta) * p * n as f64;
    let hits: u64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed.substream(i).rng();
            let x = (0..n).filter(|_| rng.bernoulli(p)).count();
            u64::from(x as f64 <= cut)
        })
        .sum();
    let frequency = hits as f64 / samples as f64;
    let bound = chernoff_lower_tail(n, p, delta);
    TailEstimate {
        n,
        p,
        delta,
        samples,
        hits,
        frequency,
        // binomial standard error at the bound, the largest admissible rate
        std_error: (bound.min(1.0) * (1.0 - bound.min(1.0)) / samples as f64).sqrt(),
        bound,
    }
}

/// The quantities that define property (⋆) for one base graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarProperty {
    pub d: usize,
    /// Largest size of an ℓ-set, `⌊ℓ⌋`.
    pub set_size_cap: usize,
    pub s: usize,
    pub alpha: f64,
}

impl StarProperty {
    pub fn from_params(params: &ConstructionParams) -> Self {
        StarProperty {
            d: params.d as usize,
            set_size_cap: params.set_size_cap(),
            s: params.s as usize,
            alpha: params.alpha,
        }
    }

    /// `½ · C(s,2) · d^{-α}` with `d^{-α}` taken as the exact rational value
    /// of its double-precision evaluation.
    pub fn threshold(&self) -> BigRational {
        let decay =
            BigRational::from_float((self.d as f64).powf(-self.alpha)).expect("d^-alpha is finite");
        let pairs = BigInt::from(binomial(self.s as u64, 2));
        decay * BigRational::from_integer(pairs) / BigRational::from_integer(BigInt::from(2))
    }

    /// Strictly more than the threshold, compared exactly.
    pub fn count_passes(&self, count: u64) -> bool {
        BigRational::from_integer(BigInt::from(count)) > self.threshold()
    }
}

/// Number of non-adjacent pairs among the members of `sets`, which must be
/// pairwise disjoint non-empty sets of at most `cap` vertices.
pub fn star_pair_count(
    sets: &[Vec<usize>],
    g0: &Graph,
    cap: usize,
) -> Result<u64, CollectionError> {
    let n = g0.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (i, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(CollectionError::Empty(i));
        }
        if set.len() > cap {
            return Err(CollectionError::Oversized {
                set: i,
                size: set.len(),
                cap,
            });
        }
        for &v in set {
            if v >= n {
                return Err(CollectionError::OutOfRange { vertex: v, n });
            }
            if owner[v] != usize::MAX {
                return Err(CollectionError::Overlap {
                    vertex: v,
                    first: owner[v],
                    second: i,
                });
            }
            owner[v] = i;
        }
    }
    let mut count = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let joined = sets[i]
                .iter()
                .any(|&u| g0.neighbors(u).iter().any(|&w| owner[w] == j));
            if !joined {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarMode {
    Exhaustive,
    Sampled,
    Adversarial,
}

impl std::str::FromStr for StarMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(StarMode::Exhaustive),
            "sampled" => Ok(StarMode::Sampled),
            "adversarial" => Ok(StarMode::Adversarial),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyBudget {
    /// Cap on the number of collections exhaustive mode may visit.
    pub max_work: f64,
    /// Collections drawn in sampled mode.
    pub samples: usize,
    /// Rejection attempts per drawn collection.
    pub max_attempts: usize,
    /// Local-search restarts in adversarial mode.
    pub restarts: usize,
    /// Moves per restart in adversarial mode.
    pub steps: usize,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            max_work: 1e8,
            samples: 2000,
            max_attempts: 10_000,
            restarts: 200,
            steps: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub sets: Vec<Vec<usize>>,
    pub non_adjacent_pairs: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarVerdict {
    pub mode: StarMode,
    pub passed: bool,
    /// No collection of `s` disjoint ℓ-sets exists, so (⋆) holds trivially.
    pub vacuous: bool,
    /// Exact threshold as `numerator/denominator`.
    pub threshold: String,
    pub threshold_value: f64,
    /// Collection with the fewest non-adjacent pairs found.
    pub witness: Option<StarWitness>,
    /// Collections evaluated.
    pub evaluated: u64,
    /// Draws abandoned after exhausting rejection attempts.
    pub failed_draws: u64,
    pub seed: Option<Seed>,
    pub property: StarProperty,
}

impl StarVerdict {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

fn ell_sets(d: usize, cap: usize) -> Vec<u64> {
    (1u64..1 << d)
        .filter(|m| (m.count_ones() as usize) <= cap)
        .collect()
}

fn mask_to_set(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

/// Checks (⋆) for `g0` in the requested mode.
pub fn verify_star(
    g0: &Graph,
    property: &StarProperty,
    mode: StarMode,
    seed: Seed,
    budget: &VerifyBudget,
) -> Result<StarVerdict, VerifyError> {
    if g0.vertex_count() != property.d {
        return Err(VerifyError::WrongOrder {
            expected: property.d,
            got: g0.vertex_count(),
        });
    }
    if property.d > 63 {
        return Err(VerifyError::BaseTooLarge);
    }
    let table = SetTable::new(g0, property.set_size_cap);
    let exists = property.s <= property.d && !table.sets.is_empty();
    let (witness, evaluated, failed_draws) = if !exists {
        (None, 0, 0)
    } else {
        match mode {
            StarMode::Exhaustive => exhaustive(&table, property.s, budget)?,
            StarMode::Sampled => sampled(&table, property.s, seed, budget),
            StarMode::Adversarial => adversarial(&table, property, seed, budget),
        }
    };
    let vacuous = !exists || (mode == StarMode::Exhaustive && witness.is_none());
    let passed = witness
        .as_ref()
        .is_none_or(|w| property.count_passes(w.non_adjacent_pairs));
    let threshold = property.threshold();
    Ok(StarVerdict {
        mode,
        passed,
        vacuous,
        threshold: format!("{}/{}", threshold.numer(), threshold.denom()),
        threshold_value: threshold.to_f64().unwrap_or(f64::NAN),
        witness,
        evaluated,
        failed_draws,
        seed: (mode != StarMode::Exhaustive).then_some(seed),
        property: *property,
    })
}

/// All ℓ-sets of `g0` as bitmasks with their closed neighbourhoods.
struct SetTable {
    sets: Vec<u64>,
    reach: Vec<u64>,
    d: usize,
}

impl SetTable {
    fn new(g0: &Graph, cap: usize) -> Self {
        let adj = g0.to_bitmasks();
        let sets = ell_sets(g0.vertex_count(), cap);
        let reach = sets
            .iter()
            .map(|&m| mask_to_set(m).iter().fold(0, |acc, &v| acc | adj[v]))
            .collect();
        SetTable {
            sets,
            reach,
            d: g0.vertex_count(),
        }
    }

    fn non_adjacent(&self, i: usize, j: usize) -> bool {
        self.reach[i] & self.sets[j] == 0
    }

    fn count(&self, chosen: &[usize]) -> u64 {
        let mut c = 0;
        for a in 0..chosen.len() {
            for b in a + 1..chosen.len() {
                if self.non_adjacent(chosen[a], chosen[b]) {
                    c += 1;
                }
            }
        }
        c
    }

    fn witness(&self, chosen: &[usize]) -> StarWitness {
        StarWitness {
            sets: chosen.iter().map(|&i| mask_to_set(self.sets[i])).collect(),
            non_adjacent_pairs: self.count(chosen),
        }
    }

    /// Uniform collection of `s` disjoint sets by whole-tuple rejection.
    fn draw(&self, s: usize, rng: &mut SeededRng, attempts: usize) -> Option<Vec<usize>> {
        'attempt: for _ in 0..attempts {
            let mut used = 0u64;
            let mut chosen = Vec::with_capacity(s);
            for _ in 0..s {
                let i = rng.index(self.sets.len());
                if self.sets[i] & used != 0 {
                    continue 'attempt;
                }
                used |= self.sets[i];
                chosen.push(i);
            }
            return Some(chosen);
        }
        None
    }
}

type SearchResult = (Option<StarWitness>, u64, u64);

fn exhaustive(
    table: &SetTable,
    s: usize,
    budget: &VerifyBudget,
) -> Result<SearchResult, VerifyError> {
    let estimate = binomial(table.sets.len() as u64, s as u64)
        .to_f64()
        .unwrap_or(f64::INFINITY);
    if estimate > budget.max_work {
        return Err(VerifyError::BudgetExceeded {
            estimate,
            budget: budget.max_work,
        });
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut evaluated = 0u64;
    let mut chosen = Vec::with_capacity(s);
    exhaustive_walk(table, s, 0, 0, 0, &mut chosen, &mut best, &mut evaluated);
    Ok((best.map(|(_, c)| table.witness(&c)), evaluated, 0))
}

#[allow(clippy::too_many_arguments)]
fn exhaustive_walk(
    table: &SetTable,
    s: usize,
    start: usize,
    used: u64,
    partial: u64,
    chosen: &mut Vec<usize>,
    best: &mut Option<(u64, Vec<usize>)>,
    evaluated: &mut u64,
) {
    if chosen.len() == s {
        *evaluated += 1;
        if best.as_ref().is_none_or(|(c, _)| partial < *c) {
            *best = Some((partial, chosen.clone()));
        }
        return;
    }
    for i in start..table.sets.len() {
        if table.sets[i] & used != 0 {
            continue;
        }
        let added = chosen.iter().filter(|&&j| table.non_adjacent(i, j)).count() as u64;
        chosen.push(i);
        exhaustive_walk(
            table,
            s,
            i + 1,
            used | table.sets[i],
            partial + added,
            chosen,
            best,
            evaluated,
        );
        chosen.pop();
    }
}

fn sampled(table: &SetTable, s: usize, seed: Seed, budget: &VerifyBudget) -> SearchResult {
    let draws: Vec<Option<(u64, usize, Vec<usize>)>> = (0..budget.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed.substream(i as u64).rng();
            table
                .draw(s, &mut rng, budget.max_attempts)
                .map(|c| (table.count(&c), i, c))
        })
        .collect();
    let failed = draws.iter().filter(|d| d.is_none()).count() as u64;
    let evaluated = budget.samples as u64 - failed;
    let best = draws.into_iter().flatten().min_by_key(|(c, i, _)| (*c, *i));
    (best.map(|(_, _, c)| table.witness(&c)), evaluated, failed)
}

fn adversarial(
    table: &SetTable,
    property: &StarProperty,
    seed: Seed,
    budget: &VerifyBudget,
) -> SearchResult {
    let s = property.s;
    let runs: Vec<Option<(u64, usize, Vec<usize>, u64)>> = (0..budget.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = seed.substream(restart as u64).rng();
            let mut current = table.draw(s, &mut rng, budget.max_attempts)?;
            let mut score = table.count(&current);
            let mut evaluated = 1u64;
            for _ in 0..budget.steps {
                if score == 0 {
                    break;
                }
                let Some(candidate) = local_move(table, &current, &mut rng) else {
                    continue;
                };
                evaluated += 1;
                let c = table.count(&candidate);
                if c <= score {
                    current = candidate;
                    score = c;
                }
            }
            Some((score, restart, current, evaluated))
        })
        .collect();
    let failed = runs.iter().filter(|r| r.is_none()).count() as u64;
    let evaluated = runs.iter().flatten().map(|r| r.3).sum();
    let best = runs.into_iter().flatten().min_by_key(|r| (r.0, r.1));
    (best.map(|r| table.witness(&r.2)), evaluated, failed)
}

/// Replace one member with a random disjoint ℓ-set, or swap one vertex of a
/// member for a vertex outside the collection.
fn local_move(table: &SetTable, current: &[usize], rng: &mut SeededRng) -> Option<Vec<usize>> {
    let j = rng.index(current.len());
    let others = current
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .fold(0u64, |m, (_, &i)| m | table.sets[i]);
    let replacement = if rng.index(2) == 0 {
        let mut pick = None;
        for _ in 0..64 {
            let i = rng.index(table.sets.len());
            if table.sets[i] & others == 0 {
                pick = Some(table.sets[i]);
                break;
            }
        }
        pick?
    } else {
        let all = if table.d == 64 {
            u64::MAX
        } else {
            (1u64 << table.d) - 1
        };
        let free = all & !others & !table.sets[current[j]];
        if free == 0 {
            return None;
        }
        let member = mask_to_set(table.sets[current[j]]);
        let out = member[rng.index(member.len())];
        let pool = mask_to_set(free);
        let inn = pool[rng.index(pool.len())];
        table.sets[current[j]] & !(1 << out) | 1 << inn
    };
    let idx = table.sets.binary_search(&replacement).ok()?;
    let mut next = current.to_vec();
    next[j] = idx;
    Some(next)
}

/// How a base graph candidate is produced and accepted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct G0Config {
    pub d: usize,
    pub p: f64,
    pub epsilon: f64,
    pub star: StarProperty,
    pub mode: StarMode,
    pub budget: VerifyBudget,
    pub max_retries: usize,
}

impl G0Config {
    pub fn from_params(params: &ConstructionParams, mode: StarMode) -> Self {
        G0Config {
            d: params.d as usize,
            p: params.p,
            epsilon: params.epsilon,
            star: StarProperty::from_params(params),
            mode,
            budget: VerifyBudget::default(),
            max_retries: 100,
        }
    }

    /// `(½ - ε/4) · p · d²`; accepted graphs have strictly more edges.
    pub fn edge_threshold(&self) -> f64 {
        (0.5 - self.epsilon / 4.0) * self.p * (self.d * self.d) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCheck {
    pub edges: usize,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct G0Candidate {
    pub graph_text: String,
    pub attempt: usize,
    pub edge_check: EdgeCheck,
    pub verdict: StarVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct G0Construction {
    pub graph: Graph,
    pub verdict: StarVerdict,
    pub edge_check: EdgeCheck,
    /// Zero-based index of the accepted attempt.
    pub attempt: usize,
}

/// Resamples `G(d, p)` until the edge count exceeds the threshold and (⋆)
/// passes in the configured mode. Attempt `k` samples the graph on substream
/// `2k` and verifies on substream `2k + 1` of `seed`.
pub fn construct_g0(config: &G0Config, seed: Seed) -> Result<G0Construction, VerifyError> {
    let mut best: Option<G0Candidate> = None;
    let rank = |c: &G0Candidate| {
        (
            c.edge_check.passed,
            c.verdict.passed,
            c.verdict
                .witness
                .as_ref()
                .map_or(u64::MAX, |w| w.non_adjacent_pairs),
        )
    };
    for attempt in 0..config.max_retries.max(1) {
        let graph = sample_gnp(config.d, config.p, seed.substream(2 * attempt as u64));
        let edges = graph.edge_count();
        let threshold = config.edge_threshold();
        let edge_check = EdgeCheck {
            edges,
            threshold,
            passed: edges as f64 > threshold,
        };
        let verdict = verify_star(
            &graph,
            &config.star,
            config.mode,
            seed.substream(2 * attempt as u64 + 1),
            &config.budget,
        )?;
        if edge_check.passed && verdict.passed {
            return Ok(G0Construction {
                graph,
                verdict,
                edge_check,
                attempt,
            });
        }
        let candidate = G0Candidate {
            graph_text: graph.to_text(),
            attempt,
            edge_check,
            verdict,
        };
        if best.as_ref().is_none_or(|b| rank(&candidate) > rank(b)) {
            best = Some(candidate);
        }
    }
    Err(VerifyError::RetriesExhausted {
        attempts: config.max_retries.max(1),
        best: Box::new(best.expect("at least one attempt")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::sample_gnp;

    fn prop(d: usize, cap: usize, s: usize, alpha: f64) -> StarProperty {
        StarProperty {
            d,
            set_size_cap: cap,
            s,
            alpha,
        }
    }

    #[test]
    fn chernoff_examples() {
        assert!((chernoff_lower_tail(100, 0.5, 1e-9) - 1.0).abs() < 1e-12);
        assert!((chernoff_lower_tail(100, 0.5, 0.2) - 0.367_879_441_171_442_3).abs() < 1e-15);
    }

    #[test]
    fn empirical_tail_below_bound() {
        let est = empirical_lower_tail(100, 0.5, 0.2, 100_000, Seed::new(11, 0));
        assert!(est.respects_bound(3.0), "{est:?}");
        // P(Bin(100, ½) ≤ 40) ≈ 0.0284
        assert!((est.frequency - 0.0284).abs() < 0.003);
    }

    #[test]
    fn pair_count_examples() {
        let sets = vec![vec![0], vec![1, 2], vec![3]];
        assert_eq!(star_pair_count(&sets, &Graph::empty(4), 2).unwrap(), 3);
        assert_eq!(star_pair_count(&sets, &Graph::complete(4), 2).unwrap(), 0);
        assert_eq!(
            star_pair_count(&[vec![0], vec![2]], &Graph::cycle(4), 1).unwrap(),
            1
        );
        assert!(matches!(
            star_pair_count(&[vec![0, 1], vec![1]], &Graph::empty(4), 2),
            Err(CollectionError::Overlap { vertex: 1, .. })
        ));
        assert!(matches!(
            star_pair_count(&[vec![0, 1, 2]], &Graph::empty(4), 2),
            Err(CollectionError::Oversized { .. })
        ));
    }

    #[test]
    fn empty_graph_passes_every_mode() {
        let p = prop(6, 2, 3, 0.5);
        for mode in [
            StarMode::Exhaustive,
            StarMode::Sampled,
            StarMode::Adversarial,
        ] {
            let v = verify_star(
                &Graph::empty(6),
                &p,
                mode,
                Seed::new(1, 0),
                &VerifyBudget::default(),
            )
            .unwrap();
            assert!(v.passed, "{mode:?}");
            assert_eq!(v.witness.unwrap().non_adjacent_pairs, 3);
        }
    }

    #[test]
    fn complete_graph_fails_every_mode() {
        let p = prop(6, 2, 3, 0.5);
        for mode in [
            StarMode::Exhaustive,
            StarMode::Sampled,
            StarMode::Adversarial,
        ] {
            let v = verify_star(
                &Graph::complete(6),
                &p,
                mode,
                Seed::new(1, 0),
                &VerifyBudget::default(),
            )
            .unwrap();
            assert!(!v.passed);
            let w = v.witness.unwrap();
            assert_eq!(w.non_adjacent_pairs, 0);
            assert_eq!(star_pair_count(&w.sets, &Graph::complete(6), 2).unwrap(), 0);
        }
    }

    #[test]
    fn vacuous_when_no_sets() {
        let v = verify_star(
            &Graph::complete(4),
            &prop(4, 0, 2, 0.5),
            StarMode::Sampled,
            Seed::new(0, 0),
            &VerifyBudget::default(),
        )
        .unwrap();
        assert!(v.passed && v.vacuous && v.witness.is_none());
    }

    #[test]
    fn exact_threshold_comparison() {
        // d^{-α} = 1 when α is tiny relative to rounding? use d = 1: exactly 1
        let p = prop(1, 1, 4, 0.5);
        // threshold = ½ · 6 · 1 = 3; strictly more than 3 needed
        assert!(!p.count_passes(3));
        assert!(p.count_passes(4));
        assert_eq!(p.threshold(), BigRational::from_integer(BigInt::from(3)));
    }

    #[test]
    fn exhaustive_budget_guard() {
        let g = Graph::empty(16);
        let budget = VerifyBudget {
            max_work: 10.0,
            ..VerifyBudget::default()
        };
        assert!(matches!(
            verify_star(
                &g,
                &prop(16, 2, 4, 0.5),
                StarMode::Exhaustive,
                Seed::new(0, 0),
                &budget
            ),
            Err(VerifyError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sampled_verdict_golden_record() {
        let g0 = sample_gnp(16, 0.5, Seed::new(16, 0));
        let property = prop(16, 2, 4, 4.0 / 9.0);
        let run = || {
            verify_star(
                &g0,
                &property,
                StarMode::Sampled,
                Seed::new(16, 1),
                &VerifyBudget::default(),
            )
            .unwrap()
            .to_json_line()
        };
        let first = run();
        assert_eq!(first, run());
        let v: StarVerdict = serde_json::from_str(&first).unwrap();
        assert_eq!(v.evaluated, 2000);
        assert_eq!(
            (v.passed, v.witness.as_ref().map(|w| w.non_adjacent_pairs)),
            GOLDEN_SAMPLED
        );
    }

    const GOLDEN_SAMPLED: (bool, Option<u64>) = (false, Some(0));

    #[test]
    fn edge_threshold_reference() {
        let cfg = G0Config {
            d: 16,
            p: 0.71532,
            epsilon: 0.5,
            star: prop(16, 1, 2, 0.5),
            mode: StarMode::Sampled,
            budget: VerifyBudget::default(),
            max_retries: 1,
        };
        assert!((cfg.edge_threshold() - 68.670_72).abs() < 1e-9);
    }

    #[test]
    fn certain_edges_report_star_failure() {
        let cfg = G0Config {
            d: 4,
            p: 1.0,
            epsilon: 0.5,
            star: prop(4, 1, 2, 0.5),
            mode: StarMode::Exhaustive,
            budget: VerifyBudget::default(),
            max_retries: 3,
        };
        match construct_g0(&cfg, Seed::new(0, 0)) {
            Err(VerifyError::RetriesExhausted { attempts: 3, best }) => {
                // 6 edges do not exceed (½ - ε/4)·1·16 = 6
                assert!(!best.edge_check.passed);
                assert_eq!(best.edge_check.edges, 6);
                assert!(!best.verdict.passed);
                assert_eq!(
                    Graph::from_text(&best.graph_text).unwrap(),
                    Graph::complete(4)
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn construct_reproducible() {
        let params = crate::params::derive_params(0.5, 16, 17, None).unwrap();
        let mut cfg = G0Config::from_params(&params, StarMode::Sampled);
        cfg.max_retries = 50;
        let a = construct_g0(&cfg, Seed::new(42, 0)).unwrap();
        let b = construct_g0(&cfg, Seed::new(42, 0)).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.attempt, b.attempt);
        assert_eq!(a.attempt, GOLDEN_ATTEMPT);
        assert!(a.edge_check.edges as f64 > 68.67);
    }

    const GOLDEN_ATTEMPT: usize = 0;
}
