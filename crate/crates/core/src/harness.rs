//! End-to-end pipeline: parameters, host construction, minor-probability
//! estimates, analytic bounds and self-contained experiment records.
//!
//! Seeds: the host is always built from `(seed.value, HOST_STREAM)`, so runs
//! that differ only in `stream_id` share a host. Trial `i` samples its `H`
//! from substream `i` of `(seed.value, seed.stream_id)`.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blobbing::{binomial, good_pair_threshold};
use crate::graph::{average_degree, blowup, BlowupGraph, Graph, GraphError};
use crate::minor::{find_minor_report, MinorError, MinorOutcome, SearchBudget, MAX_HOST_VERTICES};
use crate::params::{
    alpha_for, derive_params, target_average_degree, ConstructionParams, DegreeTargets,
    FiniteCheck, ParamsError,
};
use crate::randgen::{sample_h, SampleError, Seed};
use crate::verify::{
    construct_g0, EdgeCheck, G0Config, G0Construction, StarMode, StarVerdict, VerifyBudget,
    VerifyError,
};

pub const HOST_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error("host would have {n} vertices, minor search handles at most {max}")]
    HostTooLarge { n: u64, max: usize },
    #[error("good-pair count {q} exceeds C(t,2) = {pairs}")]
    TooManyGoodPairs { q: u64, pairs: u64 },
    #[error("edge count {m} exceeds C(t,2) = {pairs}")]
    TooManyEdges { m: u64, pairs: u64 },
    #[error("config line {line}: {msg}")]
    ConfigSyntax { line: usize, msg: String },
    #[error("config key `{0}` is not recognised")]
    UnknownKey(String),
    #[error("config is missing required field `{0}`")]
    MissingField(&'static str),
    #[error("config field `{key}` has invalid value `{value}`")]
    InvalidValue { key: String, value: String },
}

pub fn host_seed(seed: Seed) -> Seed {
    Seed::new(seed.value, HOST_STREAM)
}

pub fn trial_seed(seed: Seed, trial: u64) -> Seed {
    seed.substream(trial)
}

/// How the base graph is produced and checked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HostOptions {
    pub mode: StarMode,
    pub verify_budget: VerifyBudget,
    pub max_retries: usize,
}

impl Default for HostOptions {
    fn default() -> Self {
        HostOptions {
            mode: StarMode::Sampled,
            verify_budget: VerifyBudget::default(),
            max_retries: 100,
        }
    }
}

/// Measured host statistics next to the inequalities the construction relies
/// on. Failed checks are flagged, not raised.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HostReport {
    pub vertices: usize,
    pub edges: usize,
    pub class_size: usize,
    pub average_degree: f64,
    /// Exact average degree as `numerator/denominator`.
    pub average_degree_exact: String,
    pub base_edges: usize,
    pub vertex_count_matches: bool,
    pub capacity: FiniteCheck,
    pub degree: FiniteCheck,
    pub targets: DegreeTargets,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HostBuild {
    pub g0: G0Construction,
    pub host: BlowupGraph,
    pub report: HostReport,
}

/// `G = blowup(G0, r)` with `G0` from [`construct_g0`] on [`host_seed`].
pub fn build_host(
    params: &ConstructionParams,
    options: &HostOptions,
    seed: Seed,
) -> Result<HostBuild, HarnessError> {
    let mut config = G0Config::from_params(params, options.mode);
    config.budget = options.verify_budget;
    config.max_retries = options.max_retries;
    let g0 = construct_g0(&config, host_seed(seed))?;
    let host = blowup(&g0.graph, params.r as usize)?;
    let report = host_report(params, &host)?;
    Ok(HostBuild { g0, host, report })
}

pub fn host_report(
    params: &ConstructionParams,
    host: &BlowupGraph,
) -> Result<HostReport, HarnessError> {
    let g = host.graph();
    let avg = average_degree(g)?;
    let avg_f = *avg.numer() as f64 / *avg.denom() as f64;
    let targets = target_average_degree(params);
    let capacity_rhs = (1.0 - params.epsilon / 4.0) * params.ell * params.t as f64;
    let vertices = g.vertex_count();
    Ok(HostReport {
        vertices,
        edges: g.edge_count(),
        class_size: host.class_size(),
        average_degree: avg_f,
        average_degree_exact: format!("{}/{}", avg.numer(), avg.denom()),
        base_edges: host.base().edge_count(),
        vertex_count_matches: vertices as u64 == params.host_vertices(),
        capacity: FiniteCheck {
            name: "host_below_capacity".into(),
            lhs: vertices as f64,
            rhs: capacity_rhs,
            holds: (vertices as f64) < capacity_rhs,
        },
        degree: FiniteCheck {
            name: "average_degree_at_least_intermediate".into(),
            lhs: avg_f,
            rhs: targets.intermediate,
            holds: avg_f >= targets.intermediate,
        },
        targets,
    })
}

/// The chain `C(N-q, m)/C(N, m) ≤ (1-x)^m ≤ exp(-x m)` with `N = C(t,2)` and
/// `x = ε² d^{-α} / 200`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityBound {
    pub t: u64,
    pub m: u64,
    pub q: u64,
    /// `numerator/denominator`.
    pub exact_ratio: String,
    pub exact_ratio_value: f64,
    pub relaxed_value: f64,
    pub exp_bound: f64,
    /// `q ≥ x t² / 2`, the premise under which the chain is claimed.
    pub premise_holds: bool,
    pub ratio_below_relaxed: bool,
    pub relaxed_below_exp: bool,
}

impl CompatibilityBound {
    pub fn chain_holds(&self) -> bool {
        self.ratio_below_relaxed && self.relaxed_below_exp
    }
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratio_text(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Evaluates the compatibility chain exactly. `x` enters as the exact
/// rational value of its double-precision evaluation.
pub fn compatibility_probability_bound(
    epsilon: f64,
    d: u64,
    alpha: f64,
    t: u64,
    m: u64,
    q: u64,
) -> Result<CompatibilityBound, HarnessError> {
    let pairs = t * t.saturating_sub(1) / 2;
    if q > pairs {
        return Err(HarnessError::TooManyGoodPairs { q, pairs });
    }
    if m > pairs {
        return Err(HarnessError::TooManyEdges { m, pairs });
    }
    let x_f = epsilon * epsilon * (d as f64).powf(-alpha) / 200.0;
    let x = rational(x_f);
    let exact = BigRational::new(
        BigInt::from(binomial(pairs - q, m)),
        BigInt::from(binomial(pairs, m)),
    );
    let one = BigRational::one();
    let relaxed = num_traits::pow::pow(&one - &x, m as usize);
    let premise = big(q) * big(2) >= &x * big(t * t);
    // (1-x)^m ≤ e^{-xm} reduces to 1 - x ≤ e^{-x}; certify that factor with
    // the alternating-series lower bound 1 - x + x²/2 - x³/6 < e^{-x}.
    let x2 = &x * &x;
    let lower_exp = &one - &x + &x2 / big(2) - &x2 * &x / big(6);
    let relaxed_below_exp = &one - &x <= lower_exp;
    Ok(CompatibilityBound {
        t,
        m,
        q,
        exact_ratio: ratio_text(&exact),
        exact_ratio_value: exact.to_f64().unwrap_or(0.0),
        relaxed_value: (m as f64 * (-x_f).ln_1p()).exp(),
        exp_bound: (-x_f * m as f64).exp(),
        premise_holds: premise,
        ratio_below_relaxed: exact <= relaxed,
        relaxed_below_exp,
    })
}

/// Same chain at the parameters' own `t`, `m = ⌊td/2⌋` and the smallest
/// integer `q` meeting the good-pair threshold.
pub fn compatibility_at(params: &ConstructionParams) -> Result<CompatibilityBound, HarnessError> {
    let pairs = params.t * params.t.saturating_sub(1) / 2;
    let q = (good_pair_threshold(params).ceil() as u64).min(pairs);
    let m = params.h_edges().min(pairs - q);
    compatibility_probability_bound(params.epsilon, params.d, params.alpha, params.t, m, q)
}

/// `(4d)^{tℓ} exp(-ε² t d^{1-α} / 400)` against `c^t`, all in log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnionBound {
    pub log_bound: f64,
    /// `exp(log_bound)`, absent when it overflows a double. Never clipped.
    pub bound: Option<f64>,
    pub c: f64,
    pub log_c_pow_t: f64,
    pub below_c_pow_t: bool,
    pub below_one: bool,
}

pub fn union_bound_estimate(params: &ConstructionParams, c: f64) -> UnionBound {
    let t = params.t as f64;
    let d = params.d as f64;
    let eps = params.epsilon;
    let log_bound =
        t * params.ell * (4.0 * d).ln() - eps * eps * t * d.powf(1.0 - params.alpha) / 400.0;
    let log_c_pow_t = t * c.ln();
    UnionBound {
        log_bound,
        bound: Some(log_bound.exp()).filter(|b| b.is_finite()),
        c,
        log_c_pow_t,
        below_c_pow_t: log_bound < log_c_pow_t,
        below_one: log_bound < 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialKind {
    Model,
    NoMinor,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub index: u64,
    pub seed: Seed,
    /// FNV-1a of the sampled `H` in text form.
    pub h_fingerprint: u64,
    pub kind: TrialKind,
    pub branch_sets: Option<Vec<Vec<usize>>>,
    pub nodes: u64,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorEstimate {
    pub trials: u64,
    pub model: u64,
    pub no_minor: u64,
    pub inconclusive: u64,
    pub model_fraction: f64,
    pub no_minor_fraction: f64,
    pub inconclusive_fraction: f64,
    /// 95% Wilson interval on the model fraction, over all trials.
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub results: Vec<TrialResult>,
}

pub fn fingerprint(g: &Graph) -> u64 {
    g.to_text().bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n_f = n as f64;
    let p = successes as f64 / n_f;
    let denom = 1.0 + z * z / n_f;
    let centre = (p + z * z / (2.0 * n_f)) / denom;
    let half = z * (p * (1.0 - p) / n_f + z * z / (4.0 * n_f * n_f)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Runs `trials` independent `H ~ G(t, ⌊td/2⌋)` against a fixed host.
pub fn estimate_on_host(
    host: &Graph,
    t: usize,
    d: usize,
    trials: u64,
    seed: Seed,
    budget: SearchBudget,
) -> Result<MinorEstimate, HarnessError> {
    if host.vertex_count() > MAX_HOST_VERTICES {
        return Err(HarnessError::HostTooLarge {
            n: host.vertex_count() as u64,
            max: MAX_HOST_VERTICES,
        });
    }
    let results: Vec<TrialResult> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let h = sample_h(t, d, s)?;
            let report = find_minor_report(&h, host, budget)?;
            let (kind, branch_sets) = match report.outcome {
                MinorOutcome::Model(m) => (TrialKind::Model, Some(m.branch_sets().to_vec())),
                MinorOutcome::NoMinor => (TrialKind::NoMinor, None),
                MinorOutcome::Inconclusive { .. } => (TrialKind::Inconclusive, None),
            };
            Ok(TrialResult {
                index: i,
                seed: s,
                h_fingerprint: fingerprint(&h),
                kind,
                branch_sets,
                nodes: report.nodes,
                elapsed_secs: report.elapsed_secs,
            })
        })
        .collect::<Result<_, HarnessError>>()?;
    let count = |k| results.iter().filter(|r| r.kind == k).count() as u64;
    let (model, no_minor, inconclusive) = (
        count(TrialKind::Model),
        count(TrialKind::NoMinor),
        count(TrialKind::Inconclusive),
    );
    let frac = |c: u64| {
        if trials == 0 {
            0.0
        } else {
            c as f64 / trials as f64
        }
    };
    let (wilson_low, wilson_high) = wilson_interval(model, trials, 1.96);
    Ok(MinorEstimate {
        trials,
        model,
        no_minor,
        inconclusive,
        model_fraction: frac(model),
        no_minor_fraction: frac(no_minor),
        inconclusive_fraction: frac(inconclusive),
        wilson_low,
        wilson_high,
        results,
    })
}

/// Builds one host for `params` and estimates `P(H ⪯ G)` on it.
pub fn estimate_minor_probability(
    params: &ConstructionParams,
    options: &HostOptions,
    trials: u64,
    seed: Seed,
    budget: SearchBudget,
) -> Result<(HostBuild, MinorEstimate), HarnessError> {
    check_host_size(params)?;
    let built = build_host(params, options, seed)?;
    let estimate = estimate_on_host(
        built.host.graph(),
        params.t as usize,
        params.d as usize,
        trials,
        seed,
        budget,
    )?;
    Ok((built, estimate))
}

fn check_host_size(params: &ConstructionParams) -> Result<(), HarnessError> {
    if params.host_vertices() > MAX_HOST_VERTICES as u64 {
        return Err(HarnessError::HostTooLarge {
            n: params.host_vertices(),
            max: MAX_HOST_VERTICES,
        });
    }
    Ok(())
}

/// Flat experiment configuration, read from `key = value` lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub epsilon: f64,
    pub d: u64,
    pub t: u64,
    pub beta: Option<f64>,
    /// Free edge density; without it `p` is tied to the λ maximizer.
    pub p: Option<f64>,
    pub alpha: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub stream_id: u64,
    pub mode: StarMode,
    /// Node limit per trial.
    pub budget: u64,
    pub time_limit: Option<f64>,
    pub c: f64,
    pub max_retries: usize,
    /// Collections drawn when (⋆) is checked by sampling.
    pub samples: usize,
}

impl ExperimentConfig {
    pub fn new(epsilon: f64, d: u64, t: u64) -> Self {
        ExperimentConfig {
            epsilon,
            d,
            t,
            beta: None,
            p: None,
            alpha: None,
            trials: 50,
            seed: 0,
            stream_id: 0,
            mode: StarMode::Sampled,
            budget: 1_000_000,
            time_limit: None,
            c: 0.5,
            max_retries: 100,
            samples: 2000,
        }
    }

    /// Blank lines and lines starting with `#` are ignored. `epsilon`, `d`
    /// and `t` are required; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut fields = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(HarnessError::ConfigSyntax {
                    line: i + 1,
                    msg: "expected `key = value`".into(),
                });
            };
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if fields.insert(k.clone(), v).is_some() {
                return Err(HarnessError::ConfigSyntax {
                    line: i + 1,
                    msg: format!("duplicate key `{k}`"),
                });
            }
        }
        fn get<T: std::str::FromStr>(
            fields: &mut BTreeMap<String, String>,
            key: &str,
        ) -> Result<Option<T>, HarnessError> {
            match fields.remove(key) {
                None => Ok(None),
                Some(v) => v.parse().map(Some).map_err(|_| HarnessError::InvalidValue {
                    key: key.to_string(),
                    value: v,
                }),
            }
        }
        let epsilon = get(&mut fields, "epsilon")?.ok_or(HarnessError::MissingField("epsilon"))?;
        let d = get(&mut fields, "d")?.ok_or(HarnessError::MissingField("d"))?;
        let t = get(&mut fields, "t")?.ok_or(HarnessError::MissingField("t"))?;
        let mut cfg = ExperimentConfig::new(epsilon, d, t);
        cfg.beta = get(&mut fields, "beta")?;
        cfg.p = get(&mut fields, "p")?;
        cfg.alpha = get(&mut fields, "alpha")?;
        cfg.time_limit = get(&mut fields, "time_limit")?;
        macro_rules! optional {
            ($($key:ident),*) => {$(
                if let Some(v) = get(&mut fields, stringify!($key))? {
                    cfg.$key = v;
                }
            )*};
        }
        optional!(
            trials,
            seed,
            stream_id,
            mode,
            budget,
            c,
            max_retries,
            samples
        );
        if let Some(key) = fields.into_keys().next() {
            return Err(HarnessError::UnknownKey(key));
        }
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "epsilon = {}\nd = {}\nt = {}\n",
            self.epsilon, self.d, self.t
        );
        for (k, v) in [
            ("beta", self.beta),
            ("p", self.p),
            ("alpha", self.alpha),
            ("time_limit", self.time_limit),
        ] {
            if let Some(v) = v {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        let mode = match self.mode {
            StarMode::Exhaustive => "exhaustive",
            StarMode::Sampled => "sampled",
            StarMode::Adversarial => "adversarial",
        };
        out.push_str(&format!(
            "trials = {}\nseed = {}\nstream_id = {}\nmode = {mode}\nbudget = {}\nc = {}\nmax_retries = {}\nsamples = {}\n",
            self.trials, self.seed, self.stream_id, self.budget, self.c, self.max_retries, self.samples
        ));
        out
    }

    pub fn seed(&self) -> Seed {
        Seed::new(self.seed, self.stream_id)
    }

    pub fn params(&self) -> Result<ConstructionParams, ParamsError> {
        match self.p {
            Some(p) => ConstructionParams::for_density(
                self.epsilon,
                p,
                self.alpha.unwrap_or_else(|| alpha_for(self.epsilon)),
                self.beta,
                self.d,
                self.t,
            ),
            None => derive_params(self.epsilon, self.d, self.t, self.beta),
        }
    }

    pub fn host_options(&self) -> HostOptions {
        HostOptions {
            mode: self.mode,
            verify_budget: VerifyBudget {
                samples: self.samples,
                ..VerifyBudget::default()
            },
            max_retries: self.max_retries,
        }
    }

    pub fn search_budget(&self) -> SearchBudget {
        SearchBudget {
            node_limit: self.budget,
            time_limit: self.time_limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub value: u64,
    pub stream_id: u64,
    pub host_stream: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct G0Record {
    pub graph_text: String,
    pub attempt: usize,
    pub edge_check: EdgeCheck,
    pub verdict: StarVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub union_bound: UnionBound,
    pub compatibility: Option<CompatibilityBound>,
    pub degree_targets: DegreeTargets,
    pub diagnostics: Vec<FiniteCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageFailure {
    pub stage: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub seeds: SeedRecord,
    pub params: Option<ConstructionParams>,
    pub bounds: Option<BoundsRecord>,
    pub g0: Option<G0Record>,
    pub host: Option<HostReport>,
    pub estimate: Option<MinorEstimate>,
    pub failure: Option<StageFailure>,
    pub started_at: f64,
    pub finished_at: f64,
}

impl ExperimentRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }

    /// Copy with wall-clock fields zeroed, for replay comparison.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.started_at = 0.0;
        r.finished_at = 0.0;
        if let Some(e) = &mut r.estimate {
            for t in &mut e.results {
                t.elapsed_secs = 0.0;
            }
        }
        r
    }

    /// Base graph stored in the record.
    pub fn g0_graph(&self) -> Option<Result<Graph, GraphError>> {
        self.g0.as_ref().map(|g| Graph::from_text(&g.graph_text))
    }
}

fn now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0.0, |d| d.as_secs_f64())
}

/// Runs every stage in order. A failing stage is recorded in
/// [`ExperimentRecord::failure`] and later stages are skipped.
pub fn run_experiment(config: &ExperimentConfig) -> ExperimentRecord {
    let seed = config.seed();
    let mut record = ExperimentRecord {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        seeds: SeedRecord {
            value: seed.value,
            stream_id: seed.stream_id,
            host_stream: HOST_STREAM,
        },
        params: None,
        bounds: None,
        g0: None,
        host: None,
        estimate: None,
        failure: None,
        started_at: now(),
        finished_at: 0.0,
    };
    let fail = |record: &mut ExperimentRecord, stage: &str, err: HarnessError| {
        record.failure = Some(StageFailure {
            stage: stage.to_string(),
            message: err.to_string(),
        });
        record.finished_at = now();
    };
    let params = match config.params() {
        Ok(p) => p,
        Err(e) => {
            fail(&mut record, "params", e.into());
            return record;
        }
    };
    record.params = Some(params);
    record.bounds = Some(BoundsRecord {
        union_bound: union_bound_estimate(&params, config.c),
        compatibility: compatibility_at(&params).ok(),
        degree_targets: target_average_degree(&params),
        diagnostics: params.diagnostics(),
    });
    if let Err(e) = check_host_size(&params) {
        fail(&mut record, "build_host", e);
        return record;
    }
    let built = match build_host(&params, &config.host_options(), seed) {
        Ok(b) => b,
        Err(e) => {
            fail(&mut record, "build_host", e);
            return record;
        }
    };
    record.g0 = Some(G0Record {
        graph_text: built.g0.graph.to_text(),
        attempt: built.g0.attempt,
        edge_check: built.g0.edge_check.clone(),
        verdict: built.g0.verdict.clone(),
    });
    record.host = Some(built.report.clone());
    match estimate_on_host(
        built.host.graph(),
        params.t as usize,
        params.d as usize,
        config.trials,
        seed,
        config.search_budget(),
    ) {
        Ok(e) => record.estimate = Some(e),
        Err(e) => {
            fail(&mut record, "estimate", e);
            return record;
        }
    }
    record.finished_at = now();
    record
}

/// Re-runs the record's configuration.
pub fn replay(record: &ExperimentRecord) -> ExperimentRecord {
    run_experiment(&record.config)
}
