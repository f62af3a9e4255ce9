//! The constant `λ = max_{x>0} (1 - e^{-x}) / √x`, its maximizer, and the
//! parameter tuple of the blowup construction.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    Epsilon(f64),
    #[error("edge probability must lie in (0, 1), got {0}")]
    Probability(f64),
    #[error("alpha must lie in (0, 1), got {0}")]
    Alpha(f64),
    #[error("beta must lie in (alpha, 1) = ({alpha}, 1), got {beta}")]
    Beta { beta: f64, alpha: f64 },
    #[error("d must be at least 2 (ln 1 = 0 makes the set size zero), got {0}")]
    Degree(u64),
    #[error("t must be at least d + 1 = {}, got {t}", d + 1)]
    TooFewVertices { t: u64, d: u64 },
}

const BISECTION_STEPS: usize = 60;

/// `(1 - e^{-x}) / √x`.
pub fn lambda_objective(x: f64) -> f64 {
    -(-x).exp_m1() / x.sqrt()
}

/// Stationarity condition of [`lambda_objective`]: its derivative vanishes
/// exactly where `e^x = 2x + 1`.
pub fn stationarity_residual(x: f64) -> f64 {
    x.exp_m1() - 2.0 * x
}

/// Returns `(x*, λ)`: the positive root of `e^x = 2x + 1` found by bisection
/// on `[1e-3, 10]`, and the objective value there.
pub fn lambda_constant() -> (f64, f64) {
    static CACHE: OnceLock<(f64, f64)> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let (mut lo, mut hi) = (1e-3_f64, 10.0_f64);
        debug_assert!(stationarity_residual(lo) < 0.0 && stationarity_residual(hi) > 0.0);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if stationarity_residual(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = 0.5 * (lo + hi);
        (x, lambda_objective(x))
    })
}

/// `ℓ = √(α · log_b d)` with `b = 1 / (1 - p)`.
pub fn ell_for(alpha: f64, p: f64, d: u64) -> f64 {
    (alpha * (d as f64).ln() / -(-p).ln_1p()).sqrt()
}

/// `r = ⌈(1 - ε/2) · t · ℓ / d⌉`.
pub fn class_size(epsilon: f64, t: u64, ell: f64, d: u64) -> u64 {
    ((1.0 - epsilon / 2.0) * t as f64 * ell / d as f64).ceil() as u64
}

/// `α = ((1 - ε) / (1 - ε/2))²`.
pub fn alpha_for(epsilon: f64) -> f64 {
    let q = (1.0 - epsilon) / (1.0 - epsilon / 2.0);
    q * q
}

/// Every parameter of the host construction.
///
/// `x_star` always equals `ln b`; for the headline construction it is the
/// maximizer from [`lambda_constant`], and for an arbitrary edge density
/// built with [`ConstructionParams::for_density`] it is `-ln(1 - p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub epsilon: f64,
    pub x_star: f64,
    pub b: f64,
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
    pub d: u64,
    pub t: u64,
    pub ell: f64,
    pub s: u64,
    pub r: u64,
}

/// Parameters with `p = 1 - e^{-x*}` and `α = ((1-ε)/(1-ε/2))²`.
/// `beta` defaults to the midpoint `(α + 1) / 2`.
pub fn derive_params(
    epsilon: f64,
    d: u64,
    t: u64,
    beta: Option<f64>,
) -> Result<ConstructionParams, ParamsError> {
    check_epsilon(epsilon)?;
    let (x_star, _) = lambda_constant();
    let p = -(-x_star).exp_m1();
    build(epsilon, x_star, p, alpha_for(epsilon), beta, d, t)
}

impl ConstructionParams {
    /// Same construction with a free edge density `p` and exponent `alpha`.
    pub fn for_density(
        epsilon: f64,
        p: f64,
        alpha: f64,
        beta: Option<f64>,
        d: u64,
        t: u64,
    ) -> Result<ConstructionParams, ParamsError> {
        check_epsilon(epsilon)?;
        if !(p > 0.0 && p < 1.0) {
            return Err(ParamsError::Probability(p));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(ParamsError::Alpha(alpha));
        }
        build(epsilon, -(-p).ln_1p(), p, alpha, beta, d, t)
    }

    /// Largest admissible size of an ℓ-set.
    pub fn set_size_cap(&self) -> usize {
        self.ell.floor() as usize
    }

    /// `|V(G)| = d · r`.
    pub fn host_vertices(&self) -> u64 {
        self.d * self.r
    }

    /// `⌊t·d/2⌋` edges of the random graph to be tested as a minor.
    pub fn h_edges(&self) -> u64 {
        self.t * self.d / 2
    }

    /// Flat `key=value` record, floats with 12 significant digits.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        for (key, val) in [
            ("epsilon", fmt_sig(self.epsilon)),
            ("x_star", fmt_sig(self.x_star)),
            ("b", fmt_sig(self.b)),
            ("p", fmt_sig(self.p)),
            ("alpha", fmt_sig(self.alpha)),
            ("beta", fmt_sig(self.beta)),
            ("d", self.d.to_string()),
            ("t", self.t.to_string()),
            ("ell", fmt_sig(self.ell)),
            ("s", self.s.to_string()),
            ("r", self.r.to_string()),
        ] {
            out.push_str(key);
            out.push('=');
            out.push_str(&val);
            out.push('\n');
        }
        out
    }

    /// Finite-`d` instances of the inequalities that the asymptotic argument
    /// assumes once `d` is large. Reported, never enforced.
    pub fn diagnostics(&self) -> Vec<FiniteCheck> {
        let eps = self.epsilon;
        let (d, t, s, r) = (self.d as f64, self.t as f64, self.s as f64, self.r as f64);
        let mut checks = vec![
            FiniteCheck::new("ell_at_least_one", self.ell, 1.0, self.ell >= 1.0),
            {
                let lhs = d * r;
                let rhs = (1.0 - eps / 4.0) * self.ell * t;
                FiniteCheck::new("host_below_capacity", lhs, rhs, lhs < rhs)
            },
            {
                let lhs = self.ell * r * s;
                let rhs = eps / 20.0 * t;
                FiniteCheck::new("overlap_slack", lhs, rhs, lhs <= rhs)
            },
            {
                // exp(-d^{β-α}(s-1)/16) ≤ ½ (2 d^ℓ)^{-s}, compared in log space
                let lhs = -d.powf(self.beta - self.alpha) * (s - 1.0) / 16.0;
                let rhs = -(2f64.ln()) - s * (2f64.ln() + self.ell * d.ln());
                FiniteCheck::new("g0_union_bound_log", lhs, rhs, lhs <= rhs)
            },
        ];
        // Chernoff on |E(G0)| ≤ (½ - ε/4) p d², needs a threshold below the mean.
        let pairs = d * (d - 1.0) / 2.0;
        let delta = 1.0 - (0.5 - eps / 4.0) * d * d / pairs;
        let tail = if delta > 0.0 && delta < 1.0 {
            (-delta * delta / 2.0 * self.p * pairs).exp()
        } else {
            1.0
        };
        checks.push(FiniteCheck::new("g0_edge_tail", tail, 0.5, tail < 0.5));
        let avg = target_average_degree(self);
        checks.push(FiniteCheck::new(
            "meets_headline_degree",
            avg.intermediate,
            avg.headline,
            avg.intermediate >= avg.headline,
        ));
        checks
    }
}

fn check_epsilon(epsilon: f64) -> Result<(), ParamsError> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(ParamsError::Epsilon(epsilon))
    }
}

fn build(
    epsilon: f64,
    x_star: f64,
    p: f64,
    alpha: f64,
    beta: Option<f64>,
    d: u64,
    t: u64,
) -> Result<ConstructionParams, ParamsError> {
    if d < 2 {
        return Err(ParamsError::Degree(d));
    }
    if t <= d {
        return Err(ParamsError::TooFewVertices { t, d });
    }
    let beta = beta.unwrap_or((alpha + 1.0) / 2.0);
    if !(beta > alpha && beta < 1.0) {
        return Err(ParamsError::Beta { beta, alpha });
    }
    let ell = ell_for(alpha, p, d);
    let s = (d as f64).powf(beta).ceil() as u64;
    let r = class_size(epsilon, t, ell, d);
    Ok(ConstructionParams {
        epsilon,
        x_star,
        b: x_star.exp(),
        p,
        alpha,
        beta,
        d,
        t,
        ell,
        s,
        r,
    })
}

/// One inequality evaluated at concrete parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl FiniteCheck {
    fn new(name: &str, lhs: f64, rhs: f64, holds: bool) -> Self {
        FiniteCheck {
            name: name.to_string(),
            lhs,
            rhs,
            holds,
        }
    }
}

/// Average-degree bounds attached to a parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeTargets {
    /// `(1 - ε/2)² · p · t · ℓ`, guaranteed by the blowup once `|E(G0)|` is large.
    pub intermediate: f64,
    /// `(1 - ε) · p · t · √(α log_b d)`.
    pub required: f64,
    /// `(1 - ε) · λ · t · √(ln d)`.
    pub headline: f64,
}

pub fn target_average_degree(params: &ConstructionParams) -> DegreeTargets {
    let eps = params.epsilon;
    let t = params.t as f64;
    let (_, lambda) = lambda_constant();
    let intermediate = (1.0 - eps / 2.0).powi(2) * params.p * t * params.ell;
    let required = (1.0 - eps) * params.p * t * ell_for(params.alpha, params.p, params.d);
    // (1-ε/2)² ≥ 1-ε for every ε
    assert!(intermediate >= required * (1.0 - 1e-12));
    DegreeTargets {
        intermediate,
        required,
        headline: (1.0 - eps) * lambda * t * (params.d as f64).ln().sqrt(),
    }
}

/// Decimal rendering with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    // rounding can carry into a new leading digit (9.99.. -> 10.0..)
    let digits = s.chars().filter(|c| c.is_ascii_digit()).count();
    let leading_zeros = s
        .trim_start_matches('-')
        .chars()
        .take_while(|&c| c == '0' || c == '.')
        .filter(|&c| c == '0')
        .count();
    if decimals > 0 && digits - leading_zeros > 12 {
        format!("{:.*}", decimals - 1, x)
    } else {
        s
    }
}
