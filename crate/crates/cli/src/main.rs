use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use extremal_minors::blobbing::{blobbing_bound, count_blobbings, g_count};
use extremal_minors::harness::{
    compatibility_at, compatibility_probability_bound, estimate_minor_probability, replay,
    run_experiment, union_bound_estimate, ExperimentConfig, ExperimentRecord, HostOptions,
};
use extremal_minors::minor::{find_minor_report, validate_model, MinorOutcome, SearchBudget};
use extremal_minors::params::{lambda_constant, stationarity_residual, target_average_degree};
use extremal_minors::verify::{
    construct_g0, verify_star, G0Config, StarMode, StarProperty, VerifyBudget, VerifyError,
};
use extremal_minors::{blowup, derive_params, ConstructionParams, Graph, Seed};

const SUCCESS: u8 = 0;
const NEGATIVE: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "xminor",
    version,
    about = "Random blowup hosts and exact minor search"
)]
struct Cli {
    /// Seed value for every randomized step.
    #[arg(long, global = true, env = "XMINOR_SEED", default_value_t = 0)]
    seed: u64,
    /// Stream id paired with the seed.
    #[arg(long, global = true, env = "XMINOR_STREAM", default_value_t = 0)]
    stream_id: u64,
    /// Append a JSONL record to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    beta: Option<f64>,
}

impl ParamArgs {
    fn params(&self) -> Result<ConstructionParams> {
        Ok(derive_params(self.epsilon, self.d, self.t, self.beta)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// The constant λ and its maximizer x*.
    Lambda,
    /// Derived construction parameters with finite-d diagnostics.
    DeriveParams(ParamArgs),
    /// Sample a base graph G0 that passes the edge and (⋆) checks.
    GenG0 {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "sampled")]
        mode: StarMode,
        #[arg(long, default_value_t = 100)]
        max_retries: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Check property (⋆) for a graph file.
    VerifyStar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set_size_cap: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "exhaustive")]
        mode: StarMode,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, default_value_t = 1e8)]
        max_work: f64,
    },
    /// Blow up every vertex of a graph file into r copies.
    Blowup {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Decide whether one graph is a minor of another.
    MinorTest {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Exact count g(d, t, n) against (4d)^n.
    GCount {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        n: u64,
    },
    /// Enumerate blobbings and count them.
    CountBlobbings {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        capacity: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1e9)]
        budget: f64,
    },
    /// Union bound and compatibility chain at given parameters.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        /// Edge count for the compatibility chain (defaults to ⌊td/2⌋).
        #[arg(long, requires = "q")]
        m: Option<u64>,
        #[arg(long, requires = "m")]
        q: Option<u64>,
    },
    /// Estimate P(H is a minor of G) over random H.
    Estimate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 50)]
        trials: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value = "sampled")]
        mode: StarMode,
    },
    /// Run an experiment from a config file, or replay a stored record.
    Run {
        #[arg(long, conflicts_with = "replay", required_unless_present = "replay")]
        config: Option<PathBuf>,
        /// JSONL file whose first line is a record to re-run and compare.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { SUCCESS });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, record: &Value) -> Result<()> {
    if let Some(path) = out {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening {}", path.display()))?;
        writeln!(f, "{record}")?;
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<u8> {
    let seed = Seed::new(cli.seed, cli.stream_id);
    match &cli.command {
        Command::Lambda => {
            let (x, lambda) = lambda_constant();
            println!("x*       {x:.16}");
            println!("lambda   {lambda:.16}");
            println!("residual {:.3e}", stationarity_residual(x));
            emit(
                &cli.out,
                &json!({"command": "lambda", "x_star": x, "lambda": lambda}),
            )?;
            Ok(SUCCESS)
        }
        Command::DeriveParams(args) => {
            let params = args.params()?;
            print!("{}", params.to_record());
            let targets = target_average_degree(&params);
            println!("target_intermediate={}", targets.intermediate);
            println!("target_required={}", targets.required);
            println!("target_headline={}", targets.headline);
            for c in params.diagnostics() {
                println!(
                    "check {:<24} {:>14.6} vs {:>14.6}  {}",
                    c.name,
                    c.lhs,
                    c.rhs,
                    if c.holds { "holds" } else { "fails" }
                );
            }
            emit(
                &cli.out,
                &json!({"command": "derive-params", "params": params, "targets": targets, "diagnostics": params.diagnostics()}),
            )?;
            Ok(SUCCESS)
        }
        Command::GenG0 {
            params,
            mode,
            max_retries,
            samples,
        } => {
            let params = params.params()?;
            let mut config = G0Config::from_params(&params, *mode);
            config.max_retries = *max_retries;
            config.budget.samples = *samples;
            match construct_g0(&config, seed) {
                Ok(g) => {
                    print!("{}", g.graph.to_text());
                    eprintln!(
                        "attempt {} edges {} (threshold {:.4}) star {}",
                        g.attempt,
                        g.edge_check.edges,
                        g.edge_check.threshold,
                        if g.verdict.vacuous {
                            "vacuous"
                        } else {
                            "passed"
                        }
                    );
                    emit(
                        &cli.out,
                        &json!({"command": "gen-g0", "seed": seed, "graph": g.graph.to_text(), "attempt": g.attempt,
                                "edge_check": g.edge_check, "verdict": g.verdict}),
                    )?;
                    Ok(SUCCESS)
                }
                Err(VerifyError::RetriesExhausted { attempts, best }) => {
                    eprintln!("no acceptable G0 after {attempts} attempts; best candidate:");
                    print!("{}", best.graph_text);
                    emit(
                        &cli.out,
                        &json!({"command": "gen-g0", "seed": seed, "failed": true, "best": best}),
                    )?;
                    Ok(NEGATIVE)
                }
                Err(VerifyError::BudgetExceeded { .. }) => {
                    eprintln!("verification budget exceeded");
                    Ok(INCONCLUSIVE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VerifyStar {
            graph,
            set_size_cap,
            s,
            alpha,
            mode,
            samples,
            restarts,
            max_work,
        } => {
            let g0 = read_graph(graph)?;
            let property = StarProperty {
                d: g0.vertex_count(),
                set_size_cap: *set_size_cap,
                s: *s,
                alpha: *alpha,
            };
            let budget = VerifyBudget {
                samples: *samples,
                restarts: *restarts,
                max_work: *max_work,
                ..VerifyBudget::default()
            };
            let verdict = match verify_star(&g0, &property, *mode, seed, &budget) {
                Err(VerifyError::BudgetExceeded { estimate, budget }) => {
                    eprintln!("work estimate {estimate:.3e} exceeds budget {budget:.3e}");
                    return Ok(INCONCLUSIVE);
                }
                other => other?,
            };
            println!("mode       {:?}", verdict.mode);
            println!("passed     {}", verdict.passed);
            println!("vacuous    {}", verdict.vacuous);
            println!(
                "threshold  {} ({})",
                verdict.threshold, verdict.threshold_value
            );
            println!("evaluated  {}", verdict.evaluated);
            if let Some(w) = &verdict.witness {
                println!("min pairs  {}  sets {:?}", w.non_adjacent_pairs, w.sets);
            }
            emit(&cli.out, &serde_json::to_value(&verdict)?)?;
            Ok(if verdict.passed { SUCCESS } else { NEGATIVE })
        }
        Command::Blowup { graph, r } => {
            let g0 = read_graph(graph)?;
            let host = blowup(&g0, *r)?;
            print!("{}", host.graph().to_text());
            emit(
                &cli.out,
                &json!({"command": "blowup", "r": r, "graph": host.graph().to_text()}),
            )?;
            Ok(SUCCESS)
        }
        Command::MinorTest {
            pattern,
            host,
            budget,
            time_limit,
        } => {
            let h = read_graph(pattern)?;
            let g = read_graph(host)?;
            let budget = SearchBudget {
                node_limit: *budget,
                time_limit: *time_limit,
            };
            let report = find_minor_report(&h, &g, budget)?;
            let code = match &report.outcome {
                MinorOutcome::Model(model) => {
                    validate_model(model, &h, &g).context("search returned an invalid model")?;
                    println!("model");
                    print!("{}", model.to_text());
                    SUCCESS
                }
                MinorOutcome::NoMinor => {
                    println!("no minor");
                    NEGATIVE
                }
                MinorOutcome::Inconclusive { .. } => {
                    println!("inconclusive");
                    INCONCLUSIVE
                }
            };
            eprintln!("nodes {} elapsed {:.3}s", report.nodes, report.elapsed_secs);
            emit(&cli.out, &serde_json::to_value(&report)?)?;
            Ok(code)
        }
        Command::GCount { d, t, n } => {
            let g = g_count(*d, *t, *n);
            let bound = blobbing_bound(*d, *n);
            println!("g     {g}");
            println!("bound {bound}");
            println!("holds {}", g <= bound);
            emit(
                &cli.out,
                &json!({"command": "g-count", "d": d, "t": t, "n": n, "g": g.to_string(), "bound": bound.to_string()}),
            )?;
            Ok(SUCCESS)
        }
        Command::CountBlobbings {
            d,
            t,
            capacity,
            r,
            budget,
        } => match count_blobbings(*d, *t, *capacity, *r, *budget) {
            Ok(n) => {
                println!("{n}");
                emit(
                    &cli.out,
                    &json!({"command": "count-blobbings", "d": d, "t": t, "capacity": capacity, "r": r, "count": n}),
                )?;
                Ok(SUCCESS)
            }
            Err(extremal_minors::blobbing::BlobError::BudgetExceeded { estimate, budget }) => {
                eprintln!("work estimate {estimate:.3e} exceeds budget {budget:.3e}");
                Ok(INCONCLUSIVE)
            }
            Err(e) => Err(e.into()),
        },
        Command::Bounds { params, c, m, q } => {
            let params = params.params()?;
            let union = union_bound_estimate(&params, *c);
            let compat = match (m, q) {
                (Some(m), Some(q)) => compatibility_probability_bound(
                    params.epsilon,
                    params.d,
                    params.alpha,
                    params.t,
                    *m,
                    *q,
                )?,
                _ => compatibility_at(&params)?,
            };
            println!("log union bound   {:.12e}", union.log_bound);
            match union.bound {
                Some(b) => println!("union bound       {b:e}"),
                None => println!("union bound       overflows f64"),
            }
            println!("log c^t           {:.12e}", union.log_c_pow_t);
            println!("below c^t         {}", union.below_c_pow_t);
            println!("compat m={} q={}", compat.m, compat.q);
            println!("  exact ratio     {:e}", compat.exact_ratio_value);
            println!("  (1-x)^m         {:e}", compat.relaxed_value);
            println!("  exp(-xm)        {:e}", compat.exp_bound);
            println!("  premise holds   {}", compat.premise_holds);
            println!("  chain holds     {}", compat.chain_holds());
            emit(
                &cli.out,
                &json!({"command": "bounds", "params": params, "union_bound": union, "compatibility": compat}),
            )?;
            Ok(SUCCESS)
        }
        Command::Estimate {
            params,
            trials,
            budget,
            mode,
        } => {
            let params = params.params()?;
            let options = HostOptions {
                mode: *mode,
                ..HostOptions::default()
            };
            let (built, est) = estimate_minor_probability(
                &params,
                &options,
                *trials,
                seed,
                SearchBudget::nodes(*budget),
            )?;
            println!("host vertices     {}", built.report.vertices);
            println!("host edges        {}", built.report.edges);
            println!("trials            {}", est.trials);
            println!(
                "model             {} ({:.4})",
                est.model, est.model_fraction
            );
            println!(
                "no minor          {} ({:.4})",
                est.no_minor, est.no_minor_fraction
            );
            println!(
                "inconclusive      {} ({:.4})",
                est.inconclusive, est.inconclusive_fraction
            );
            println!(
                "wilson 95%        [{:.4}, {:.4}]",
                est.wilson_low, est.wilson_high
            );
            let union = union_bound_estimate(&params, 0.5);
            println!("log union bound   {:.6e}", union.log_bound);
            emit(
                &cli.out,
                &json!({"command": "estimate", "seed": seed, "params": params, "host": built.report, "estimate": est, "union_bound": union}),
            )?;
            Ok(if est.inconclusive > 0 {
                INCONCLUSIVE
            } else {
                SUCCESS
            })
        }
        Command::Run {
            config,
            replay: replay_path,
        } => {
            if let Some(path) = replay_path {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let Some(line) = text.lines().next() else {
                    bail!("{} is empty", path.display());
                };
                let stored = ExperimentRecord::from_json_line(line).context("parsing record")?;
                let again = replay(&stored);
                let same = again.without_timing() == stored.without_timing();
                println!("replay {}", if same { "matches" } else { "differs" });
                emit(&cli.out, &serde_json::to_value(&again)?)?;
                return Ok(if same { SUCCESS } else { NEGATIVE });
            }
            let path = config.as_ref().expect("clap enforces config or replay");
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cfg = ExperimentConfig::parse(&text)?;
            let record = run_experiment(&cfg);
            if let Some(f) = &record.failure {
                eprintln!("stage {} failed: {}", f.stage, f.message);
            }
            if let Some(e) = &record.estimate {
                println!(
                    "model {} no_minor {} inconclusive {} of {}",
                    e.model, e.no_minor, e.inconclusive, e.trials
                );
            }
            if let Some(b) = &record.bounds {
                println!(
                    "log union bound {:.6e} (below c^t: {})",
                    b.union_bound.log_bound, b.union_bound.below_c_pow_t
                );
            }
            emit(&cli.out, &serde_json::to_value(&record)?)?;
            Ok(match (&record.failure, &record.estimate) {
                (Some(_), _) => NEGATIVE,
                (None, Some(e)) if e.inconclusive > 0 => INCONCLUSIVE,
                _ => SUCCESS,
            })
        }
    }
}
