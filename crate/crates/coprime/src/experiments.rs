//! Table sweeps and the seeded random-graph study behind the CLI's
//! reporting commands.
//!
//! Everything here produces plain serializable rows; rendering (text, CSV,
//! JSON) lives in the CLI. Rows are ordered by parameter (or trial index),
//! never by completion order, and every row is checked for internal
//! consistency — lower bounds ≤ value ≤ upper bounds whenever both sides
//! are present — before being emitted. A violation aborts the sweep with a
//! diagnostic instead of silently publishing a bad table.
//!
//! Determinism: random trials derive per-trial seeds as
//! `master_seed.wrapping_add(trial_index)`. Wall-clock runtimes are kept
//! in-memory for the text and CSV renderings but are never serialized to
//! JSON, so JSON reports with equal parameters and seeds are byte-identical
//! across runs.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::pathjoin::{self, JoinShape};
use crate::constructions::{corona_labeling, corona_prime_condition, pr_formula, ConstructionError};
use crate::family::FamilyExpr;
use crate::graph::{Graph, GraphError};
use crate::labeling::{
    lower_bound_independence, lower_bound_prime_multiples, monotonicity_bound, BoundError,
    BoundReport, PrKind, Provenance,
};
use crate::numtheory::{NumTheoryError, Primes};
use crate::solver::{min_coprime_number_exact, ExactOutcome, SearchConfig};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A produced row contradicted one of its own bounds; the sweep is
    /// aborted because the table would be unsound.
    #[error("inconsistent row: {0}")]
    Inconsistent(String),
    #[error("exact search inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), ExperimentError> {
    if cond {
        Ok(())
    } else {
        Err(ExperimentError::Inconsistent(msg()))
    }
}

/// One `corona(K(n), E(m))` instance: the certified value
/// `max(mn + n, p_{n−1})` plus whether the graph is prime (`pr = mn + n`).
#[derive(Debug, Clone, Serialize)]
pub struct CoronaRow {
    pub n: usize,
    pub m: usize,
    pub value: u64,
    pub provenance: Provenance,
    pub certified: bool,
    /// True when `pr` equals the vertex count `mn + n`.
    pub prime: bool,
    /// Wall-clock seconds for this row; text/CSV only, never in JSON.
    #[serde(skip)]
    pub seconds: f64,
}

impl CoronaRow {
    pub fn family(&self) -> String {
        format!("corona(K({}),E({}))", self.n, self.m)
    }
}

/// Certified `pr(corona(K(n), E(m)))` for the full parameter grid, rows in
/// `(n, m)` lexicographic order. Each row's value is independently
/// recomputed from the sieve and cross-checked against the construction.
pub fn corona_table(
    n_max: usize,
    m_max: usize,
    primes: &Primes,
) -> Result<Vec<CoronaRow>, ExperimentError> {
    if n_max == 0 || m_max == 0 {
        return Err(ExperimentError::Precondition("corona table needs n_max, m_max >= 1".into()));
    }
    // Grow the sieve once up front so parallel rows mostly take read locks.
    primes.nth_prime(n_max.max(2) as u64 - 1)?;
    primes.ensure((m_max as u64 + 1) * n_max as u64 + 16)?;

    let params: Vec<(usize, usize)> =
        (1..=n_max).flat_map(|n| (1..=m_max).map(move |m| (n, m))).collect();
    params
        .into_par_iter()
        .map(|(n, m)| {
            let start = Instant::now();
            let v = corona_labeling(n, m, primes)?;
            let (n64, m64) = (n as u64, m as u64);
            let p_last = if n == 1 { 1 } else { primes.nth_prime(n64 - 1)? };
            let target = (m64 * n64 + n64).max(p_last);
            check(v.value() == target, || {
                format!("corona(K({n}),E({m})): construction gave {}, sieve says {target}", v.value())
            })?;
            let prime = corona_prime_condition(n, m, primes)?;
            check(prime == (v.value() == m64 * n64 + n64), || {
                format!("corona(K({n}),E({m})): prime criterion disagrees with the value {}", v.value())
            })?;
            Ok(CoronaRow {
                n,
                m,
                value: v.value(),
                provenance: v.provenance(),
                certified: v.kind() == PrKind::Exact,
                prime,
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

/// For one copy count `m`: how far the corona `K_n ⊙ K̄_m` stays prime.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub m: usize,
    /// Largest `n ≤ n_max` with `n ≤ π(n(m+1)) + 1`.
    pub max_prime_n: usize,
    /// Whether the passing set is exactly `1..=max_prime_n` (no gaps up to
    /// the sweep bound).
    pub contiguous: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdTable {
    pub n_max: usize,
    pub rows: Vec<ThresholdRow>,
}

/// Prime-corona threshold sweep: for each `m ≤ m_max`, the largest
/// `n ≤ n_max` for which `K_n ⊙ K̄_m` is prime. Both forms of the
/// criterion — `n ≤ π(n(m+1)) + 1` and `p_{n−1} ≤ mn + n` — are computed
/// independently at every grid point and any disagreement aborts the sweep.
pub fn corona_threshold_table(
    n_max: usize,
    m_max: usize,
    primes: &Primes,
) -> Result<ThresholdTable, ExperimentError> {
    if n_max == 0 || m_max == 0 {
        return Err(ExperimentError::Precondition("threshold table needs n_max, m_max >= 1".into()));
    }
    primes.ensure(n_max as u64 * (m_max as u64 + 1) + 16)?;
    primes.nth_prime(n_max.max(2) as u64 - 1)?;

    let rows = (1..=m_max)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let mut max_prime_n = 0;
            let mut gap = false;
            for n in 1..=n_max {
                if corona_prime_condition(n, m, primes)? {
                    if max_prime_n != n - 1 {
                        gap = true;
                    }
                    max_prime_n = n;
                }
            }
            Ok(ThresholdRow { m, max_prime_n, contiguous: !gap })
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    Ok(ThresholdTable { n_max, rows })
}

/// One `join(P(m), P(n))` instance in the sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PathJoinRow {
    pub m: usize,
    pub n: usize,
    /// Parity/independence lower bound `2⌈(m−1)/2⌉ + 2n − 1`; equals the
    /// exact value everywhere the closed form is proven.
    pub lower_bound: u64,
    /// Certified exact value, when the construction or the exact solver
    /// settled this instance.
    pub value: Option<u64>,
    pub provenance: Option<Provenance>,
    pub certified: bool,
    /// True when the exact value strictly exceeds `lower_bound` — the
    /// closed form is not tight at this instance.
    pub flagged: bool,
    #[serde(skip)]
    pub seconds: f64,
}

impl PathJoinRow {
    pub fn family(&self) -> String {
        format!("join(P({}),P({}))", self.m, self.n)
    }
}

/// Knobs for [`path_join_sweep`].
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Largest total vertex count sent to exact search when no certified
    /// value is otherwise available; bigger instances get `value: None`.
    pub exact_max_vertices: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { exact_max_vertices: 17 }
    }
}

/// Sweeps `join(P(m), P(n))` over a parameter grid (rows with `m < n` are
/// skipped — the join is symmetric). Every solved row carries a certified
/// exact value; rows where that value beats the parity lower bound are
/// flagged.
pub fn path_join_sweep(
    n_range: RangeInclusive<usize>,
    m_range: RangeInclusive<usize>,
    cfg: &SweepConfig,
    primes: &Primes,
) -> Result<Vec<PathJoinRow>, ExperimentError> {
    if *n_range.start() < 2 || *m_range.start() < 2 {
        return Err(ExperimentError::Precondition("path joins need both sides >= 2".into()));
    }
    let params: Vec<(usize, usize)> = n_range
        .flat_map(|n| m_range.clone().filter(move |&m| m >= n).map(move |m| (m, n)))
        .collect();
    params
        .into_par_iter()
        .map(|(m, n)| {
            let start = Instant::now();
            let lower = pathjoin::path_join_value(m, n);
            let settled = match pathjoin::path_join_labeling(m, n, primes) {
                Ok(v) => Some(v),
                // The only precondition failure reachable from here is the
                // exceptional window, where no closed form is certified.
                Err(ConstructionError::Precondition(_)) => {
                    if m + n <= cfg.exact_max_vertices {
                        Some(pathjoin::search_join_exact(JoinShape::PathPath, m, n, primes)?)
                    } else {
                        None
                    }
                }
                Err(e) => return Err(e.into()),
            };
            if let Some(v) = &settled {
                check(v.value() >= lower, || {
                    format!(
                        "join(P({m}),P({n})): value {} fell below its lower bound {lower}",
                        v.value()
                    )
                })?;
            }
            Ok(PathJoinRow {
                m,
                n,
                lower_bound: lower,
                value: settled.as_ref().map(|v| v.value()),
                provenance: settled.as_ref().map(|v| v.provenance()),
                certified: settled.as_ref().is_some_and(|v| v.kind() == PrKind::Exact),
                flagged: settled.as_ref().is_some_and(|v| v.value() > lower),
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

/// One seeded `G(n, p)` trial.
#[derive(Debug, Clone, Serialize)]
pub struct RandomTrialRow {
    pub trial: usize,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub alpha: usize,
    pub omega: usize,
    /// Parity/independence lower bound on `pr`.
    pub independence_lower: u64,
    /// Prime-multiple lower bound, when its hypotheses hold.
    pub prime_multiple_lower: Option<u64>,
    /// Reason the prime-multiple bound did not apply, when it did not.
    pub prime_multiple_note: Option<String>,
    pub pr: u64,
    pub provenance: Provenance,
    pub certified: bool,
    /// `p_{n−1}`, transferred from the complete graph by monotonicity.
    pub upper_bound: u64,
    /// True when `pr` equals the vertex count.
    pub prime: bool,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RandomAggregates {
    pub trials: usize,
    pub fraction_not_prime: f64,
    pub mean_pr_over_n_log_n: f64,
    pub min_pr: u64,
    pub max_pr: u64,
}

/// Full record of one random-graph study run.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub command: String,
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<RandomTrialRow>,
    pub aggregates: RandomAggregates,
}

/// Exact `pr` over seeded `G(n, p)` samples, with per-trial bounds and
/// cross-checks: every trial must satisfy
/// `independence bound ≤ pr ≤ p_{n−1}` (and the prime-multiple bound when
/// applicable) or the run aborts. Trial `t` uses seed
/// `seed.wrapping_add(t)`.
pub fn random_pr_experiment(
    n: usize,
    p: f64,
    trials: usize,
    seed: u64,
    cfg: &SearchConfig,
    primes: &Primes,
) -> Result<ExperimentReport, ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::Precondition("random study needs n >= 2".into()));
    }
    if trials == 0 {
        return Err(ExperimentError::Precondition("random study needs trials >= 1".into()));
    }
    let pr_complete = match pr_formula(&FamilyExpr::Complete(n), primes)? {
        crate::constructions::FormulaOutcome::Covered(v) => v,
        crate::constructions::FormulaOutcome::NotCovered { reason } => {
            return Err(ExperimentError::Inconsistent(format!(
                "complete-graph value unexpectedly uncovered: {reason}"
            )))
        }
    };
    let complete = Graph::complete(n);

    let mut rows = Vec::with_capacity(trials);
    for trial in 0..trials {
        let start = Instant::now();
        let trial_seed = seed.wrapping_add(trial as u64);
        let g = Graph::gnp(n, p, trial_seed)?;
        let alpha = g.independence_number()?;
        let omega = g.clique_number()?;
        let indep = lower_bound_independence(&g, alpha);
        let (pm_lower, pm_note) = match lower_bound_prime_multiples(&g, alpha, primes)? {
            BoundReport::Available(v) => (Some(v.value()), None),
            BoundReport::NotApplicable { reason } => (None, Some(reason)),
        };
        let upper = monotonicity_bound(&g, &complete, &pr_complete)?;
        let exact = match min_coprime_number_exact(&g, primes, cfg) {
            ExactOutcome::Exact(v) => v,
            ExactOutcome::Inconclusive { reason } => {
                return Err(ExperimentError::Inconclusive(format!(
                    "trial {trial} (seed {trial_seed}): {reason}"
                )))
            }
        };
        let pr = exact.value();
        check(indep.value() <= pr, || {
            format!("trial {trial}: pr {pr} below independence bound {}", indep.value())
        })?;
        if let Some(b) = pm_lower {
            check(b <= pr, || format!("trial {trial}: pr {pr} below prime-multiple bound {b}"))?;
        }
        check(pr <= upper.value(), || {
            format!("trial {trial}: pr {pr} above the complete-graph bound {}", upper.value())
        })?;
        rows.push(RandomTrialRow {
            trial,
            seed: trial_seed,
            vertices: n,
            edges: g.edge_count(),
            alpha,
            omega,
            independence_lower: indep.value(),
            prime_multiple_lower: pm_lower,
            prime_multiple_note: pm_note,
            pr,
            provenance: exact.provenance(),
            certified: exact.kind() == PrKind::Exact,
            upper_bound: upper.value(),
            prime: pr == n as u64,
            seconds: start.elapsed().as_secs_f64(),
        });
    }

    let not_prime = rows.iter().filter(|r| r.pr > n as u64).count();
    let nlogn = n as f64 * (n as f64).ln();
    let aggregates = RandomAggregates {
        trials,
        fraction_not_prime: not_prime as f64 / trials as f64,
        mean_pr_over_n_log_n: rows.iter().map(|r| r.pr as f64 / nlogn).sum::<f64>()
            / trials as f64,
        min_pr: rows.iter().map(|r| r.pr).min().unwrap(),
        max_pr: rows.iter().map(|r| r.pr).max().unwrap(),
    };
    Ok(ExperimentReport {
        command: format!("random --n {n} --p {p} --trials {trials} --seed {seed}"),
        n,
        p,
        trials,
        seed,
        rows,
        aggregates,
    })
}
