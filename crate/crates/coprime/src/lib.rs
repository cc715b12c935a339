//! Minimum coprime labelings of graphs.
//!
//! A coprime labeling of a graph `G` on `n` vertices is an injection
//! `f : V(G) → {1, …, k}` such that adjacent vertices receive coprime
//! labels; the minimum coprime number `pr(G)` is the least `k` admitting
//! one, and `G` is a prime graph when `pr(G) = n`.
//!
//! The crate provides:
//!
//! * [`numtheory`] — growable prime sieve, `p_i`, `π(x)`, Ramanujan primes
//!   `R_k`, and prime witnesses avoiding ±1 mod 11.
//! * [`graph`] — adjacency-set graphs, standard families, join/corona
//!   operators, seeded Erdős–Rényi sampling, exact independence numbers.
//! * [`family`] — the expression language `P/C/K/E/Kbip/GNP/join/corona`
//!   used by the CLI to name graphs.
//! * [`labeling`] — the `Labeling` and `PrValue` types, verification, and
//!   the independence / prime-multiple / monotonicity bounds.
//! * [`solver`] — exact backtracking search for `pr(G)` with certified
//!   absence, node/time budgets, and optional parallel root splitting.
//! * [`constructions`] — closed-form values and witness constructions for
//!   coronas, path and cycle joins, and complete bipartite graphs.
//! * [`experiments`] — table sweeps and the random-graph study behind the
//!   CLI's reporting commands.

pub mod constructions;
pub mod experiments;
pub mod family;
pub mod graph;
pub mod labeling;
pub mod numtheory;
pub mod solver;

pub use constructions::{
    complete_bipartite_labeling, corona_counting_certificate, corona_labeling,
    corona_prime_condition, cycle_join_labeling, path_join_labeling, path_join_p5_labeling,
    pr_formula, special_join_values, ConstructionError, CycleJoinKind, FormulaOutcome,
};
pub use experiments::{
    corona_table, corona_threshold_table, path_join_sweep, random_pr_experiment, CoronaRow,
    ExperimentError, ExperimentReport, PathJoinRow, RandomAggregates, RandomTrialRow, SweepConfig,
    ThresholdRow, ThresholdTable,
};
pub use family::{parse_family, FamilyError, FamilyExpr};
pub use graph::{Graph, GraphError};
pub use labeling::{
    lower_bound_independence, lower_bound_prime_multiples, monotonicity_bound, BoundError,
    BoundReport, Labeling, LabelingDoc, LabelingError, PrKind, PrValue, Provenance, VerifyFailure,
    Violation,
};
pub use numtheory::{gcd, NumTheoryError, PrimeTables, Primes, RamanujanTable};
pub use solver::{
    exists_labeling_with_max, min_coprime_number_exact, ExactOutcome, SearchConfig, SearchOutcome,
};
