//! Exact computation of `pr(G)` by backtracking search.
//!
//! The engine answers the decision problem "is there a valid labeling of `G`
//! using distinct labels from `{1..k}`?" with three possible outcomes: a
//! witness, a certificate of absence (the search tree was exhausted), or
//! *inconclusive* when a node/time budget ran out. `min_coprime_number_exact`
//! then walks `k` upward from a certified lower bound; the answer is declared
//! exact only when the previous `k` was exhaustively refuted or the first `k`
//! tried already equals a proven lower bound.
//!
//! Search shape: vertices are assigned in a fixed order (descending degree,
//! ties by index) so the dense cores of joins and coronas are labeled first;
//! labels are tried in ascending order, which also realizes the only useful
//! symmetry rule (label 1, compatible with everything, is offered to a
//! maximum-degree vertex first). Candidate label sets are 128-bit masks and
//! shrink through precomputed pairwise-coprimality masks as neighbors get
//! labeled.
//!
//! Two sound pruning rules, individually switchable so tests can confirm
//! they never change answers:
//!
//! * *wipeout*: some unassigned vertex has an empty candidate set;
//! * *parity counting*: vertices labeled with even numbers are pairwise
//!   non-adjacent (all even labels share the factor 2), so a valid labeling
//!   uses at most `α(G)` even labels. If the remaining vertices cannot be
//!   covered by the still-available odd candidates plus the remaining even
//!   allowance, the branch is dead.
//!
//! Hard engine limits: at most 64 vertices and label budgets up to 128.
//! Beyond either, results are reported inconclusive rather than wrong.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::graph::{Graph, GraphError};
use crate::labeling::{Labeling, PrValue, Provenance};
use crate::numtheory::{gcd, Primes};

pub const MAX_VERTICES: usize = 64;
pub const MAX_LABEL_BUDGET: u64 = 128;

/// Budgets and strategy toggles for one search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Stop `min_coprime_number_exact` from trying budgets beyond this.
    pub max_k: Option<u64>,
    /// Cap on search-tree nodes (per worker in parallel mode).
    pub node_limit: Option<u64>,
    /// Wall-clock cap for a whole call.
    pub time_limit: Option<Duration>,
    /// Worker count; 1 means fully sequential (required for byte-stable
    /// witnesses, since parallel first-found witnesses may vary).
    pub parallel_width: usize,
    /// Pruning toggles; disabling either must never change computed values.
    pub use_wipeout_prune: bool,
    pub use_parity_prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_k: None,
            node_limit: None,
            time_limit: None,
            parallel_width: 1,
            use_wipeout_prune: true,
            use_parity_prune: true,
        }
    }
}

/// Answer to the decision problem at a fixed label budget.
#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found(Labeling),
    CertifiedAbsent,
    Inconclusive(String),
}

/// Answer of the exact minimizer.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactOutcome {
    Exact(PrValue),
    Inconclusive { reason: String },
}

impl ExactOutcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            ExactOutcome::Exact(v) => Some(v.value()),
            ExactOutcome::Inconclusive { .. } => None,
        }
    }

    pub fn unwrap_exact(self) -> PrValue {
        match self {
            ExactOutcome::Exact(v) => v,
            ExactOutcome::Inconclusive { reason } => {
                panic!("expected an exact result, got inconclusive: {reason}")
            }
        }
    }
}

/// Exact independence number (delegates to the branch-and-bound in
/// [`crate::graph`]); exposed here because the solver is its main consumer.
pub fn independence_number(g: &Graph) -> Result<usize, GraphError> {
    g.independence_number()
}

/// Exact clique number, computed as the independence number of the
/// complement.
pub fn clique_number(g: &Graph) -> Result<usize, GraphError> {
    g.clique_number()
}

#[derive(Debug, Clone, PartialEq)]
enum Inner {
    Found(Vec<u64>),
    Absent,
    Limit(String),
    Cancelled,
}

struct Dfs<'a> {
    n: usize,
    adj: &'a [u64],
    order: &'a [usize],
    coprime: &'a [u128], // coprime[l] has bit j set iff gcd(l, j + 1) = 1
    even_mask: u128,
    alpha: usize,
    use_wipeout: bool,
    use_parity: bool,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    cancel: Option<&'a AtomicBool>,
    nodes: u64,
    used: u128,
    evens_used: usize,
    unassigned: u64,
    labels: Vec<u64>,
    cand: Vec<u128>,
    saved: Vec<Vec<u128>>,
}

impl<'a> Dfs<'a> {
    fn run(&mut self, depth: usize) -> Inner {
        if let Some(limit) = self.node_limit {
            if self.nodes >= limit {
                return Inner::Limit(format!("node limit {limit} reached"));
            }
        }
        if self.nodes & 1023 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Inner::Limit("time limit reached".into());
                }
            }
            if let Some(c) = self.cancel {
                if c.load(Ordering::Relaxed) {
                    return Inner::Cancelled;
                }
            }
        }
        self.nodes += 1;
        if depth == self.n {
            return Inner::Found(self.labels.clone());
        }
        let v = self.order[depth];
        let mut options = self.cand[v] & !self.used;
        while options != 0 {
            let bit_idx = options.trailing_zeros() as usize;
            options &= options - 1;
            let label = bit_idx as u64 + 1;
            let bit = 1u128 << bit_idx;
            let even = label % 2 == 0;

            self.used |= bit;
            self.labels[v] = label;
            self.unassigned &= !(1u64 << v);
            self.evens_used += usize::from(even);
            self.saved[depth].copy_from_slice(&self.cand);
            let mut nbrs = self.adj[v] & self.unassigned;
            while nbrs != 0 {
                let u = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                self.cand[u] &= self.coprime[label as usize];
            }

            if !self.pruned(depth + 1) {
                match self.run(depth + 1) {
                    Inner::Absent => {}
                    other => return other, // Found keeps labels in place
                }
            }

            self.cand.copy_from_slice(&self.saved[depth]);
            self.evens_used -= usize::from(even);
            self.unassigned |= 1u64 << v;
            self.labels[v] = 0;
            self.used &= !bit;
        }
        Inner::Absent
    }

    /// Sound feasibility checks on the not-yet-assigned vertices.
    fn pruned(&self, depth: usize) -> bool {
        let remaining = self.n - depth;
        if remaining == 0 || !(self.use_wipeout || self.use_parity) {
            return false;
        }
        let mut union = 0u128;
        let mut rest = self.unassigned;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = self.cand[u] & !self.used;
            if self.use_wipeout && c == 0 {
                return true;
            }
            union |= c;
        }
        if self.use_parity {
            let evens_allowed =
                (self.alpha - self.evens_used).min((union & self.even_mask).count_ones() as usize);
            let odds = (union & !self.even_mask).count_ones() as usize;
            if evens_allowed + odds < remaining {
                return true;
            }
        }
        false
    }
}

struct Prepared {
    n: usize,
    adj: Vec<u64>,
    order: Vec<usize>,
    alpha: usize,
}

fn prepare(g: &Graph, need_alpha: bool) -> Result<Prepared, String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(format!("graph has {n} vertices; the exact engine handles at most {MAX_VERTICES}"));
    }
    let mut adj = vec![0u64; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let alpha = if need_alpha {
        g.independence_number().map_err(|e| e.to_string())?
    } else {
        n // trivially valid stand-in: the parity prune then never fires
    };
    Ok(Prepared { n, adj, order, alpha })
}

fn coprime_masks(k: u64) -> Vec<u128> {
    let mut masks = vec![0u128; k as usize + 1];
    for l in 1..=k {
        let mut m = 0u128;
        for j in 1..=k {
            if gcd(l, j) == 1 {
                m |= 1u128 << (j - 1);
            }
        }
        masks[l as usize] = m;
    }
    masks
}

/// Decides whether `G` admits a valid labeling inside `{1..k}`.
///
/// `CertifiedAbsent` means the whole search space was exhausted; the
/// impossibility results downstream rely on that, so any budget overrun is
/// reported as `Inconclusive` instead.
pub fn exists_labeling_with_max(g: &Graph, k: u64, cfg: &SearchConfig) -> SearchOutcome {
    let n = g.n();
    if n == 0 {
        return SearchOutcome::Found(Labeling::new(Vec::new()).unwrap());
    }
    if (n as u64) > k {
        // Injectivity alone makes this impossible.
        return SearchOutcome::CertifiedAbsent;
    }
    if k > MAX_LABEL_BUDGET {
        return SearchOutcome::Inconclusive(format!(
            "label budget {k} exceeds the engine maximum {MAX_LABEL_BUDGET}"
        ));
    }
    let prep = match prepare(g, cfg.use_parity_prune) {
        Ok(p) => p,
        Err(reason) => return SearchOutcome::Inconclusive(reason),
    };
    let coprime = coprime_masks(k);
    let full = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    // Bit j stands for label j + 1, so even labels sit at odd bit indices.
    let even_mask = {
        let mut m = 0u128;
        for j in (1..k as usize).step_by(2) {
            m |= 1 << j;
        }
        m
    };
    let deadline = cfg.time_limit.map(|d| Instant::now() + d);

    fn make_dfs<'a>(
        prep: &'a Prepared,
        coprime: &'a [u128],
        full: u128,
        even_mask: u128,
        cfg: &SearchConfig,
        deadline: Option<Instant>,
        cancel: Option<&'a AtomicBool>,
    ) -> Dfs<'a> {
        Dfs {
            n: prep.n,
            adj: &prep.adj,
            order: &prep.order,
            coprime,
            even_mask,
            alpha: prep.alpha,
            use_wipeout: cfg.use_wipeout_prune,
            use_parity: cfg.use_parity_prune,
            node_limit: cfg.node_limit,
            deadline,
            cancel,
            nodes: 0,
            used: 0,
            evens_used: 0,
            unassigned: if prep.n == 64 { u64::MAX } else { (1u64 << prep.n) - 1 },
            labels: vec![0; prep.n],
            cand: vec![full; prep.n],
            saved: vec![vec![0u128; prep.n]; prep.n],
        }
    }

    let finish = |inner: Inner| match inner {
        Inner::Found(labels) => SearchOutcome::Found(Labeling::new(labels).unwrap()),
        Inner::Absent => SearchOutcome::CertifiedAbsent,
        Inner::Limit(reason) => SearchOutcome::Inconclusive(reason),
        Inner::Cancelled => unreachable!("cancellation only exists in parallel workers"),
    };

    if cfg.parallel_width <= 1 || prep.n < 2 {
        let mut dfs = make_dfs(&prep, &coprime, full, even_mask, cfg, deadline, None);
        return finish(dfs.run(0));
    }

    // Parallel mode: split on the root vertex's label. Each worker owns a
    // disjoint subtree; a worker that finds a labeling raises the cancel
    // flag. Absence certification needs every non-cancelled worker to
    // exhaust its subtree, which only happens when nothing was found.
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel_width)
        .build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return SearchOutcome::Inconclusive(format!("thread pool: {e}")),
    };
    let cancel = AtomicBool::new(false);
    let root = prep.order[0];
    let results: Vec<(u64, Inner)> = pool.install(|| {
        (1..=k)
            .into_par_iter()
            .map(|root_label| {
                if cancel.load(Ordering::Relaxed) {
                    return (root_label, Inner::Cancelled);
                }
                let mut dfs =
                    make_dfs(&prep, &coprime, full, even_mask, cfg, deadline, Some(&cancel));
                let bit = 1u128 << (root_label - 1);
                dfs.used = bit;
                dfs.labels[root] = root_label;
                dfs.unassigned &= !(1u64 << root);
                dfs.evens_used = usize::from(root_label % 2 == 0);
                let mut nbrs = dfs.adj[root] & dfs.unassigned;
                while nbrs != 0 {
                    let u = nbrs.trailing_zeros() as usize;
                    nbrs &= nbrs - 1;
                    dfs.cand[u] &= dfs.coprime[root_label as usize];
                }
                let out = if dfs.pruned(1) { Inner::Absent } else { dfs.run(1) };
                if matches!(out, Inner::Found(_)) {
                    cancel.store(true, Ordering::Relaxed);
                }
                (root_label, out)
            })
            .collect()
    });

    // Deterministic reduction: prefer the found witness with the smallest
    // root label among workers that completed; then absence only if every
    // subtree was exhausted; otherwise inconclusive.
    let mut found: Option<(u64, Vec<u64>)> = None;
    let mut limit_reason: Option<String> = None;
    let mut cancelled = false;
    for (root_label, inner) in results {
        match inner {
            Inner::Found(labels) => {
                if found.as_ref().map_or(true, |(best, _)| root_label < *best) {
                    found = Some((root_label, labels));
                }
            }
            Inner::Absent => {}
            Inner::Limit(r) => limit_reason = Some(r),
            Inner::Cancelled => cancelled = true,
        }
    }
    match (found, limit_reason, cancelled) {
        (Some((_, labels)), _, _) => SearchOutcome::Found(Labeling::new(labels).unwrap()),
        (None, Some(reason), _) => SearchOutcome::Inconclusive(reason),
        (None, None, true) => {
            SearchOutcome::Inconclusive("worker cancelled without a surviving witness".into())
        }
        (None, None, false) => SearchOutcome::CertifiedAbsent,
    }
}

/// Certified lower bound used as the starting budget: vertex count, the
/// independence bound, and (when its hypotheses hold) the prime-multiple
/// bound.
fn starting_bound(g: &Graph, primes: &Primes) -> Result<u64, String> {
    let n = g.n() as u64;
    let alpha = g.independence_number().map_err(|e| e.to_string())?;
    let mut lo = crate::labeling::lower_bound_independence(g, alpha).value().max(n);
    match crate::labeling::lower_bound_prime_multiples(g, alpha, primes) {
        Ok(crate::labeling::BoundReport::Available(b)) => lo = lo.max(b.value()),
        Ok(crate::labeling::BoundReport::NotApplicable { .. }) => {}
        Err(e) => return Err(e.to_string()),
    }
    Ok(lo)
}

/// Computes `pr(G)` exactly. The result is `Exact` only when certified:
/// either the witness budget equals a proven lower bound, or the search at
/// `k − 1` was exhausted.
pub fn min_coprime_number_exact(
    g: &Graph,
    primes: &Primes,
    cfg: &SearchConfig,
) -> ExactOutcome {
    if g.n() == 0 {
        return ExactOutcome::Exact(PrValue::exact(
            0,
            Provenance::ExactSearch,
            Labeling::new(Vec::new()).unwrap(),
        ));
    }
    let mut k = match starting_bound(g, primes) {
        Ok(k) => k,
        Err(reason) => return ExactOutcome::Inconclusive { reason },
    };
    let start = k;
    loop {
        if let Some(cap) = cfg.max_k {
            if k > cap {
                return ExactOutcome::Inconclusive {
                    reason: format!("no labeling within the configured cap max_k = {cap}"),
                };
            }
        }
        match exists_labeling_with_max(g, k, cfg) {
            SearchOutcome::Found(w) => {
                debug_assert!(w.verify(g).is_ok());
                debug_assert!(w.max_label() <= k);
                // Tight witness: max equals the proven-minimal k. A witness
                // found under budget k can use fewer labels; but then that
                // smaller budget would have been found at an earlier k or is
                // below the certified lower bound, both contradictions —
                // except at the starting k, where the witness max may dip
                // below k yet stay >= the lower bound. Take the witness max
                // when it is still certified.
                let value = w.max_label();
                if value < start {
                    // The lower bound computation was beaten by the witness:
                    // impossible for a correct bound; treat as a defect.
                    return ExactOutcome::Inconclusive {
                        reason: format!(
                            "witness max {value} undercuts certified lower bound {start}"
                        ),
                    };
                }
                if k == start || value == start {
                    return ExactOutcome::Exact(PrValue::exact(
                        value,
                        Provenance::ExactSearch,
                        w,
                    ));
                }
                // k > start: previous budget k − 1 was certified absent, so
                // pr(G) = k; and any witness within budget k that uses fewer
                // than k labels would contradict that absence.
                debug_assert_eq!(value, k);
                return ExactOutcome::Exact(PrValue::exact(value, Provenance::ExactSearch, w));
            }
            SearchOutcome::CertifiedAbsent => {
                k += 1;
            }
            SearchOutcome::Inconclusive(reason) => {
                return ExactOutcome::Inconclusive {
                    reason: format!("search at budget {k} was inconclusive: {reason}"),
                };
            }
        }
    }
}
