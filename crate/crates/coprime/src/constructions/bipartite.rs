//! Complete bipartite graphs `K_{m,n}` (`m ≤ n`): a Ramanujan-prime upper
//! bound.
//!
//! With `R = R_{m−1}`, the window `(R/2, R]` contains at least `m − 1`
//! primes. Labeling the small part with `1` and the `m − 1` largest primes
//! `≤ R` makes every small-part label coprime to anything in `[1, R]`
//! (those primes have no multiple besides themselves up to `R`), so the
//! large part can take any `n` of the remaining integers — possible exactly
//! when `n ≤ R − m`. The result is an upper bound only: no matching lower
//! bound is known for general `K_{m,n}`.

use super::ConstructionError;
use crate::graph::Graph;
use crate::labeling::{Labeling, PrValue, Provenance};
use crate::numtheory::Primes;

/// Labels `K_{m,n}` (small part first, as in
/// [`crate::graph::complete_bipartite`]) with max label `R_{m−1}`,
/// witnessing `pr(K_{m,n}) ≤ R_{m−1}`. Requires `3 ≤ m ≤ n ≤ R_{m−1} − m`;
/// for `m = 2` the window is empty (`R_1 = 2`), so no parameters qualify.
pub fn complete_bipartite_labeling(
    m: usize,
    n: usize,
    primes: &Primes,
) -> Result<PrValue, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::Precondition(format!(
            "the small part needs at least 2 vertices, got {m}"
        )));
    }
    if n < m {
        return Err(ConstructionError::Precondition(format!(
            "expected m <= n, got m = {m}, n = {n}"
        )));
    }
    let r = primes.ramanujan_prime(m as u64 - 1)?;
    if (n as u64) + (m as u64) > r {
        return Err(ConstructionError::Precondition(format!(
            "need n <= R_{} - m = {}, got n = {n}",
            m - 1,
            r as i64 - m as i64
        )));
    }
    let tables = primes.ensure(r)?;
    let window = tables.primes_in(r / 2, r);
    if window.len() < m - 1 {
        return Err(ConstructionError::Failure(format!(
            "window ({}, {r}] holds {} primes, expected at least {}",
            r / 2,
            window.len(),
            m - 1
        )));
    }
    let small: Vec<u64> =
        std::iter::once(1).chain(window[window.len() - (m - 1)..].iter().copied()).collect();
    let large: Vec<u64> = (2..=r).filter(|x| !small.contains(x)).take(n).collect();
    debug_assert_eq!(large.len(), n);

    let mut labels = small;
    labels.extend_from_slice(&large);
    let witness = Labeling::new(labels)
        .map_err(|e| ConstructionError::Failure(format!("Kbip({m},{n}): {e}")))?;
    let g = Graph::complete_bipartite(m, n);
    witness
        .verify(&g)
        .map_err(|e| ConstructionError::Failure(format!("Kbip({m},{n}) witness: {e}")))?;
    if witness.max_label() != r {
        return Err(ConstructionError::Failure(format!(
            "Kbip({m},{n}): witness max {} != R_{} = {r}",
            witness.max_label(),
            m - 1
        )));
    }
    Ok(PrValue::upper_bound(r, Provenance::Construction, witness))
}
