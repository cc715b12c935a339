//! Corona construction: `pr(K_n ⊙ K̄_m) = max(mn + n, p_{n−1})`.
//!
//! The corona has `n` pairwise-adjacent centers, each also adjacent to its
//! own `m` leaf vertices. Both terms of the value are lower bounds — the
//! graph has `mn + n` vertices, and the centers induce a `K_n` — so a
//! witness that tops out at the max certifies equality.
//!
//! Greedy assignment: center `i + 1` takes prime `p_i` (center 1 takes
//! label 1), each prime-labeled center's leaves take the smallest unused
//! labels coprime to that prime, and center 1's leaves take any `m`
//! leftovers. A counting argument ([`corona_counting_certificate`]) shows
//! the greedy pool never runs dry when `n ≥ 4` and `m ≥ 3`; smaller
//! parameters fall back to exact search in the (never yet observed) event
//! of starvation.

use std::collections::HashSet;

use super::ConstructionError;
use crate::graph::Graph;
use crate::labeling::{Labeling, PrValue, Provenance};
use crate::numtheory::Primes;
use crate::solver::{min_coprime_number_exact, ExactOutcome, SearchConfig};

/// Builds a verified optimal labeling of `K_n ⊙ K̄_m` and returns the exact
/// value `max(mn + n, p_{n−1})`.
///
/// Vertex convention matches [`crate::graph::corona`]: centers first
/// (`0..n`), then leaf block `i` at `n + i*m .. n + (i+1)*m`.
pub fn corona_labeling(n: usize, m: usize, primes: &Primes) -> Result<PrValue, ConstructionError> {
    if n == 0 || m == 0 {
        return Err(ConstructionError::Precondition("corona parameters must be >= 1".into()));
    }
    let (n64, m64) = (n as u64, m as u64);
    let p_last = if n == 1 { 1 } else { primes.nth_prime(n64 - 1)? };
    let value = (m64 * n64 + n64).max(p_last);

    let mut centers = vec![1u64];
    for i in 1..n64 {
        centers.push(primes.nth_prime(i)?);
    }
    let center_set: HashSet<u64> = centers.iter().copied().collect();
    let mut pool: Vec<u64> = (2..=value).filter(|x| !center_set.contains(x)).collect();

    let mut leaf_blocks: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut starved = false;
    for i in 1..n {
        let p = centers[i];
        let mut picked = Vec::with_capacity(m);
        pool.retain(|&x| {
            if picked.len() < m && x % p != 0 {
                picked.push(x);
                false
            } else {
                true
            }
        });
        if picked.len() < m {
            starved = true;
            break;
        }
        leaf_blocks[i] = picked;
    }
    if !starved && pool.len() < m {
        starved = true;
    }
    if starved {
        return corona_search_fallback(n, m, value, primes);
    }
    leaf_blocks[0] = pool[..m].to_vec();

    let mut labels = centers;
    for block in &leaf_blocks {
        labels.extend_from_slice(block);
    }
    let witness = Labeling::new(labels)
        .map_err(|e| ConstructionError::Failure(format!("corona({n}, {m}): {e}")))?;
    let g = Graph::corona(&Graph::complete(n), &Graph::empty_graph(m));
    witness
        .verify(&g)
        .map_err(|e| ConstructionError::Failure(format!("corona({n}, {m}) witness: {e}")))?;
    if witness.max_label() != value {
        return Err(ConstructionError::FormulaViolation(format!(
            "corona({n}, {m}): witness max {} != expected {value}",
            witness.max_label()
        )));
    }
    Ok(PrValue::exact(value, Provenance::Construction, witness))
}

/// Exact-search fallback for greedy starvation. Only tiny parameters can
/// starve, so the solver's size cap is not a practical limit here.
fn corona_search_fallback(
    n: usize,
    m: usize,
    value: u64,
    primes: &Primes,
) -> Result<PrValue, ConstructionError> {
    let g = Graph::corona(&Graph::complete(n), &Graph::empty_graph(m));
    match min_coprime_number_exact(&g, primes, &SearchConfig::default()) {
        ExactOutcome::Exact(v) => {
            if v.value() != value {
                return Err(ConstructionError::FormulaViolation(format!(
                    "corona({n}, {m}): searched value {} != expected {value}",
                    v.value()
                )));
            }
            Ok(v)
        }
        ExactOutcome::Inconclusive { reason } => Err(ConstructionError::SearchFallback(format!(
            "corona({n}, {m}) greedy starved and search was inconclusive: {reason}"
        ))),
    }
}

/// Case split for one step of the corona counting argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingCase {
    /// `p_i > n`: the prime is too large to divide many candidates.
    PrimeAboveN,
    /// `p_i ≤ n`, `i ≥ 3`: small prime but late enough that `p_i ≥ 5`.
    SmallPrimeLateIndex,
    /// `p_i ≤ n`, `i = 2` (`p_2 = 3`).
    SmallPrimeIndexTwo,
    /// `p_i ≤ n`, `i = 1` (`p_1 = 2`); holds because `(m−1)(n−2) > 0`.
    SmallPrimeIndexOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingRow {
    pub i: u64,
    pub prime: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub case: CountingCase,
    pub holds: bool,
}

/// Numeric certificate that the greedy pool cannot starve: after the first
/// `i` prime-labeled centers have claimed their leaves, at least
/// `m(n − i) + 1` candidates remain coprime to `p_i`, which the inequality
/// `p_i · (mn − mi + 1) > mn + n` guarantees for every `i < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingCertificate {
    pub n: usize,
    pub m: usize,
    pub rows: Vec<CountingRow>,
}

impl CountingCertificate {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Verifies the counting inequality `p_i (mn − mi + 1) > mn + n` for
/// `i = 1 .. n−1`, classifying each row by which side condition makes it
/// hold. Requires `n ≥ 4` and `m ≥ 3` (the regime the argument covers).
pub fn corona_counting_certificate(
    n: usize,
    m: usize,
    primes: &Primes,
) -> Result<CountingCertificate, ConstructionError> {
    if n < 4 || m < 3 {
        return Err(ConstructionError::Precondition(format!(
            "counting certificate needs n >= 4 and m >= 3, got ({n}, {m})"
        )));
    }
    let (n64, m64) = (n as u64, m as u64);
    let rhs = m64 * n64 + n64;
    let mut rows = Vec::with_capacity(n - 1);
    for i in 1..n64 {
        let prime = primes.nth_prime(i)?;
        let lhs = prime * (m64 * n64 - m64 * i + 1);
        let case = if prime > n64 {
            CountingCase::PrimeAboveN
        } else if i >= 3 {
            CountingCase::SmallPrimeLateIndex
        } else if i == 2 {
            CountingCase::SmallPrimeIndexTwo
        } else {
            CountingCase::SmallPrimeIndexOne
        };
        rows.push(CountingRow { i, prime, lhs, rhs, case, holds: lhs > rhs });
    }
    Ok(CountingCertificate { n, m, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(n: usize, m: usize) -> u64 {
        let primes = Primes::new();
        corona_labeling(n, m, &primes).unwrap().value()
    }

    #[test]
    fn pinned_examples() {
        assert_eq!(value(8, 1), 17); // p_7 = 17 > 16
        assert_eq!(value(4, 1), 8); // 8 > p_3 = 7
        assert_eq!(value(16, 2), 48); // 48 >= p_15 = 47: prime graph
        assert_eq!(value(17, 2), 53); // p_16 = 53 > 51
        assert_eq!(value(20, 4), 100);
        assert_eq!(value(1, 6), 7); // star K_1,6
    }

    #[test]
    fn formula_shape_across_a_band() {
        let primes = Primes::new();
        for n in 1..=25usize {
            for m in 1..=4usize {
                let expected = ((m * n + n) as u64).max(if n == 1 {
                    1
                } else {
                    primes.nth_prime(n as u64 - 1).unwrap()
                });
                assert_eq!(value(n, m), expected, "corona({n}, {m})");
            }
        }
    }

    #[test]
    fn witnesses_use_every_label_when_count_dominates() {
        let primes = Primes::new();
        let v = corona_labeling(12, 3, &primes).unwrap();
        // 12 * 4 = 48 >= p_11 = 37: the labeling is a bijection onto 1..=48.
        let mut labels = v.witness().unwrap().labels().to_vec();
        labels.sort_unstable();
        assert_eq!(labels, (1..=48).collect::<Vec<u64>>());
    }

    #[test]
    fn counting_certificate_holds_in_regime() {
        let primes = Primes::new();
        for (n, m) in [(4, 3), (5, 3), (8, 4), (12, 3), (40, 8), (60, 5)] {
            let cert = corona_counting_certificate(n, m, &primes).unwrap();
            assert_eq!(cert.rows.len(), n - 1);
            assert!(cert.all_hold(), "certificate fails at ({n}, {m})");
        }
    }

    #[test]
    fn counting_certificate_case_labels() {
        let primes = Primes::new();
        let cert = corona_counting_certificate(10, 3, &primes).unwrap();
        let case_of = |i: u64| cert.rows[(i - 1) as usize].case;
        assert_eq!(case_of(1), CountingCase::SmallPrimeIndexOne); // p_1 = 2 <= 10
        assert_eq!(case_of(2), CountingCase::SmallPrimeIndexTwo); // p_2 = 3 <= 10
        assert_eq!(case_of(3), CountingCase::SmallPrimeLateIndex); // p_3 = 5 <= 10
        assert_eq!(case_of(4), CountingCase::SmallPrimeLateIndex); // p_4 = 7 <= 10
        assert_eq!(case_of(5), CountingCase::PrimeAboveN); // p_5 = 11 > 10
        assert_eq!(case_of(9), CountingCase::PrimeAboveN); // p_9 = 23 > 10
    }

    #[test]
    fn counting_certificate_rejects_small_parameters() {
        let primes = Primes::new();
        assert!(corona_counting_certificate(3, 3, &primes).is_err());
        assert!(corona_counting_certificate(4, 2, &primes).is_err());
    }

    #[test]
    fn rejects_zero_parameters() {
        let primes = Primes::new();
        assert!(corona_labeling(0, 1, &primes).is_err());
        assert!(corona_labeling(1, 0, &primes).is_err());
    }
}
