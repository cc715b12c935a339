//! Prime tables and derived quantities.
//!
//! Everything downstream (constructions, bounds, the solver's starting
//! estimates) pulls prime data from a single [`Primes`] handle. Internally the
//! handle owns an Eratosthenes sieve that grows geometrically on demand:
//! whenever a caller asks past the current limit, a new table is built at
//! `max(requested, 2 * current)` and atomically swapped in. Snapshots are
//! immutable and cheaply shareable across threads, so readers never block on
//! a growth step that they did not trigger.
//!
//! Besides the usual `nth_prime` / `prime_count` accessors this module
//! computes Ramanujan primes: `ramanujan_prime(k)` is the least integer `R`
//! such that `pi(x) - pi(x/2) >= k` for every `x >= R` (integer division,
//! so `pi(floor(x/2))`). The scan is certified by growing the sieve until
//! `pi(x) - pi(x/2)` stays at least `k + 2` across the entire top half of the
//! sieved range; past that margin the count cannot dip back below `k`, so the
//! last dip found inside the table is genuinely the last one.
//!
//! There is also a small "avoiding witness" facility: for an integer `x >= 1`,
//! [`Primes::mod11_witness`] finds the least prime `p` with `x < p <= 2x` and
//! `p % 11 != 1, 10`. Witnesses for integer `x` cover real arguments too: for
//! real `y` in `[x, x+1)` the integer witness satisfies `y < p <= 2y` as well,
//! so checking integers up to a bound checks the whole real interval.

use std::sync::{Arc, Mutex, RwLock};

use thiserror::Error;

/// Default ceiling on sieve size, counted in table entries (one per integer).
pub const DEFAULT_SIEVE_CAP: u64 = 1 << 28;

#[derive(Debug, Error)]
pub enum NumTheoryError {
    #[error("sieve request for limit {requested} exceeds the configured cap {cap}")]
    ResourceLimit { requested: u64, cap: u64 },
    #[error("no prime in ({x}, {two_x}] avoids 1 and 10 mod 11")]
    WitnessNotFound { x: u64, two_x: u64 },
}

/// Greatest common divisor (binary-free Euclid; the inputs here are small).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// An immutable sieve snapshot: primality flags, the prime list, and a prefix
/// table of `pi(x)` for every `x <= limit`.
#[derive(Debug)]
pub struct PrimeTables {
    limit: u64,
    is_prime: Vec<bool>,
    primes: Vec<u64>,
    pi: Vec<u32>,
}

impl PrimeTables {
    fn build(limit: u64) -> PrimeTables {
        let n = limit as usize;
        let mut is_prime = vec![true; n + 1];
        is_prime[0] = false;
        if n >= 1 {
            is_prime[1] = false;
        }
        let mut d = 2usize;
        while d * d <= n {
            if is_prime[d] {
                let mut m = d * d;
                while m <= n {
                    is_prime[m] = false;
                    m += d;
                }
            }
            d += 1;
        }
        let mut primes = Vec::new();
        let mut pi = vec![0u32; n + 1];
        let mut count = 0u32;
        for x in 0..=n {
            if is_prime[x] {
                count += 1;
                primes.push(x as u64);
            }
            pi[x] = count;
        }
        PrimeTables { limit, is_prime, primes, pi }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primality of `x`; requires `x <= limit()`.
    pub fn is_prime(&self, x: u64) -> bool {
        self.is_prime[x as usize]
    }

    /// `pi(x)`, the number of primes `<= x`; requires `x <= limit()`.
    pub fn prime_count(&self, x: u64) -> u64 {
        u64::from(self.pi[x as usize])
    }

    /// All primes `<= limit()` in increasing order.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The `i`-th prime (1-based: `nth(1) = 2`) if it is inside this table.
    pub fn nth(&self, i: u64) -> Option<u64> {
        if i == 0 {
            return None;
        }
        self.primes.get(i as usize - 1).copied()
    }

    /// Primes `p` with `lo < p <= hi`, requires `hi <= limit()`.
    pub fn primes_in(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.pi[lo.min(self.limit) as usize] as usize;
        let b = self.pi[hi as usize] as usize;
        &self.primes[a..b]
    }
}

/// Shared, growable prime table manager. Cloning the snapshot is cheap; all
/// growth is serialized behind a write lock.
pub struct Primes {
    cap: u64,
    tables: RwLock<Arc<PrimeTables>>,
    ramanujan: Mutex<Vec<u64>>,
}

impl Default for Primes {
    fn default() -> Self {
        Self::new()
    }
}

impl Primes {
    pub fn new() -> Primes {
        Primes::with_cap(DEFAULT_SIEVE_CAP)
    }

    /// A manager whose sieve refuses to grow past `cap` entries.
    pub fn with_cap(cap: u64) -> Primes {
        let initial = 1024.min(cap.max(4));
        Primes {
            cap,
            tables: RwLock::new(Arc::new(PrimeTables::build(initial))),
            ramanujan: Mutex::new(Vec::new()),
        }
    }

    /// The current snapshot without forcing any growth.
    pub fn snapshot(&self) -> Arc<PrimeTables> {
        Arc::clone(&self.tables.read().unwrap())
    }

    /// A snapshot whose limit is at least `limit`, growing the sieve if needed.
    pub fn ensure(&self, limit: u64) -> Result<Arc<PrimeTables>, NumTheoryError> {
        {
            let cur = self.tables.read().unwrap();
            if cur.limit() >= limit {
                return Ok(Arc::clone(&cur));
            }
        }
        if limit > self.cap {
            return Err(NumTheoryError::ResourceLimit { requested: limit, cap: self.cap });
        }
        let mut guard = self.tables.write().unwrap();
        // Someone else may have grown the table while we waited for the lock.
        if guard.limit() < limit {
            let target = limit.max(guard.limit().saturating_mul(2)).min(self.cap);
            *guard = Arc::new(PrimeTables::build(target));
        }
        Ok(Arc::clone(&guard))
    }

    pub fn is_prime(&self, x: u64) -> Result<bool, NumTheoryError> {
        Ok(self.ensure(x.max(2))?.is_prime(x))
    }

    /// `pi(x)`.
    pub fn prime_count(&self, x: u64) -> Result<u64, NumTheoryError> {
        Ok(self.ensure(x.max(2))?.prime_count(x))
    }

    /// The `i`-th prime, 1-based (`nth_prime(1) = 2`). `i = 0` is rejected by
    /// the caller-facing contract; we return an error through the cap check
    /// path only, so the signature stays uniform.
    pub fn nth_prime(&self, i: u64) -> Result<u64, NumTheoryError> {
        assert!(i >= 1, "nth_prime is 1-based");
        // Rosser-type overshoot: p_i < i (ln i + ln ln i) for i >= 6.
        let mut guess = if i < 6 {
            16
        } else {
            let f = i as f64;
            (f * (f.ln() + f.ln().ln())).ceil() as u64 + 16
        };
        loop {
            let t = self.ensure(guess)?;
            if let Some(p) = t.nth(i) {
                return Ok(p);
            }
            guess = guess.saturating_mul(2);
        }
    }

    fn extend_ramanujan(&self, k_max: u64) -> Result<(), NumTheoryError> {
        let mut cache = self.ramanujan.lock().unwrap();
        if cache.len() as u64 >= k_max {
            return Ok(());
        }
        // Grow until pi(x) - pi(x/2) clears k_max + 2 everywhere on the top
        // half of the table; the +2 margin absorbs the one-step fluctuation
        // of the count, making the downward scan below conclusive.
        let mut bound = 1024u64;
        let tables = loop {
            let t = self.ensure(bound)?;
            let top_min = (bound / 2..=bound)
                .map(|x| t.prime_count(x) - t.prime_count(x / 2))
                .min()
                .unwrap();
            if top_min >= k_max + 2 {
                break t;
            }
            bound = bound.saturating_mul(2);
        };
        let mut last_below = vec![1u64; k_max as usize + 1]; // last x with f(x) < k
        for x in 1..=tables.limit() {
            let f = tables.prime_count(x) - tables.prime_count(x / 2);
            if f < k_max {
                for k in (f + 1)..=k_max {
                    last_below[k as usize] = x;
                }
            }
        }
        cache.clear();
        for k in 1..=k_max {
            let r = last_below[k as usize] + 1;
            debug_assert!(tables.is_prime(r), "Ramanujan prime {r} must be prime");
            cache.push(r);
        }
        Ok(())
    }

    /// The `k`-th Ramanujan prime (1-based): least `R` with
    /// `pi(x) - pi(x/2) >= k` for all `x >= R`.
    pub fn ramanujan_prime(&self, k: u64) -> Result<u64, NumTheoryError> {
        assert!(k >= 1, "ramanujan_prime is 1-based");
        self.extend_ramanujan(k)?;
        Ok(self.ramanujan.lock().unwrap()[k as usize - 1])
    }

    /// The table `R_1..R_k_max` in one shot.
    pub fn ramanujan_table(&self, k_max: u64) -> Result<RamanujanTable, NumTheoryError> {
        assert!(k_max >= 1);
        self.extend_ramanujan(k_max)?;
        let cache = self.ramanujan.lock().unwrap();
        Ok(RamanujanTable { values: cache[..k_max as usize].to_vec() })
    }

    /// Least prime `p` with `x < p <= 2x` and `p mod 11` distinct from 1
    /// and 10. Errors if no such prime exists in the window (no integer
    /// `x >= 1` is known to do that; the error is the honest contract).
    pub fn mod11_witness(&self, x: u64) -> Result<u64, NumTheoryError> {
        assert!(x >= 1);
        let two_x = 2 * x;
        let t = self.ensure(two_x.max(2))?;
        for &p in t.primes_in(x, two_x) {
            if p % 11 != 1 && p % 11 != 10 {
                return Ok(p);
            }
        }
        Err(NumTheoryError::WitnessNotFound { x, two_x })
    }

    /// Checks every integer `1..=x_max` for a mod-11 avoiding witness and
    /// returns the arguments that fail (expected: none).
    pub fn verify_mod11_range(&self, x_max: u64) -> Result<Vec<u64>, NumTheoryError> {
        self.ensure((2 * x_max).max(2))?;
        let mut failures = Vec::new();
        for x in 1..=x_max {
            if matches!(self.mod11_witness(x), Err(NumTheoryError::WitnessNotFound { .. })) {
                failures.push(x);
            }
        }
        Ok(failures)
    }
}

/// First `k` Ramanujan primes, `values[k-1] = R_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamanujanTable {
    values: Vec<u64>,
}

impl RamanujanTable {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, k: u64) -> Option<u64> {
        self.values.get(k as usize - 1).copied()
    }
}
