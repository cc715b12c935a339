//! Joins with cycle factors: `C_m + C_n`, `C_m + P_n`, and `P_m + C_n`.
//!
//! These reuse the path-join pipeline. The `[1, q_1, …, q_{n−1}]` side
//! closes into a cycle for free (`1` is coprime to everything). Closing the
//! pool side is harder: for odd `m` the pool `[2, L]` holds one even too
//! many to seat around an odd cycle, so one top element is traded for the
//! next odd value past the window, nudging the optimum up to `m + 2n`.
//! Even `m` closes as-is and the value stays `m + 2n − 1`; a path on the
//! pool side (`P_m + C_n`) needs no trade and keeps the path-join value.
//!
//! As with path joins, exactness is self-certified: the witness is
//! re-verified and its max equals the independence lower bound.

use super::pathjoin::{
    join_alpha, join_graph, pipeline_parts, pipeline_threshold, search_join_exact, JoinShape,
    PipelineParts,
};
use super::ConstructionError;
use crate::labeling::{lower_bound_independence, Labeling, PrValue, Provenance};
use crate::numtheory::Primes;

/// Which factors of the join are cycles. The first size argument always
/// names the first factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleJoinKind {
    /// `join(C_m, C_n)`
    CycleCycle,
    /// `join(C_m, P_n)`
    CyclePath,
    /// `join(P_m, C_n)`
    PathCycle,
}

impl CycleJoinKind {
    fn shape(self) -> JoinShape {
        match self {
            CycleJoinKind::CycleCycle => JoinShape::CycleCycle,
            CycleJoinKind::CyclePath => JoinShape::CyclePath,
            CycleJoinKind::PathCycle => JoinShape::PathCycle,
        }
    }

    fn first_is_cycle(self) -> bool {
        !matches!(self, CycleJoinKind::PathCycle)
    }

    fn second_is_cycle(self) -> bool {
        !matches!(self, CycleJoinKind::CyclePath)
    }

    /// The same graph with the factors listed the other way around.
    fn flipped(self) -> CycleJoinKind {
        match self {
            CycleJoinKind::CycleCycle => CycleJoinKind::CycleCycle,
            CycleJoinKind::CyclePath => CycleJoinKind::PathCycle,
            CycleJoinKind::PathCycle => CycleJoinKind::CyclePath,
        }
    }
}

/// Value claimed by the closed form once the larger side is big enough.
fn formula_value(kind: CycleJoinKind, big: usize, small: usize) -> u64 {
    let (b, s) = (big as u64, small as u64);
    match (kind, big % 2) {
        (CycleJoinKind::PathCycle, 1) => b + 2 * s - 2,
        (CycleJoinKind::CycleCycle | CycleJoinKind::CyclePath, 1) => b + 2 * s,
        (_, _) => b + 2 * s - 1,
    }
}

fn validate(kind: CycleJoinKind, m: usize, n: usize) -> Result<(), ConstructionError> {
    let need = |is_cycle: bool, k: usize, side: &str| {
        if is_cycle && k < 3 {
            Err(ConstructionError::Precondition(format!(
                "{side} factor is a cycle and needs >= 3 vertices, got {k}"
            )))
        } else if !is_cycle && k < 2 {
            Err(ConstructionError::Precondition(format!(
                "{side} factor is a path and needs >= 2 vertices, got {k}"
            )))
        } else {
            Ok(())
        }
    };
    need(kind.first_is_cycle(), m, "first")?;
    need(kind.second_is_cycle(), n, "second")
}

/// Coverage of the closed form for cycle joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Coverage {
    Covered,
    BelowThreshold { threshold: usize },
}

/// The construction needs the larger side at (or past) the path-join
/// pipeline threshold, and at least 5 so the odd-cycle templates fit.
pub(crate) fn coverage(
    kind: CycleJoinKind,
    m: usize,
    n: usize,
    primes: &Primes,
) -> Result<Coverage, ConstructionError> {
    validate(kind, m, n)?;
    let (big, small) = (m.max(n), m.min(n));
    let threshold = pipeline_threshold(small, primes)?.max(5);
    if big >= threshold {
        Ok(Coverage::Covered)
    } else {
        Ok(Coverage::BelowThreshold { threshold })
    }
}

/// Optimal labeling of the requested join with the exact value. Above the
/// coverage threshold this is the pipeline-plus-surgery construction; below
/// it the exact solver settles the instance (there the closed form may not
/// apply — `C_3 + C_3` is `K_6`).
pub fn cycle_join_labeling(
    m: usize,
    n: usize,
    kind: CycleJoinKind,
    primes: &Primes,
) -> Result<PrValue, ConstructionError> {
    validate(kind, m, n)?;
    let swapped = n > m;
    let (norm_kind, big, small) =
        if swapped { (kind.flipped(), n, m) } else { (kind, m, n) };

    if let Coverage::BelowThreshold { .. } = coverage(kind, m, n, primes)? {
        return search_join_exact(kind.shape(), m, n, primes);
    }

    let value = formula_value(norm_kind, big, small);
    let built = match pipeline_parts(big, small, primes) {
        Ok(parts) => assemble(norm_kind, big, small, &parts, value, primes),
        Err(reason) => Err(reason),
    };
    let normalized = match built {
        Ok(v) => v,
        Err(reason) => {
            // Surgery is checked, never trusted; a refused template falls
            // back to search, which must still land on the covered value.
            if big + small > 64 {
                return Err(ConstructionError::Failure(format!(
                    "cycle join ({big}, {small}): {reason}, and too large for exact search"
                )));
            }
            let v = search_join_exact(norm_kind.shape(), big, small, primes)?;
            if v.value() != value {
                return Err(ConstructionError::FormulaViolation(format!(
                    "cycle join ({big}, {small}): searched {} but formula says {value}",
                    v.value()
                )));
            }
            v
        }
    };
    if !swapped {
        return Ok(normalized);
    }
    let witness = normalized.witness().unwrap().swap_join_blocks(big, small);
    let g = join_graph(kind.shape(), m, n);
    witness
        .verify(&g)
        .map_err(|e| ConstructionError::Failure(format!("swapped cycle-join witness: {e}")))?;
    Ok(PrValue::exact(normalized.value(), normalized.provenance(), witness))
}

/// Builds the big-side sequence, assembles both blocks, verifies on the
/// real graph, and certifies against the independence bound.
fn assemble(
    kind: CycleJoinKind,
    big: usize,
    small: usize,
    parts: &PipelineParts,
    value: u64,
    primes: &Primes,
) -> Result<PrValue, String> {
    let big_seq: Vec<u64> = if kind == CycleJoinKind::PathCycle {
        parts.pm.clone()
    } else {
        cycle_sequence(parts, big, small, primes)?
    };
    let mut labels = big_seq;
    labels.extend_from_slice(&parts.pn);
    let g = join_graph(kind.shape(), big, small);
    let witness = Labeling::new(labels).map_err(|e| e.to_string())?;
    witness.verify(&g).map_err(|e| format!("assembled witness rejected: {e}"))?;
    if witness.max_label() != value {
        return Err(format!("witness max {} != formula value {value}", witness.max_label()));
    }
    let alpha = join_alpha(kind.first_is_cycle(), big, kind.second_is_cycle(), small);
    let lb = lower_bound_independence(&g, alpha);
    if lb.value() != value {
        return Err(format!("independence bound {} does not meet value {value}", lb.value()));
    }
    Ok(PrValue::exact(value, Provenance::Construction, witness))
}

/// Orders the pool side into a cycle. Even `big` closes between 2 and an
/// odd top element; odd `big` trades one top element for `big + 2·small`
/// (odd, and past the window so coprime to every chosen prime).
fn cycle_sequence(
    parts: &PipelineParts,
    big: usize,
    small: usize,
    primes: &Primes,
) -> Result<Vec<u64>, String> {
    let l = parts.l;
    let hi = big as u64 + 2 * small as u64;
    if parts.short_circuit {
        if big % 2 == 0 {
            // [2, big + 1] closes fine: the ends 2 and big + 1 are coprime.
            return Ok((2..=big as u64 + 1).collect());
        }
        if big < 5 {
            return Err("odd short-circuit cycle template needs at least 5 vertices".into());
        }
        // Odd count: [2, big + 1] has one even too many for an odd cycle.
        // Drop big + 1, close through 2, and seat hi between 2 and 4.
        let mut seq = vec![4u64, 3];
        seq.extend(5..=big as u64);
        seq.push(2);
        seq.push(hi);
        return Ok(seq);
    }
    let s = &parts.s_final;
    let q_last = *parts.qs.last().unwrap();
    if big % 2 == 0 {
        return Ok(s[..big].to_vec());
    }
    if q_last < l {
        // Pool is one short of big; appending hi after the top element l
        // works: consecutive odd numbers l and hi = l + 2 are coprime.
        let mut seq = s.clone();
        seq.push(hi);
        return Ok(seq);
    }
    // q_last = l: the pool has exactly big elements but tops out below l,
    // so one of them must be traded for hi to reach the value.
    let mut seq = s.clone();
    if !primes.is_prime(l - 2).map_err(|e| e.to_string())? {
        // Pool ends at l − 1; gcd(l − 2, hi) divides 4 and both are odd.
        *seq.last_mut().unwrap() = hi;
        return Ok(seq);
    }
    if hi % 3 != 0 {
        // Twin primes on top: pool ends at l − 3, preceded by l − 4, and
        // gcd(l − 4, hi) divides 6 with 3 ruled out by the guard.
        *seq.last_mut().unwrap() = hi;
        return Ok(seq);
    }
    // 3 | hi: hi cannot sit next to 3's neighbors at the top (l − 4 shares
    // the residue), so rebuild the seam: hi leads, then 4, 3, then the pool
    // from 5 up to l − 4, closing through 2.
    let mut seam = vec![hi, 4, 3];
    seam.extend(s.iter().copied().filter(|&v| (5..=l - 4).contains(&v)));
    seam.push(2);
    if seam.len() != big {
        return Err(format!("seam arrangement has {} labels, expected {big}", seam.len()));
    }
    Ok(seam)
}
