//! Labelings, verification, result records, and lower/upper bound transfers.
//!
//! A [`Labeling`] assigns a positive integer to every vertex; it is *valid*
//! for a graph when the assignment is injective and the endpoint labels of
//! every edge are coprime. The least possible maximum label over all valid
//! labelings of `G` is the minimum coprime number `pr(G)`; a graph with
//! `pr(G) = |V(G)|` is a prime graph.
//!
//! [`PrValue`] is the uniform answer record: an exact value, an upper bound,
//! or a lower bound, tagged with how it was obtained and, for exact values
//! and upper bounds, a witness labeling whose maximum equals the value. The
//! constructors enforce that invariant so a `PrValue` can be trusted at face
//! value.
//!
//! Two lower bounds live here. The independence bound: at most `α(G)` even
//! labels can be used (even labels form an independent set), so
//! `pr(G) ≥ max(2(|V| − α) − 1, |V|)`. The prime-multiple bound: for every
//! prime `p`, vertices with labels divisible by `p` form an independent set;
//! counting multiples of small primes yields `pr(G) ≥ p_{⌊n − α√n⌋}` once
//! `α < √n` and the numeric size hypothesis `p_{⌈√n⌉}² > p_n` holds. The
//! upper-bound transfer: a valid labeling of a spanning supergraph stays
//! valid after deleting edges, so bounds move down the subgraph order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::parse_family;
use crate::graph::Graph;
use crate::numtheory::{gcd, NumTheoryError, Primes};

#[derive(Debug, Error)]
pub enum LabelingError {
    #[error("labels must be positive; label of vertex {vertex} is 0")]
    ZeroLabel { vertex: usize },
    #[error("labeling covers {got} vertices but the graph has {want}")]
    DomainMismatch { got: usize, want: usize },
    #[error("labeling document: {0}")]
    Document(String),
    #[error(transparent)]
    Family(#[from] crate::family::FamilyError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("graphs have different vertex counts: {g} vs {h}")]
    VertexMismatch { g: usize, h: usize },
    #[error("edge ({u}, {v}) of G is missing from H; G must be a spanning subgraph of H")]
    NotSpanningSubgraph { u: usize, v: usize },
    #[error("monotonicity transfer needs an exact or upper-bound value carrying a witness")]
    NeedUpperWitness,
}

/// Injective positive labels, one per vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labeling {
    labels: Vec<u64>,
}

impl Labeling {
    pub fn new(labels: Vec<u64>) -> Result<Labeling, LabelingError> {
        if let Some(v) = labels.iter().position(|&l| l == 0) {
            return Err(LabelingError::ZeroLabel { vertex: v });
        }
        Ok(Labeling { labels })
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn max_label(&self) -> u64 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Full validity check against `g`: domain size, injectivity, and
    /// coprimality across every edge. All violations are collected.
    pub fn verify(&self, g: &Graph) -> Result<(), VerifyFailure> {
        if self.labels.len() != g.n() {
            return Err(VerifyFailure::DomainMismatch { got: self.labels.len(), want: g.n() });
        }
        let mut duplicates = Vec::new();
        let mut seen: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
        for (v, &l) in self.labels.iter().enumerate() {
            if l == 0 {
                duplicates.push(Violation::ZeroLabel { vertex: v });
                continue;
            }
            if let Some(&u) = seen.get(&l) {
                duplicates.push(Violation::DuplicateLabel { u, v, label: l });
            } else {
                seen.insert(l, v);
            }
        }
        let mut bad_edges = Vec::new();
        for (u, v) in g.edges() {
            let (a, b) = (self.labels[u], self.labels[v]);
            if a != 0 && b != 0 {
                let d = gcd(a, b);
                if d != 1 {
                    bad_edges.push(Violation::NonCoprimeEdge { u, v, fu: a, fv: b, gcd: d });
                }
            }
        }
        duplicates.extend(bad_edges);
        if duplicates.is_empty() {
            Ok(())
        } else {
            Err(VerifyFailure::Violations(duplicates))
        }
    }

    /// For a labeling of `join(A, B)` laid out as A-block then B-block,
    /// produces the labeling of `join(B, A)` (blocks swapped in place).
    pub fn swap_join_blocks(&self, a_len: usize, b_len: usize) -> Labeling {
        assert_eq!(a_len + b_len, self.labels.len(), "block sizes must cover the labeling");
        let mut labels = Vec::with_capacity(self.labels.len());
        labels.extend_from_slice(&self.labels[a_len..]);
        labels.extend_from_slice(&self.labels[..a_len]);
        Labeling { labels }
    }
}

/// One concrete defect found by [`Labeling::verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Violation {
    ZeroLabel { vertex: usize },
    DuplicateLabel { u: usize, v: usize, label: u64 },
    NonCoprimeEdge { u: usize, v: usize, fu: u64, fv: u64, gcd: u64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ZeroLabel { vertex } => write!(f, "vertex {vertex} has label 0"),
            Violation::DuplicateLabel { u, v, label } => {
                write!(f, "vertices {u} and {v} share label {label}")
            }
            Violation::NonCoprimeEdge { u, v, fu, fv, gcd } => {
                write!(f, "edge ({u}, {v}) has labels ({fu}, {fv}) with gcd {gcd}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyFailure {
    #[error("labeling covers {got} vertices but the graph has {want}")]
    DomainMismatch { got: usize, want: usize },
    #[error("{} violation(s): {}", .0.len(), .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Violations(Vec<Violation>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrKind {
    Exact,
    UpperBound,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    Construction,
    ExactSearch,
    IndependenceBound,
    PrimeMultipleBound,
    Monotonicity,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Provenance::Formula => "formula",
            Provenance::Construction => "construction",
            Provenance::ExactSearch => "exact-search",
            Provenance::IndependenceBound => "independence-bound",
            Provenance::PrimeMultipleBound => "prime-multiple-bound",
            Provenance::Monotonicity => "monotonicity",
        };
        f.write_str(s)
    }
}

/// A statement about `pr(G)`: exact value, upper bound, or lower bound,
/// with its provenance and (for exact/upper) a witness labeling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrValue {
    kind: PrKind,
    value: u64,
    provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Labeling>,
}

impl PrValue {
    pub fn exact(value: u64, provenance: Provenance, witness: Labeling) -> PrValue {
        assert_eq!(
            witness.max_label(),
            value,
            "exact PrValue needs a witness whose maximum equals the value"
        );
        PrValue { kind: PrKind::Exact, value, provenance, witness: Some(witness) }
    }

    pub fn upper_bound(value: u64, provenance: Provenance, witness: Labeling) -> PrValue {
        assert_eq!(
            witness.max_label(),
            value,
            "upper-bound PrValue needs a witness whose maximum equals the value"
        );
        PrValue { kind: PrKind::UpperBound, value, provenance, witness: Some(witness) }
    }

    pub fn lower_bound(value: u64, provenance: Provenance) -> PrValue {
        PrValue { kind: PrKind::LowerBound, value, provenance, witness: None }
    }

    pub fn kind(&self) -> PrKind {
        self.kind
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn witness(&self) -> Option<&Labeling> {
        self.witness.as_ref()
    }
}

/// Outcome of a bound that only applies under numeric hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundReport {
    Available(PrValue),
    NotApplicable { reason: String },
}

impl BoundReport {
    pub fn available(&self) -> Option<&PrValue> {
        match self {
            BoundReport::Available(v) => Some(v),
            BoundReport::NotApplicable { .. } => None,
        }
    }
}

/// `pr(G) ≥ max(2(|V| − α) − 1, |V|)` where `alpha` must equal `α(G)`: a
/// valid labeling can use at most `α` even labels, so at least `|V| − α`
/// odd labels appear, forcing the maximum up to the `(|V| − α)`-th odd
/// number; and `pr ≥ |V|` always holds by injectivity.
pub fn lower_bound_independence(g: &Graph, alpha: usize) -> PrValue {
    let n = g.n();
    assert!(alpha <= n, "independence number cannot exceed the vertex count");
    let odd_part = (2 * (n - alpha)).saturating_sub(1);
    PrValue::lower_bound(odd_part.max(n) as u64, Provenance::IndependenceBound)
}

/// Prime-multiple lower bound: with `alpha = α(G)` and `n = |V|`, if
/// `α < √n` and `p_{⌈√n⌉}² > p_n`, then `pr(G) ≥ p_{⌊n − α√n⌋}` (index
/// floored, then clamped to at least 1 — flooring only weakens the bound).
/// When a hypothesis fails the bound is reported not-applicable instead of
/// being approximated.
pub fn lower_bound_prime_multiples(
    g: &Graph,
    alpha: usize,
    primes: &Primes,
) -> Result<BoundReport, NumTheoryError> {
    let n = g.n();
    if n == 0 {
        return Ok(BoundReport::NotApplicable { reason: "empty graph".into() });
    }
    let sqrt_n = (n as f64).sqrt();
    if alpha as f64 >= sqrt_n {
        return Ok(BoundReport::NotApplicable {
            reason: format!("needs alpha < sqrt(n); alpha = {alpha}, sqrt(n) ~ {sqrt_n:.2}"),
        });
    }
    let p_root = primes.nth_prime(sqrt_n.ceil() as u64)?;
    let p_n = primes.nth_prime(n as u64)?;
    if p_root * p_root <= p_n {
        return Ok(BoundReport::NotApplicable {
            reason: format!(
                "size hypothesis fails: p_ceil(sqrt(n))^2 = {} <= p_n = {p_n}",
                p_root * p_root
            ),
        });
    }
    let index = ((n as f64) - (alpha as f64) * sqrt_n).floor().max(1.0) as u64;
    let bound = primes.nth_prime(index)?;
    Ok(BoundReport::Available(PrValue::lower_bound(bound, Provenance::PrimeMultipleBound)))
}

/// If `G` is a spanning subgraph of `H` (same vertices, `E(G) ⊆ E(H)`), any
/// valid labeling of `H` is valid for `G`, so `pr(G) ≤ pr(H)`. Transfers
/// `pr_h`'s witness to `G` as an upper bound.
pub fn monotonicity_bound(g: &Graph, h: &Graph, pr_h: &PrValue) -> Result<PrValue, BoundError> {
    if g.n() != h.n() {
        return Err(BoundError::VertexMismatch { g: g.n(), h: h.n() });
    }
    for (u, v) in g.edges() {
        if !h.has_edge(u, v) {
            return Err(BoundError::NotSpanningSubgraph { u, v });
        }
    }
    let witness = match (pr_h.kind(), pr_h.witness()) {
        (PrKind::Exact | PrKind::UpperBound, Some(w)) => w.clone(),
        _ => return Err(BoundError::NeedUpperWitness),
    };
    debug_assert!(witness.verify(g).is_ok(), "transferred witness must stay valid on subgraphs");
    Ok(PrValue::upper_bound(pr_h.value(), Provenance::Monotonicity, witness))
}

/// On-disk JSON form of a labeling: either a family expression string or the
/// literal `"edges"` plus an explicit vertex count and edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelingDoc {
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edges: Option<Vec<(usize, usize)>>,
    pub labels: Vec<u64>,
    pub max: u64,
}

impl LabelingDoc {
    pub fn for_family(expr: &str, labeling: &Labeling) -> LabelingDoc {
        LabelingDoc {
            graph: expr.to_string(),
            n: None,
            edges: None,
            labels: labeling.labels().to_vec(),
            max: labeling.max_label(),
        }
    }

    pub fn for_graph(g: &Graph, labeling: &Labeling) -> LabelingDoc {
        LabelingDoc {
            graph: "edges".to_string(),
            n: Some(g.n()),
            edges: Some(g.edges()),
            labels: labeling.labels().to_vec(),
            max: labeling.max_label(),
        }
    }

    /// Reconstructs the graph and labeling, checking internal consistency
    /// (declared max, label positivity, edge indices).
    pub fn resolve(&self) -> Result<(Graph, Labeling), LabelingError> {
        let graph = if self.graph == "edges" {
            let n = self
                .n
                .ok_or_else(|| LabelingError::Document("graph \"edges\" requires field n".into()))?;
            let mut g = Graph::empty_graph(n);
            for &(u, v) in self.edges.as_deref().unwrap_or(&[]) {
                g.add_edge(u, v)?;
            }
            g
        } else {
            parse_family(&self.graph)?.build()?
        };
        let labeling = Labeling::new(self.labels.clone())?;
        if labeling.max_label() != self.max {
            return Err(LabelingError::Document(format!(
                "declared max {} but labels reach {}",
                self.max,
                labeling.max_label()
            )));
        }
        Ok((graph, labeling))
    }
}
