//! Concrete graphs: storage, generators, and operators.
//!
//! Vertex numbering conventions matter downstream (labeling constructions
//! address blocks by position), so they are fixed here once:
//!
//! * `join(g, h)`: vertices of `g` keep their ids `0..g.n()`, vertices of `h`
//!   are shifted up by `g.n()`, and every cross pair becomes an edge.
//! * `corona(g, h)`: vertices of `g` keep `0..g.n()`; the private copy of `h`
//!   attached to center `i` occupies the contiguous block
//!   `g.n() + i * h.n() ..`, wired internally like `h`, with every block
//!   vertex also joined to its center.
//! * `path(n)` is `0-1-...-(n-1)`; `cycle(n)` closes it with `(n-1)-0`.
//! * `complete_bipartite(a, b)` has parts `0..a` and `a..a+b`.
//!
//! Random graphs are Erdős–Rényi G(n, p) driven by a seeded ChaCha8 stream
//! over pairs `(i, j)` with `i < j` in lexicographic order, so a seed fully
//! determines the graph on every platform.
//!
//! The exact maximum-independent-set search runs Bron–Kerbosch with pivoting
//! on the complement, using 128-bit masks; graphs beyond 128 vertices get an
//! honest error instead of a silently weaker answer.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loops are not allowed (vertex {0})")]
    SelfLoop(usize),
    #[error("edge list parse error at line {line}: {message}")]
    EdgeListParse { line: usize, message: String },
    #[error("exact independence number supports at most 128 vertices, got {0}")]
    TooLargeForExactAlpha(usize),
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// The empty graph (no edges) on `n` vertices.
    pub fn empty_graph(n: usize) -> Graph {
        Graph { n, adj: vec![BTreeSet::new(); n] }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty_graph(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty_graph(n);
        for u in 1..n {
            g.add_edge(u - 1, u).unwrap();
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooSmall(n));
        }
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).unwrap();
        Ok(g)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty_graph(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Erdős–Rényi G(n, p); identical (n, p, seed) always yields the same
    /// graph: pairs are visited in lexicographic order against one ChaCha8
    /// stream seeded from `seed`.
    pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(GraphError::BadProbability(p));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::empty_graph(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        Ok(g)
    }

    pub fn join(g: &Graph, h: &Graph) -> Graph {
        let mut out = Graph::empty_graph(g.n + h.n);
        for (u, nbrs) in g.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.add_edge(u, v).unwrap();
                }
            }
        }
        for (u, nbrs) in h.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.add_edge(g.n + u, g.n + v).unwrap();
                }
            }
        }
        for u in 0..g.n {
            for v in 0..h.n {
                out.add_edge(u, g.n + v).unwrap();
            }
        }
        out
    }

    pub fn corona(g: &Graph, h: &Graph) -> Graph {
        let mut out = Graph::empty_graph(g.n + g.n * h.n);
        for (u, nbrs) in g.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.add_edge(u, v).unwrap();
                }
            }
        }
        for center in 0..g.n {
            let base = g.n + center * h.n;
            for (u, nbrs) in h.adj.iter().enumerate() {
                for &v in nbrs {
                    if u < v {
                        out.add_edge(base + u, base + v).unwrap();
                    }
                }
            }
            for u in 0..h.n {
                out.add_edge(center, base + u).unwrap();
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    /// All edges as (u, v) with u < v, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty_graph(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Parses the plain text format: first non-comment line is the vertex
    /// count, each following line one edge `u v`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_edge_list_str(text: &str) -> Result<Graph, GraphError> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            match graph {
                None => {
                    let n = line.parse::<usize>().map_err(|e| GraphError::EdgeListParse {
                        line: lineno,
                        message: format!("expected vertex count, got {line:?} ({e})"),
                    })?;
                    graph = Some(Graph::empty_graph(n));
                }
                Some(ref mut g) => {
                    let mut it = line.split_whitespace();
                    let (u, v) = match (it.next(), it.next(), it.next()) {
                        (Some(a), Some(b), None) => (a, b),
                        _ => {
                            return Err(GraphError::EdgeListParse {
                                line: lineno,
                                message: format!("expected `u v`, got {line:?}"),
                            })
                        }
                    };
                    let parse = |s: &str| {
                        s.parse::<usize>().map_err(|e| GraphError::EdgeListParse {
                            line: lineno,
                            message: format!("bad vertex {s:?} ({e})"),
                        })
                    };
                    g.add_edge(parse(u)?, parse(v)?)?;
                }
            }
        }
        graph.ok_or(GraphError::EdgeListParse {
            line: 0,
            message: "empty input: expected a vertex count line".into(),
        })
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.n).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    /// Exact maximum independent set via Bron–Kerbosch with pivoting on the
    /// complement (a clique there is an independent set here). Exponential in
    /// the worst case but fast at the sizes this crate searches.
    pub fn max_independent_set(&self) -> Result<Vec<usize>, GraphError> {
        if self.n > 128 {
            return Err(GraphError::TooLargeForExactAlpha(self.n));
        }
        if self.n == 0 {
            return Ok(Vec::new());
        }
        // Complement adjacency as bitmasks.
        let mut comp = vec![0u128; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.has_edge(u, v) {
                    comp[u] |= 1u128 << v;
                }
            }
        }
        let all = if self.n == 128 { u128::MAX } else { (1u128 << self.n) - 1 };
        let mut best = 0u128;
        bron_kerbosch(&comp, 0, all, 0, &mut best);
        Ok((0..self.n).filter(|&v| best >> v & 1 == 1).collect())
    }

    pub fn independence_number(&self) -> Result<usize, GraphError> {
        Ok(self.max_independent_set()?.len())
    }

    /// Exact clique number (max clique of self = max independent set of the
    /// complement).
    pub fn clique_number(&self) -> Result<usize, GraphError> {
        self.complement().independence_number()
    }

    pub fn is_independent_set(&self, vs: &[usize]) -> bool {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if u == v || self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Max clique in the graph given by `adj` bitmasks, over candidate set `p`
/// with excluded set `x`, current clique `r` of size `r_len`; records the
/// best clique mask in `best`.
fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, best: &mut u128) {
    if p == 0 && x == 0 {
        if r.count_ones() > best.count_ones() {
            *best = r;
        }
        return;
    }
    // Bound: even taking all of p cannot beat the incumbent.
    if r.count_ones() + p.count_ones() <= best.count_ones() {
        return;
    }
    // Pivot: vertex of p | x with most neighbors inside p.
    let pivot = {
        let mut cand = p | x;
        let mut arg = 0usize;
        let mut most = -1i64;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let cnt = (adj[v] & p).count_ones() as i64;
            if cnt > most {
                most = cnt;
                arg = v;
            }
        }
        arg
    };
    let mut ext = p & !adj[pivot];
    while ext != 0 {
        let v = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        let bit = 1u128 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], best);
        p &= !bit;
        x |= bit;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_have_expected_shape() {
        assert_eq!(Graph::empty_graph(5).edge_count(), 0);
        assert_eq!(Graph::complete(6).edge_count(), 15);
        assert_eq!(Graph::path(7).edge_count(), 6);
        assert_eq!(Graph::cycle(7).unwrap().edge_count(), 7);
        assert!(Graph::cycle(2).is_err());
        let kb = Graph::complete_bipartite(3, 4);
        assert_eq!(kb.edge_count(), 12);
        assert!(kb.has_edge(0, 3) && !kb.has_edge(0, 1) && !kb.has_edge(3, 4));
    }

    #[test]
    fn path_and_cycle_adjacency() {
        let p = Graph::path(5);
        assert!(p.has_edge(0, 1) && p.has_edge(3, 4) && !p.has_edge(0, 4));
        let c = Graph::cycle(5).unwrap();
        assert!(c.has_edge(0, 4));
        for v in 0..5 {
            assert_eq!(c.degree(v), 2);
        }
    }

    #[test]
    fn join_block_layout() {
        let g = Graph::join(&Graph::path(3), &Graph::path(2));
        assert_eq!(g.n(), 5);
        // 2 + 1 path edges + 6 cross edges.
        assert_eq!(g.edge_count(), 9);
        assert!(g.has_edge(0, 1) && g.has_edge(3, 4));
        assert!(!g.has_edge(0, 2));
        for u in 0..3 {
            for v in 3..5 {
                assert!(g.has_edge(u, v), "cross edge {u}-{v}");
            }
        }
    }

    #[test]
    fn corona_block_layout() {
        let g = Graph::corona(&Graph::complete(3), &Graph::empty_graph(2));
        assert_eq!(g.n(), 9);
        // K_3 edges + 3 centers * 2 pendants.
        assert_eq!(g.edge_count(), 3 + 6);
        for center in 0..3 {
            for k in 0..2 {
                assert!(g.has_edge(center, 3 + 2 * center + k));
            }
        }
        assert!(!g.has_edge(3, 4), "pendants of one copy stay non-adjacent");
        assert!(!g.has_edge(0, 5), "no edge to another center's copy");

        let with_edges = Graph::corona(&Graph::path(2), &Graph::path(2));
        // 1 path edge + 2 copies * (1 internal + 2 spokes).
        assert_eq!(with_edges.edge_count(), 1 + 2 * 3);
        assert!(with_edges.has_edge(2, 3) && with_edges.has_edge(4, 5));
    }

    #[test]
    fn gnp_is_deterministic_per_seed() {
        let a = Graph::gnp(30, 0.4, 7).unwrap();
        let b = Graph::gnp(30, 0.4, 7).unwrap();
        let c = Graph::gnp(30, 0.4, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(Graph::gnp(20, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(Graph::gnp(20, 1.0, 1).unwrap().edge_count(), 190);
        assert!(Graph::gnp(5, 1.5, 0).is_err());
        // Loose sanity band around the expected count for p = 1/2.
        let mid = Graph::gnp(40, 0.5, 123).unwrap().edge_count();
        assert!((250..=530).contains(&mid), "edge count {mid} implausible for G(40, 1/2)");
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = Graph::join(&Graph::cycle(4).unwrap(), &Graph::empty_graph(2));
        let text = g.to_edge_list_string();
        assert_eq!(Graph::from_edge_list_str(&text).unwrap(), g);

        let commented = "# a graph\n3\n\n0 1\n1 2\n";
        assert_eq!(Graph::from_edge_list_str(commented).unwrap().edge_count(), 2);

        assert!(Graph::from_edge_list_str("").is_err());
        assert!(Graph::from_edge_list_str("3\n0 3\n").is_err());
        assert!(Graph::from_edge_list_str("3\n0 0\n").is_err());
        assert!(Graph::from_edge_list_str("3\n0 1 2\n").is_err());
        assert!(Graph::from_edge_list_str("x\n").is_err());
    }

    #[test]
    fn independence_number_closed_forms() {
        assert_eq!(Graph::complete(7).independence_number().unwrap(), 1);
        assert_eq!(Graph::empty_graph(7).independence_number().unwrap(), 7);
        assert_eq!(Graph::path(7).independence_number().unwrap(), 4); // ceil(7/2)
        assert_eq!(Graph::path(8).independence_number().unwrap(), 4);
        assert_eq!(Graph::cycle(7).unwrap().independence_number().unwrap(), 3); // floor(7/2)
        assert_eq!(Graph::cycle(8).unwrap().independence_number().unwrap(), 4);
        assert_eq!(Graph::complete_bipartite(3, 5).independence_number().unwrap(), 5);
        let join = Graph::join(&Graph::path(6), &Graph::path(9));
        assert_eq!(join.independence_number().unwrap(), 5); // max(3, 5)
        let corona = Graph::corona(&Graph::complete(4), &Graph::empty_graph(3));
        assert_eq!(corona.independence_number().unwrap(), 12); // n * m pendants
    }

    /// Exhaustive independent-set oracle for small graphs.
    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if g.is_independent_set(&vs) {
                best = best.max(vs.len());
            }
        }
        best
    }

    #[test]
    fn independence_number_matches_brute_force_on_random_graphs() {
        for seed in 0..30u64 {
            let p = 0.1 + 0.8 * (seed as f64 / 30.0);
            let g = Graph::gnp(12, p, seed).unwrap();
            let set = g.max_independent_set().unwrap();
            assert!(g.is_independent_set(&set));
            assert_eq!(set.len(), brute_alpha(&g), "seed {seed}");
        }
    }

    #[test]
    fn clique_number_on_known_graphs() {
        assert_eq!(Graph::complete(6).clique_number().unwrap(), 6);
        assert_eq!(Graph::cycle(5).unwrap().clique_number().unwrap(), 2);
        assert_eq!(Graph::complete_bipartite(4, 4).clique_number().unwrap(), 2);
        let g = Graph::join(&Graph::complete(3), &Graph::complete(2));
        assert_eq!(g.clique_number().unwrap(), 5);
    }

    #[test]
    fn alpha_rejects_oversized_graphs() {
        assert!(matches!(
            Graph::empty_graph(129).independence_number(),
            Err(GraphError::TooLargeForExactAlpha(129))
        ));
    }
}
