//! Named graphs, balanced partite constructions, counting formulas, and the
//! recurrence identities relating them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::system::{make_system, TripleSystem, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("order {0} too small, need n >= 3")]
    OrderTooSmall(usize),
    #[error("need at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("blow-up factor must be at least 1")]
    ZeroBlowUp,
    #[error("unknown graph name: {0}")]
    UnknownName(String),
    #[error("identity index {0} out of range 1..=4")]
    UnknownIdentity(u8),
    #[error("arguments out of range for identity {which}: n={n}, k={k}")]
    IdentityOutOfRange { which: u8, n: usize, k: usize },
}

/// A simple 2-graph (used for Turán graphs and link underlying graphs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph2 {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl Graph2 {
    pub fn new(n: usize, mut edges: Vec<[Vertex; 2]>) -> Self {
        for e in edges.iter_mut() {
            assert!(e[0] != e[1], "loops are not allowed");
            assert!((e[0] as usize) < n && (e[1] as usize) < n);
            e.sort_unstable();
        }
        edges.sort_unstable();
        edges.dedup();
        Graph2 { n, edges }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[Vertex; 2]] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let e = [u.min(v), u.max(v)];
        self.edges.binary_search(&e).is_ok()
    }
}

/// Balanced part sizes for `n` vertices in `k` parts, largest first.
pub fn balanced_parts(k: usize, n: usize) -> Vec<usize> {
    let q = n / k;
    let r = n % k;
    (0..k).map(|i| if i < r { q + 1 } else { q }).collect()
}

/// Vertex blocks of the balanced partition, largest parts on the
/// lowest-numbered vertices.
fn part_blocks(k: usize, n: usize) -> Vec<Vec<Vertex>> {
    let sizes = balanced_parts(k, n);
    let mut blocks = Vec::with_capacity(k);
    let mut next = 0 as Vertex;
    for s in sizes {
        blocks.push((next..next + s as Vertex).collect());
        next += s as Vertex;
    }
    blocks
}

/// Edge count of the complete balanced tripartite 3-graph S3(n).
///
/// Total on purpose: returns 0 for n < 3 so search bound arithmetic needs no
/// case split.
pub fn s3_count(n: usize) -> usize {
    if n < 3 {
        return 0;
    }
    balanced_parts(3, n).iter().product()
}

/// The complete balanced tripartite 3-graph S3(n): all transversal triples.
pub fn s3_graph(n: usize) -> Result<TripleSystem, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::OrderTooSmall(n));
    }
    let blocks = part_blocks(3, n);
    let mut triples = Vec::with_capacity(s3_count(n));
    for &a in &blocks[0] {
        for &b in &blocks[1] {
            for &c in &blocks[2] {
                triples.push([a, b, c]);
            }
        }
    }
    Ok(make_system(n, &triples).expect("construction is valid"))
}

/// Edge count of the k-partite Turán graph T_k(n).
pub fn tk_count(k: usize, n: usize) -> usize {
    if k < 2 || n < 2 {
        return 0;
    }
    let within: usize = balanced_parts(k, n)
        .iter()
        .map(|s| s * s.saturating_sub(1) / 2)
        .sum();
    n * (n - 1) / 2 - within
}

/// The complete balanced k-partite 2-graph T_k(n).
pub fn turan_graph(k: usize, n: usize) -> Result<Graph2, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::TooFewParts(k));
    }
    let blocks = part_blocks(k, n);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            for &u in &blocks[i] {
                for &v in &blocks[j] {
                    edges.push([u, v]);
                }
            }
        }
    }
    Ok(Graph2::new(n, edges))
}

/// The fixed forbidden-configuration graphs, with the edge lists used
/// throughout (1-based in the literature, 0-based here).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    /// K4- = {123,124,134}
    K4Minus,
    /// F5 = {123,124,345}
    F5,
    /// F6 = {123,124,345,156}
    F6,
    /// K4(3) = {123,124,134,234}
    K4Complete,
    /// C5(3) = {123,234,345,145,125}
    C5Tight,
}

impl NamedGraph {
    pub fn system(self) -> TripleSystem {
        let (n, edges): (usize, &[[Vertex; 3]]) = match self {
            NamedGraph::K4Minus => (4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]),
            NamedGraph::F5 => (5, &[[0, 1, 2], [0, 1, 3], [2, 3, 4]]),
            NamedGraph::F6 => (6, &[[0, 1, 2], [0, 1, 3], [2, 3, 4], [0, 4, 5]]),
            NamedGraph::K4Complete => (4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]),
            NamedGraph::C5Tight => (
                5,
                &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]],
            ),
        };
        make_system(n, edges).expect("fixed edge lists are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedGraph::K4Minus => "k4_minus",
            NamedGraph::F5 => "f5",
            NamedGraph::F6 => "f6",
            NamedGraph::K4Complete => "k4_3",
            NamedGraph::C5Tight => "c5_3",
        }
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGraph {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k4_minus" | "k4-" => Ok(NamedGraph::K4Minus),
            "f5" => Ok(NamedGraph::F5),
            "f6" => Ok(NamedGraph::F6),
            "k4_3" => Ok(NamedGraph::K4Complete),
            "c5_3" => Ok(NamedGraph::C5Tight),
            other => Err(ConstructionError::UnknownName(other.to_string())),
        }
    }
}

/// Fixed graph by identifier.
pub fn named(id: NamedGraph) -> TripleSystem {
    id.system()
}

/// The blow-up H(t): each vertex becomes a block of t clones, each original
/// edge the complete tripartite 3-graph across its blocks. Vertex a maps to
/// the contiguous block [a*t, (a+1)*t).
pub fn blow_up(h: &TripleSystem, t: usize) -> Result<TripleSystem, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::ZeroBlowUp);
    }
    let n = h.order() * t;
    let mut triples = Vec::with_capacity(h.size() * t * t * t);
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        for i in 0..t {
            for j in 0..t {
                for k in 0..t {
                    triples.push([
                        a * t as Vertex + i as Vertex,
                        b * t as Vertex + j as Vertex,
                        c * t as Vertex + k as Vertex,
                    ]);
                }
            }
        }
    }
    Ok(make_system(n, &triples).expect("blow-up is valid"))
}

/// Checks one of the four counting identities:
///
/// 1. s3(n) = s3(n-3) + t3(n-3) + n - 2
/// 2. t3(n) = t3(n-3) + 2n - 3
/// 3. t3(n) = t3(n-2) + n - 1 + floor(n/3)
/// 4. t_k(n) = t_k(n-1) + n - ceil(n/k)
pub fn counting_identity(which: u8, n: usize, k: usize) -> Result<bool, ConstructionError> {
    let out_of_range = |which| ConstructionError::IdentityOutOfRange { which, n, k };
    match which {
        1 => {
            if n < 6 {
                return Err(out_of_range(1));
            }
            Ok(s3_count(n) == s3_count(n - 3) + tk_count(3, n - 3) + n - 2)
        }
        2 => {
            if n < 6 {
                return Err(out_of_range(2));
            }
            Ok(tk_count(3, n) == tk_count(3, n - 3) + 2 * n - 3)
        }
        3 => {
            if n < 5 {
                return Err(out_of_range(3));
            }
            Ok(tk_count(3, n) == tk_count(3, n - 2) + n - 1 + n / 3)
        }
        4 => {
            if k < 3 || n < k {
                return Err(out_of_range(4));
            }
            Ok(tk_count(k, n) == tk_count(k, n - 1) + n - n.div_ceil(k))
        }
        other => Err(ConstructionError::UnknownIdentity(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_counts() {
        assert_eq!(s3_count(8), 18);
        assert_eq!(s3_count(3), 1);
        assert_eq!(s3_count(9), 27);
        assert_eq!(s3_count(6), 8);
        assert_eq!(s3_count(2), 0);
        assert_eq!(s3_count(0), 0);
    }

    #[test]
    fn s3_graph_matches_count() {
        for n in 3..=12 {
            assert_eq!(s3_graph(n).unwrap().size(), s3_count(n), "n={n}");
        }
        assert!(s3_graph(2).is_err());
    }

    #[test]
    fn s3_parts_balanced() {
        let parts = balanced_parts(3, 8);
        assert_eq!(parts, vec![3, 3, 2]);
        assert!(parts[0] - parts[2] <= 1);
    }

    #[test]
    fn turan_counts() {
        assert_eq!(tk_count(3, 6), 12);
        assert_eq!(tk_count(3, 3), 3);
        assert_eq!(tk_count(4, 8), 24);
        assert_eq!(tk_count(2, 4), 4);
    }

    #[test]
    fn turan_graph_matches_count() {
        for k in 2..=5 {
            for n in 1..=12 {
                assert_eq!(turan_graph(k, n).unwrap().size(), tk_count(k, n));
            }
        }
        assert!(turan_graph(1, 5).is_err());
    }

    #[test]
    fn named_edge_lists() {
        assert_eq!(named(NamedGraph::F6).size(), 4);
        assert_eq!(named(NamedGraph::F6).order(), 6);
        assert_eq!(named(NamedGraph::C5Tight).size(), 5);
        assert_eq!(named(NamedGraph::C5Tight).order(), 5);
        assert_eq!(named(NamedGraph::K4Complete).size(), 4);
        assert_eq!(named(NamedGraph::K4Complete).order(), 4);
        assert_eq!(named(NamedGraph::K4Minus).size(), 3);
        assert_eq!(named(NamedGraph::F5).size(), 3);
    }

    #[test]
    fn blow_up_counts() {
        let k4m = named(NamedGraph::K4Minus);
        let b1 = blow_up(&k4m, 1).unwrap();
        assert!(crate::canon::are_isomorphic(&b1, &k4m));
        let b2 = blow_up(&k4m, 2).unwrap();
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.size(), 24);
        assert!(blow_up(&k4m, 0).is_err());
    }

    #[test]
    fn identities_small() {
        assert!(counting_identity(1, 9, 3).unwrap()); // 27 = 8+12+7
        assert!(counting_identity(2, 9, 3).unwrap()); // 27 = 12+15
        assert!(counting_identity(4, 9, 4).unwrap()); // 30 = 24+9-3
        assert!(counting_identity(1, 5, 3).is_err());
        assert!(counting_identity(5, 9, 3).is_err());
    }

    #[test]
    fn identities_through_one_thousand() {
        for n in 6..=1000 {
            assert!(counting_identity(1, n, 3).unwrap(), "identity 1 at n={n}");
            assert!(counting_identity(2, n, 3).unwrap(), "identity 2 at n={n}");
        }
        for n in 5..=1000 {
            assert!(counting_identity(3, n, 3).unwrap(), "identity 3 at n={n}");
        }
        for k in 3..=10 {
            for n in k..=1000 {
                assert!(counting_identity(4, n, k).unwrap(), "identity 4 at n={n}, k={k}");
            }
        }
    }
}
