//! Triple systems (3-uniform hypergraphs) with dense colex bitset encoding.

use std::fmt;

use thiserror::Error;

/// Vertex index. Systems are 0-based internally; file formats are 1-based.
pub type Vertex = u16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("repeated vertex {vertex} within a triple")]
    RepeatedVertex { vertex: Vertex },
    #[error("vertices {0} and {1} must be distinct")]
    SamePair(Vertex, Vertex),
    #[error("vertex {vertex} not in the system")]
    VertexNotInSystem { vertex: Vertex },
    #[error("edge {0} not in the system")]
    EdgeNotInSystem(Triple),
}

/// A sorted 3-element vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([Vertex; 3]);

impl Triple {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self, SystemError> {
        if a == b || a == c {
            return Err(SystemError::RepeatedVertex { vertex: a });
        }
        if b == c {
            return Err(SystemError::RepeatedVertex { vertex: b });
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(Triple(v))
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// Number of vertices shared with `other`.
    pub fn overlap(&self, other: &Triple) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    /// Position of this triple in the colexicographic order of all triples.
    ///
    /// Stable under padding: the index does not depend on the order of the
    /// ambient system.
    pub fn colex_index(&self) -> usize {
        let [a, b, c] = self.0;
        let (a, b, c) = (a as usize, b as usize, c as usize);
        c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
    }

    /// Inverse of [`Triple::colex_index`].
    pub fn from_colex_index(idx: usize) -> Triple {
        let mut c = 2usize;
        while (c + 1) * c * (c - 1) / 6 <= idx {
            c += 1;
        }
        let rem = idx - c * (c - 1) * (c - 2) / 6;
        let mut b = 1usize;
        while (b + 1) * b / 2 <= rem {
            b += 1;
        }
        let a = rem - b * (b - 1) / 2;
        Triple([a as Vertex, b as Vertex, c as Vertex])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Number of triples on `n` vertices.
pub fn triple_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// A 3-graph: a vertex count and a sorted, deduplicated set of triples.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    n: usize,
    edges: Vec<Triple>,
}

impl TripleSystem {
    /// Builds a system from raw triples, deduplicating and sorting.
    pub fn new<I>(n: usize, triples: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = [Vertex; 3]>,
    {
        let mut edges = Vec::new();
        for [a, b, c] in triples {
            for v in [a, b, c] {
                if (v as usize) >= n {
                    return Err(SystemError::VertexOutOfRange { vertex: v, n });
                }
            }
            edges.push(Triple::new(a, b, c)?);
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(TripleSystem { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        TripleSystem { n, edges: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edge count, usually written e(G).
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn has_edge(&self, t: &Triple) -> bool {
        self.edges.binary_search(t).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).map(|v| v as Vertex)
    }

    /// Number of edges containing vertex `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|t| t.contains(v)).count()
    }

    /// Number of vertices z with {x,y,z} an edge.
    pub fn codegree(&self, x: Vertex, y: Vertex) -> Result<usize, SystemError> {
        if x == y {
            return Err(SystemError::SamePair(x, y));
        }
        for v in [x, y] {
            if (v as usize) >= self.n {
                return Err(SystemError::VertexNotInSystem { vertex: v });
            }
        }
        Ok(self
            .edges
            .iter()
            .filter(|t| t.contains(x) && t.contains(y))
            .count())
    }

    /// Induced subgraph on `sub` (treated as a set), vertices relabeled to
    /// 0..|sub|-1 preserving order.
    pub fn induced(&self, sub: &[Vertex]) -> Result<TripleSystem, SystemError> {
        let mut keep: Vec<Vertex> = sub.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            if (v as usize) >= self.n {
                return Err(SystemError::VertexNotInSystem { vertex: v });
            }
        }
        let relabel = |v: Vertex| keep.binary_search(&v).ok().map(|i| i as Vertex);
        let mut edges = Vec::new();
        for t in &self.edges {
            let [a, b, c] = t.vertices();
            if let (Some(a), Some(b), Some(c)) = (relabel(a), relabel(b), relabel(c)) {
                edges.push(Triple::new(a, b, c).expect("relabeling preserves distinctness"));
            }
        }
        edges.sort_unstable();
        Ok(TripleSystem {
            n: keep.len(),
            edges,
        })
    }

    /// Induced subgraph G - {a,b,c} after deleting the vertices of `t`.
    pub fn delete_triple(&self, t: &Triple) -> TripleSystem {
        let rest: Vec<Vertex> = self.vertices().filter(|v| !t.contains(*v)).collect();
        self.induced(&rest).expect("vertices come from the system")
    }

    /// Dense bitset over the colex-ordered triples, little-endian u64 words.
    pub fn colex_bitset(&self) -> Vec<u64> {
        let words = triple_count(self.n).div_ceil(64);
        let mut mask = vec![0u64; words];
        for t in &self.edges {
            let i = t.colex_index();
            mask[i / 64] |= 1u64 << (i % 64);
        }
        mask
    }

    /// Rebuilds a system from a colex bitset.
    pub fn from_colex_bitset(n: usize, mask: &[u64]) -> TripleSystem {
        let total = triple_count(n);
        let mut edges = Vec::new();
        for i in 0..total {
            if mask.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1) {
                edges.push(Triple::from_colex_index(i));
            }
        }
        edges.sort_unstable();
        TripleSystem { n, edges }
    }

    /// Applies a vertex permutation; `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> TripleSystem {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<Triple> = self
            .edges
            .iter()
            .map(|t| {
                let [a, b, c] = t.vertices();
                Triple::new(
                    perm[a as usize],
                    perm[b as usize],
                    perm[c as usize],
                )
                .expect("permutation preserves distinctness")
            })
            .collect();
        edges.sort_unstable();
        TripleSystem { n: self.n, edges }
    }

    /// Returns the system with one extra edge (no-op if present).
    pub fn with_edge(&self, t: Triple) -> TripleSystem {
        let mut edges = self.edges.clone();
        match edges.binary_search(&t) {
            Ok(_) => {}
            Err(pos) => edges.insert(pos, t),
        }
        TripleSystem { n: self.n, edges }
    }
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, t) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", t)?;
        }
        write!(f, "}}")
    }
}

/// Convenience constructor for literal edge lists.
pub fn make_system(n: usize, triples: &[[Vertex; 3]]) -> Result<TripleSystem, SystemError> {
    TripleSystem::new(n, triples.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_minus_has_three_edges() {
        // K4- = {123,124,134}, relabeled 0-based.
        let g = make_system(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        assert_eq!(g.size(), 3);
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn empty_graph_has_size_zero() {
        let g = make_system(3, &[]).unwrap();
        assert_eq!(g.size(), 0);
    }

    #[test]
    fn duplicate_insertion_dedups() {
        let g = make_system(5, &[[0, 1, 2], [0, 1, 2]]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = make_system(4, &[[0, 1, 4]]).unwrap_err();
        assert_eq!(err, SystemError::VertexOutOfRange { vertex: 4, n: 4 });
    }

    #[test]
    fn rejects_repeated_vertex() {
        let err = make_system(4, &[[0, 1, 1]]).unwrap_err();
        assert_eq!(err, SystemError::RepeatedVertex { vertex: 1 });
    }

    #[test]
    fn colex_index_round_trips() {
        for i in 0..triple_count(12) {
            let t = Triple::from_colex_index(i);
            assert_eq!(t.colex_index(), i);
        }
        assert_eq!(Triple::new(0, 1, 2).unwrap().colex_index(), 0);
        assert_eq!(Triple::new(0, 1, 3).unwrap().colex_index(), 1);
    }

    #[test]
    fn codegree_counts_third_vertices() {
        let g = make_system(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        assert_eq!(g.codegree(0, 1).unwrap(), 2);
        assert_eq!(g.codegree(2, 3).unwrap(), 1);
        assert!(g.codegree(1, 1).is_err());
    }

    #[test]
    fn codegree_sum_is_three_times_size() {
        let g = make_system(5, &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]]).unwrap();
        let mut sum = 0;
        for x in 0..5 {
            for y in (x + 1)..5 {
                sum += g.codegree(x, y).unwrap();
            }
        }
        assert_eq!(sum, 3 * g.size());
    }

    #[test]
    fn induced_on_triangle_of_k4_minus() {
        let g = make_system(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        let h = g.induced(&[0, 1, 2]).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.size(), 1);
    }

    #[test]
    fn induced_after_removing_a_full_part_is_empty() {
        // every edge of S3(6) is transversal, so dropping a part kills all
        let g = crate::constructions::s3_graph(6).unwrap();
        // parts are {0,1}, {2,3}, {4,5}
        let h = g.induced(&[0, 1, 2, 3]).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.size(), 0);
    }

    #[test]
    fn induced_c5_on_any_four_vertices_has_two_edges() {
        let g = make_system(5, &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]]).unwrap();
        for drop in 0..5 {
            let keep: Vec<Vertex> = (0..5).filter(|v| *v != drop).collect();
            assert_eq!(g.induced(&keep).unwrap().size(), 2, "drop {drop}");
        }
    }

    #[test]
    fn codegree_zero_within_a_part() {
        let g = crate::constructions::s3_graph(6).unwrap();
        assert_eq!(g.codegree(0, 1).unwrap(), 0);
        assert_eq!(g.codegree(2, 3).unwrap(), 0);
        assert_eq!(g.codegree(4, 5).unwrap(), 0);
    }

    #[test]
    fn c5_codegrees_are_one_or_two() {
        let g = make_system(5, &[[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]]).unwrap();
        let mut sum = 0;
        for x in 0..5 {
            for y in (x + 1)..5 {
                let d = g.codegree(x, y).unwrap();
                assert!(d == 1 || d == 2);
                sum += d;
            }
        }
        assert_eq!(sum, 15);
    }

    #[test]
    fn induced_full_vertex_set_is_identity() {
        let g = make_system(5, &[[0, 1, 2], [1, 3, 4]]).unwrap();
        let all: Vec<Vertex> = g.vertices().collect();
        assert_eq!(g.induced(&all).unwrap(), g);
    }

    #[test]
    fn induced_rejects_unknown_vertex() {
        let g = make_system(4, &[[0, 1, 2]]).unwrap();
        assert!(g.induced(&[0, 5]).is_err());
    }

    #[test]
    fn bitset_round_trips() {
        let g = make_system(6, &[[0, 1, 2], [2, 3, 4], [3, 4, 5]]).unwrap();
        let mask = g.colex_bitset();
        assert_eq!(TripleSystem::from_colex_bitset(6, &mask), g);
    }

    #[test]
    fn delete_triple_removes_anchor_vertices() {
        let g = crate::constructions::s3_graph(6).unwrap();
        let e = Triple::new(0, 2, 4).unwrap();
        let h = g.delete_triple(&e);
        assert_eq!(h.order(), 3);
        // the remaining transversal {1,3,5} survives, relabeled to {0,1,2}
        assert_eq!(h.size(), 1);
    }
}
