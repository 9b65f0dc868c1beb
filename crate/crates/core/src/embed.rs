//! Subgraph containment (non-induced), family freeness, and the cancellative
//! predicate.

use thiserror::Error;

use crate::canon::are_isomorphic;
use crate::constructions::NamedGraph;
use crate::system::{Triple, TripleSystem, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("a family must have at least one member")]
    Empty,
    #[error("family members {0} and {1} are isomorphic")]
    DuplicateMembers(usize, usize),
}

/// An injective vertex map witnessing subgraph containment: index = pattern
/// vertex, value = host vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    map: Vec<Vertex>,
}

impl Embedding {
    pub fn new(map: Vec<Vertex>) -> Self {
        Embedding { map }
    }

    pub fn map(&self) -> &[Vertex] {
        &self.map
    }

    pub fn image_of(&self, pattern_vertex: Vertex) -> Vertex {
        self.map[pattern_vertex as usize]
    }

    /// Re-validates the witness: injective, in range, and every pattern edge
    /// lands on a host edge.
    pub fn validates(&self, host: &TripleSystem, pattern: &TripleSystem) -> bool {
        if self.map.len() != pattern.order() {
            return false;
        }
        if self.map.iter().any(|&v| (v as usize) >= host.order()) {
            return false;
        }
        let mut seen = self.map.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        pattern.edges().iter().all(|t| {
            let [a, b, c] = t.vertices();
            match Triple::new(
                self.map[a as usize],
                self.map[b as usize],
                self.map[c as usize],
            ) {
                Ok(image) => host.has_edge(&image),
                Err(_) => false,
            }
        })
    }
}

/// A non-empty family of pairwise non-isomorphic triple systems.
#[derive(Debug, Clone)]
pub struct Family {
    name: String,
    members: Vec<TripleSystem>,
}

impl Family {
    pub fn new(name: &str, members: Vec<TripleSystem>) -> Result<Self, FamilyError> {
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                if are_isomorphic(&members[i], &members[j]) {
                    return Err(FamilyError::DuplicateMembers(i, j));
                }
            }
        }
        Ok(Family {
            name: name.to_string(),
            members,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn members(&self) -> &[TripleSystem] {
        &self.members
    }

    /// {K4-, F6}, the family of the main extremal result.
    pub fn kf6() -> Family {
        Family::new(
            "kf6",
            vec![NamedGraph::K4Minus.system(), NamedGraph::F6.system()],
        )
        .expect("fixed family is valid")
    }

    /// {K4-, F5}, equivalent to the cancellative property.
    pub fn kf5() -> Family {
        Family::new(
            "kf5",
            vec![NamedGraph::K4Minus.system(), NamedGraph::F5.system()],
        )
        .expect("fixed family is valid")
    }

    /// {K4-} alone.
    pub fn k4_minus() -> Family {
        Family::new("k4m", vec![NamedGraph::K4Minus.system()]).expect("fixed family is valid")
    }

    /// {F5} alone.
    pub fn f5_only() -> Family {
        Family::new("f5", vec![NamedGraph::F5.system()]).expect("fixed family is valid")
    }

    /// {F6} alone.
    pub fn f6_only() -> Family {
        Family::new("f6", vec![NamedGraph::F6.system()]).expect("fixed family is valid")
    }

    /// {K4(3)} alone.
    pub fn k4_complete() -> Family {
        Family::new("k43", vec![NamedGraph::K4Complete.system()]).expect("fixed family is valid")
    }

    /// Family by its short name.
    pub fn by_name(name: &str) -> Option<Family> {
        match name {
            "kf6" => Some(Family::kf6()),
            "kf5" => Some(Family::kf5()),
            "k4m" => Some(Family::k4_minus()),
            "f5" => Some(Family::f5_only()),
            "f6" => Some(Family::f6_only()),
            "k43" => Some(Family::k4_complete()),
            _ => None,
        }
    }
}

/// Freeness verdict with a checkable witness on violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freeness {
    Free,
    Violation { member: usize, embedding: Embedding },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

/// Searches for a subgraph embedding of `pattern` into `host` (non-induced:
/// extra host edges are allowed). Returns the lexicographically least map if
/// one exists.
pub fn find_embedding(host: &TripleSystem, pattern: &TripleSystem) -> Option<Embedding> {
    find_embedding_constrained(host, pattern, None)
}

/// Like [`find_embedding`] but only considers embeddings whose image uses the
/// designated host edge. Supports incremental freeness checks: when an edge is
/// added to a known-free host, only embeddings through that edge can appear.
pub fn find_embedding_through(
    host: &TripleSystem,
    pattern: &TripleSystem,
    through: &Triple,
) -> Option<Embedding> {
    find_embedding_constrained(host, pattern, Some(through))
}

fn find_embedding_constrained(
    host: &TripleSystem,
    pattern: &TripleSystem,
    through: Option<&Triple>,
) -> Option<Embedding> {
    let p = pattern.order();
    if p > host.order() || pattern.size() > host.size() {
        return None;
    }
    let pat_deg: Vec<usize> = pattern.vertices().map(|v| pattern.degree(v)).collect();
    let host_deg: Vec<usize> = host.vertices().map(|v| host.degree(v)).collect();

    // Pattern edges indexed per vertex for early consistency checks.
    let pat_edges: Vec<[usize; 3]> = pattern
        .edges()
        .iter()
        .map(|t| {
            let [a, b, c] = t.vertices();
            [a as usize, b as usize, c as usize]
        })
        .collect();

    let mut map = vec![Vertex::MAX; p];
    let mut used = vec![false; host.order()];
    if backtrack(
        host, &pat_edges, &pat_deg, &host_deg, &mut map, &mut used, 0, through,
    ) {
        Some(Embedding::new(map))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    host: &TripleSystem,
    pat_edges: &[[usize; 3]],
    pat_deg: &[usize],
    host_deg: &[usize],
    map: &mut Vec<Vertex>,
    used: &mut Vec<bool>,
    next: usize,
    through: Option<&Triple>,
) -> bool {
    if next == map.len() {
        return match through {
            None => true,
            Some(t) => pat_edges.iter().any(|e| {
                let img = Triple::new(map[e[0]], map[e[1]], map[e[2]]).expect("injective");
                img == *t
            }),
        };
    }
    'candidates: for h in 0..host.order() {
        if used[h] || host_deg[h] < pat_deg[next] {
            continue;
        }
        // Every pattern edge fully placed by this assignment must land on a
        // host edge.
        map[next] = h as Vertex;
        for e in pat_edges {
            if e.contains(&next) && e.iter().all(|&v| v <= next) {
                let img = Triple::new(map[e[0]], map[e[1]], map[e[2]]).expect("injective");
                if !host.has_edge(&img) {
                    map[next] = Vertex::MAX;
                    continue 'candidates;
                }
            }
        }
        used[h] = true;
        if backtrack(host, pat_edges, pat_deg, host_deg, map, used, next + 1, through) {
            return true;
        }
        used[h] = false;
        map[next] = Vertex::MAX;
    }
    false
}

/// Freeness of `g` with respect to every family member, with witness.
pub fn is_free(g: &TripleSystem, family: &Family) -> Freeness {
    for (i, member) in family.members().iter().enumerate() {
        if let Some(embedding) = find_embedding(g, member) {
            return Freeness::Violation {
                member: i,
                embedding,
            };
        }
    }
    Freeness::Free
}

/// Incremental freeness: `g` with `new_edge` already inserted, checking only
/// embeddings through that edge. Sound when `g` minus the edge is known free.
pub fn is_free_through(g: &TripleSystem, family: &Family, new_edge: &Triple) -> Freeness {
    for (i, member) in family.members().iter().enumerate() {
        if let Some(embedding) = find_embedding_through(g, member, new_edge) {
            return Freeness::Violation {
                member: i,
                embedding,
            };
        }
    }
    Freeness::Free
}

/// No two distinct edges a, b have their symmetric difference inside a third
/// edge. For 3-graphs this is equivalent to {K4-, F5}-freeness.
pub fn is_cancellative(g: &TripleSystem) -> bool {
    let edges = g.edges();
    for (i, a) in edges.iter().enumerate() {
        for b in edges.iter().skip(i + 1) {
            if a.overlap(b) != 2 {
                continue;
            }
            // |a triangle b| = 2; any edge containing both difference
            // vertices violates the property.
            let av = a.vertices();
            let bv = b.vertices();
            let u = *av.iter().find(|v| !b.contains(**v)).expect("overlap 2");
            let w = *bv.iter().find(|v| !a.contains(**v)).expect("overlap 2");
            if edges
                .iter()
                .any(|c| c.contains(u) && c.contains(w))
            {
                return false;
            }
        }
    }
    true
}
