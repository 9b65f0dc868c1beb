//! Canonical forms and isomorphism testing for triple systems.
//!
//! The canonical form of a system is the relabeling that minimizes a fixed
//! bit-string encoding of the edge set, found by assigning new labels from
//! highest to lowest with prefix pruning. For n <= 8 every relabeling is
//! considered (the search is an exact minimization over all n!); for larger n
//! the candidate set at each step is restricted to one cell of an iteratively
//! refined codegree partition, which keeps the result relabeling-invariant
//! while avoiding the factorial scan.

use crate::system::{triple_count, TripleSystem, Vertex};

/// An isomorphism-invariant identifier: two systems have equal codes iff they
/// are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: usize,
    bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Bitset of the canonical representative, packed little-endian over the
    /// colex triple order.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Decodes the canonical representative.
    pub fn to_system(&self) -> TripleSystem {
        let words = triple_count(self.n).div_ceil(64);
        let mut mask = vec![0u64; words];
        for (i, b) in self.bytes.iter().enumerate() {
            mask[i / 8] |= (*b as u64) << (8 * (i % 8));
        }
        TripleSystem::from_colex_bitset(self.n, &mask)
    }

    fn from_system(g: &TripleSystem) -> CanonicalCode {
        let total = triple_count(g.order());
        let mut bytes = vec![0u8; total.div_ceil(8)];
        for t in g.edges() {
            let i = t.colex_index();
            bytes[i / 8] |= 1 << (i % 8);
        }
        CanonicalCode {
            n: g.order(),
            bytes,
        }
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:", self.n)?;
        for b in self.bytes.iter().rev() {
            write!(f, "{:02x}", b)?;
        }
        Ok(())
    }
}

/// Relabeling-invariant code; equal codes iff isomorphic.
pub fn canonical_form(g: &TripleSystem) -> CanonicalCode {
    CanonicalCode::from_system(&canonical_representative(g))
}

/// The canonically relabeled copy of `g`.
pub fn canonical_representative(g: &TripleSystem) -> TripleSystem {
    let n = g.order();
    assert!(n <= 16, "canonical forms are supported for n <= 16");
    let total = triple_count(n);
    // Fully symmetric edge sets: every labeling yields the same code.
    if g.size() == 0 || g.size() == total {
        return g.clone();
    }
    let mut search = CanonSearch::new(g, n > 8);
    search.run();
    let labeling = search.best_labeling.expect("nonempty search");
    let mut perm = vec![0 as Vertex; n];
    for (label, &old) in labeling.iter().enumerate() {
        perm[old] = label as Vertex;
    }
    g.relabel(&perm)
}

/// True iff the two systems are related by a vertex relabeling.
///
/// Agrees with the brute-force permutation oracle (tested exhaustively for
/// small orders).
pub fn are_isomorphic(g: &TripleSystem, h: &TripleSystem) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let mut dg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    canonical_form(g) == canonical_form(h)
}

struct CanonSearch<'a> {
    g: &'a TripleSystem,
    n: usize,
    mask: Vec<u64>,
    refine: bool,
    // old vertex receiving each label, filled from label n-1 downwards
    old_of_label: Vec<usize>,
    fans: Vec<u128>,
    best_fans: Option<Vec<u128>>,
    best_labeling: Option<Vec<usize>>,
}

impl<'a> CanonSearch<'a> {
    fn new(g: &'a TripleSystem, refine: bool) -> Self {
        CanonSearch {
            g,
            n: g.order(),
            mask: g.colex_bitset(),
            refine,
            old_of_label: vec![usize::MAX; g.order()],
            fans: Vec::new(),
            best_fans: None,
            best_labeling: None,
        }
    }

    fn has_edge(&self, a: usize, b: usize, c: usize) -> bool {
        let mut v = [a, b, c];
        v.sort_unstable();
        let i = v[2] * (v[2] - 1) * (v[2] - 2) / 6 + v[1] * (v[1] - 1) / 2 + v[0];
        self.mask[i / 64] >> (i % 64) & 1 == 1
    }

    fn run(&mut self) {
        let cells = vec![(0..self.n).collect::<Vec<usize>>()];
        self.descend(cells, self.n, false);
    }

    /// Fan of newly determined bits when `v` takes `label`: one bit per pair
    /// of already-assigned labels, in a fixed order.
    fn fan(&self, v: usize, label: usize) -> u128 {
        let mut out = 0u128;
        for p in (label + 1)..self.n {
            for q in (p + 1)..self.n {
                out = (out << 1)
                    | self.has_edge(v, self.old_of_label[p], self.old_of_label[q]) as u128;
            }
        }
        out
    }

    /// True iff swapping u and w fixes the edge set.
    fn transposition_is_automorphism(&self, u: usize, w: usize) -> bool {
        let swap = |x: usize| {
            if x == u {
                w
            } else if x == w {
                u
            } else {
                x
            }
        };
        self.g.edges().iter().all(|t| {
            let [a, b, c] = t.vertices();
            self.has_edge(swap(a as usize), swap(b as usize), swap(c as usize))
        })
    }

    /// Returns true if the best leaf was improved anywhere in the subtree.
    fn descend(&mut self, cells: Vec<Vec<usize>>, next_label: usize, mut strictly_better: bool) -> bool {
        if next_label == 0 {
            return self.record_leaf(strictly_better);
        }
        let cells = if self.refine {
            refine(self, cells, next_label)
        } else {
            cells
        };
        let target = cells.last().expect("labels remain, so cells remain").clone();

        // Branch candidates: twin vertices (whose transposition is an
        // automorphism) lead to identical subtrees, keep one of each class.
        let mut candidates: Vec<usize> = Vec::with_capacity(target.len());
        for &v in &target {
            if candidates
                .iter()
                .any(|&u| self.transposition_is_automorphism(u, v))
            {
                continue;
            }
            candidates.push(v);
        }

        let label = next_label - 1;
        let mut ranked: Vec<(u128, usize)> = candidates
            .iter()
            .map(|&v| (self.fan(v, label), v))
            .collect();
        ranked.sort_unstable();

        let level = self.fans.len();
        let mut updated = false;
        for (fan, v) in ranked {
            let mut child_better = strictly_better;
            if !strictly_better {
                if let Some(best) = &self.best_fans {
                    match fan.cmp(&best[level]) {
                        std::cmp::Ordering::Greater => break,
                        std::cmp::Ordering::Equal => {}
                        std::cmp::Ordering::Less => child_better = true,
                    }
                }
            }
            self.old_of_label[label] = v;
            self.fans.push(fan);
            let child_cells: Vec<Vec<usize>> = cells
                .iter()
                .map(|c| c.iter().copied().filter(|&u| u != v).collect())
                .filter(|c: &Vec<usize>| !c.is_empty())
                .collect();
            let child_updated = self.descend(child_cells, label, child_better);
            self.fans.pop();
            if child_updated {
                updated = true;
                // Best went through this child; the current prefix matches it.
                strictly_better = false;
            }
        }
        updated
    }

    fn record_leaf(&mut self, strictly_better: bool) -> bool {
        if self.best_fans.is_none() || strictly_better {
            self.best_fans = Some(self.fans.clone());
            self.best_labeling = Some(self.old_of_label.clone());
            return true;
        }
        false
    }
}

/// Iterative codegree refinement of the unassigned cells. Labels already
/// assigned act as fixed singleton context. Cell order is determined by
/// signature order, so the result is relabeling-invariant.
fn refine(search: &CanonSearch<'_>, mut cells: Vec<Vec<usize>>, next_label: usize) -> Vec<Vec<usize>> {
    let n = search.n;
    loop {
        // id of each vertex: assigned ones by label, unassigned by cell index.
        let mut id = vec![usize::MAX; n];
        for label in next_label..n {
            id[search.old_of_label[label]] = label;
        }
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                id[v] = n + ci;
            }
        }
        let mut changed = false;
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<(usize, usize)>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig: Vec<(usize, usize)> = search
                        .g
                        .edges()
                        .iter()
                        .filter(|t| t.contains(v as Vertex))
                        .map(|t| {
                            let others: Vec<usize> = t
                                .vertices()
                                .iter()
                                .map(|&x| x as usize)
                                .filter(|&x| x != v)
                                .collect();
                            let (x, y) = (id[others[0]], id[others[1]]);
                            (x.min(y), x.max(y))
                        })
                        .collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            sigs.sort();
            let mut start = 0;
            for i in 1..=sigs.len() {
                if i == sigs.len() || sigs[i].0 != sigs[start].0 {
                    next.push(sigs[start..i].iter().map(|(_, v)| *v).collect());
                    if i - start != cell.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}
