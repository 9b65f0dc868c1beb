//! The labeled link graph of an edge and everything built on it: Gamma sets,
//! overlap profiles, rainbow structure, the Gamma/V4/rest partition,
//! forbidden-configuration scanning, structural audits, and the arithmetic
//! bounds used to control link weight.

use std::fmt;

use thiserror::Error;

use crate::constructions::{s3_count, tk_count, NamedGraph};
use crate::embed::Embedding;
use crate::system::{Triple, TripleSystem, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("edge {0} is not in the system")]
    EdgeNotInSystem(Triple),
    #[error("order {0} too small, need n >= {1}")]
    OrderTooSmall(usize, usize),
    #[error("system has no edges")]
    NoEdges,
    #[error("size {size} below s3(n) = {needed}")]
    SizeBelowS3 { size: usize, needed: usize },
    #[error("inequality arguments out of range: j={j}, k={k}, l={l}")]
    InequalityOutOfRange { j: usize, k: usize, l: usize },
}

/// Label set on a link edge: bit i set means anchor vertex i completes the
/// pair to an edge of the host.
pub type LabelSet = u8;

pub const LABEL_ALL: LabelSet = 0b111;

/// Anchor-index pairs defining the three Gamma sets, in order (a,b), (a,c),
/// (b,c).
pub const GAMMA_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn gamma_pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = (i.min(j), i.max(j));
    GAMMA_PAIRS
        .iter()
        .position(|&p| p == (lo, hi))
        .expect("valid anchor pair")
}

/// The edge-labeled link graph L_abc of an anchor edge abc: vertex set
/// V- = V(G) - {a,b,c}, an edge yz for every pair extending to a host edge
/// with some anchor vertex, labeled by the set of anchor vertices that work,
/// plus the three pair neighborhoods Gamma_ab, Gamma_ac, Gamma_bc.
#[derive(Debug, Clone)]
pub struct LabeledLinkGraph {
    anchor: Triple,
    vminus: Vec<Vertex>,
    /// (y, z, labels) with y < z, sorted.
    edges: Vec<(Vertex, Vertex, LabelSet)>,
    /// gamma[p] lists z with {anchor_i, anchor_j, z} a host edge, where
    /// (i, j) = GAMMA_PAIRS[p].
    gamma: [Vec<Vertex>; 3],
}

impl LabeledLinkGraph {
    pub fn anchor(&self) -> Triple {
        self.anchor
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vminus
    }

    pub fn edges(&self) -> &[(Vertex, Vertex, LabelSet)] {
        &self.edges
    }

    pub fn label(&self, y: Vertex, z: Vertex) -> LabelSet {
        let (y, z) = (y.min(z), y.max(z));
        self.edges
            .binary_search_by(|probe| (probe.0, probe.1).cmp(&(y, z)))
            .map(|i| self.edges[i].2)
            .unwrap_or(0)
    }

    pub fn gamma(&self, pair: usize) -> &[Vertex] {
        &self.gamma[pair]
    }

    /// Union of the three Gamma sets, sorted.
    pub fn gamma_union(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.gamma.iter().flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertices lying in more than one Gamma set. Empty iff the host is
    /// K4- free around the anchor.
    pub fn gamma_overlap(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        for (p, g) in self.gamma.iter().enumerate() {
            for v in g {
                if self.gamma.iter().skip(p + 1).any(|h| h.contains(v)) && !out.contains(v) {
                    out.push(*v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn gamma_disjoint(&self) -> bool {
        self.gamma_overlap().is_empty()
    }

    /// Sum of label sizes over all link edges (equals f1 of the profile).
    pub fn weight(&self) -> usize {
        self.edges
            .iter()
            .map(|(_, _, l)| l.count_ones() as usize)
            .sum()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|(y, z, _)| *y == v || *z == v)
            .count()
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.edges
            .iter()
            .filter_map(|(y, z, _)| {
                if *y == v {
                    Some(*z)
                } else if *z == v {
                    Some(*y)
                } else {
                    None
                }
            })
            .collect()
    }

    fn adjacent(&self, y: Vertex, z: Vertex) -> bool {
        self.label(y, z) != 0
    }
}

/// Builds the labeled link graph of `e` in `g`.
pub fn link_of_edge(g: &TripleSystem, e: &Triple) -> Result<LabeledLinkGraph, LinkError> {
    if !g.has_edge(e) {
        return Err(LinkError::EdgeNotInSystem(*e));
    }
    let anchor = e.vertices();
    let vminus: Vec<Vertex> = g.vertices().filter(|v| !e.contains(*v)).collect();
    let mut edges = Vec::new();
    for (i, &y) in vminus.iter().enumerate() {
        for &z in &vminus[i + 1..] {
            let mut labels: LabelSet = 0;
            for (bit, &x) in anchor.iter().enumerate() {
                let t = Triple::new(x, y, z).expect("distinct by construction");
                if g.has_edge(&t) {
                    labels |= 1 << bit;
                }
            }
            if labels != 0 {
                edges.push((y, z, labels));
            }
        }
    }
    let gamma = GAMMA_PAIRS.map(|(i, j)| {
        vminus
            .iter()
            .copied()
            .filter(|&z| {
                let t = Triple::new(anchor[i], anchor[j], z).expect("distinct");
                g.has_edge(&t)
            })
            .collect()
    });
    Ok(LabeledLinkGraph {
        anchor: *e,
        vminus,
        edges,
        gamma,
    })
}

/// Number of edges meeting `e` in exactly 0, 1, 2, 3 vertices.
pub fn overlap_profile(g: &TripleSystem, e: &Triple) -> Result<[usize; 4], LinkError> {
    if !g.has_edge(e) {
        return Err(LinkError::EdgeNotInSystem(*e));
    }
    let mut profile = [0usize; 4];
    for t in g.edges() {
        profile[t.overlap(e)] += 1;
    }
    Ok(profile)
}

/// True iff the underlying 2-graph is a balanced complete tripartite graph
/// T3(|V-|), every edge has weight one, and every triangle carries all three
/// labels.
pub fn is_rainbow_t3(l: &LabeledLinkGraph) -> bool {
    if l.edges.iter().any(|(_, _, lab)| lab.count_ones() != 1) {
        return false;
    }
    // Complement components must be cliques: that makes the underlying graph
    // complete multipartite with the components as parts.
    let vs = &l.vminus;
    let s = vs.len();
    let mut comp = vec![usize::MAX; s];
    let mut sizes = Vec::new();
    for start in 0..s {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![start];
        comp[start] = id;
        let mut members = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..s {
                if comp[j] == usize::MAX && !l.adjacent(vs[i], vs[j]) && i != j {
                    comp[j] = id;
                    stack.push(j);
                    members.push(j);
                }
            }
        }
        // Component must be a clique in the complement.
        for (ai, &i) in members.iter().enumerate() {
            for &j in &members[ai + 1..] {
                if l.adjacent(vs[i], vs[j]) {
                    return false;
                }
            }
        }
        sizes.push(members.len());
    }
    if sizes.len() > 3 {
        return false;
    }
    while sizes.len() < 3 {
        sizes.push(0);
    }
    let (max, min) = (
        *sizes.iter().max().expect("three parts"),
        *sizes.iter().min().expect("three parts"),
    );
    if max - min > 1 {
        return false;
    }
    // All triangles rainbow.
    for i in 0..s {
        for j in (i + 1)..s {
            for k in (j + 1)..s {
                let (u, v, w) = (vs[i], vs[j], vs[k]);
                if l.adjacent(u, v) && l.adjacent(u, w) && l.adjacent(v, w) {
                    let union = l.label(u, v) | l.label(u, w) | l.label(v, w);
                    if union != LABEL_ALL {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Partition V- = Gamma union V4 union rest, where V4 collects vertices in
/// some K4 of the underlying 2-graph. A non-empty `overlap` records vertices
/// in both Gamma and V4 (impossible when the host is free).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkPartition {
    pub gamma_abc: Vec<Vertex>,
    pub v4: Vec<Vertex>,
    pub rest: Vec<Vertex>,
    pub overlap: Vec<Vertex>,
}

fn v4_vertices(l: &LabeledLinkGraph) -> Vec<Vertex> {
    let vs = &l.vminus;
    let s = vs.len();
    let mut in_k4 = vec![false; s];
    for i in 0..s {
        for j in (i + 1)..s {
            for k in (j + 1)..s {
                for m in (k + 1)..s {
                    let q = [vs[i], vs[j], vs[k], vs[m]];
                    let mut clique = true;
                    'pairs: for x in 0..4 {
                        for y in (x + 1)..4 {
                            if !l.adjacent(q[x], q[y]) {
                                clique = false;
                                break 'pairs;
                            }
                        }
                    }
                    if clique {
                        for idx in [i, j, k, m] {
                            in_k4[idx] = true;
                        }
                    }
                }
            }
        }
    }
    vs.iter()
        .enumerate()
        .filter(|(i, _)| in_k4[*i])
        .map(|(_, v)| *v)
        .collect()
}

pub fn partition(l: &LabeledLinkGraph) -> LinkPartition {
    let gamma_abc = l.gamma_union();
    let v4 = v4_vertices(l);
    let overlap: Vec<Vertex> = gamma_abc
        .iter()
        .copied()
        .filter(|v| v4.contains(v))
        .collect();
    let rest: Vec<Vertex> = l
        .vminus
        .iter()
        .copied()
        .filter(|v| !gamma_abc.contains(v) && !v4.contains(v))
        .collect();
    LinkPartition {
        gamma_abc,
        v4,
        rest,
        overlap,
    }
}

/// The eight forbidden link configurations. The first five imply an F6 in the
/// host, the last three a K4-.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigId {
    F6C1,
    F6C2,
    F6C3,
    F6C4,
    F6C5,
    K4mC1,
    K4mC2,
    K4mC3,
}

impl ConfigId {
    pub const ALL: [ConfigId; 8] = [
        ConfigId::F6C1,
        ConfigId::F6C2,
        ConfigId::F6C3,
        ConfigId::F6C4,
        ConfigId::F6C5,
        ConfigId::K4mC1,
        ConfigId::K4mC2,
        ConfigId::K4mC3,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ConfigId::F6C1 => "F6-1",
            ConfigId::F6C2 => "F6-2",
            ConfigId::F6C3 => "F6-3",
            ConfigId::F6C4 => "F6-4",
            ConfigId::F6C5 => "F6-5",
            ConfigId::K4mC1 => "K4m-1",
            ConfigId::K4mC2 => "K4m-2",
            ConfigId::K4mC3 => "K4m-3",
        }
    }

    /// The host pattern the configuration forces.
    pub fn pattern(self) -> NamedGraph {
        match self {
            ConfigId::F6C1 | ConfigId::F6C2 | ConfigId::F6C3 | ConfigId::F6C4 | ConfigId::F6C5 => {
                NamedGraph::F6
            }
            _ => NamedGraph::K4Minus,
        }
    }
}

impl fmt::Display for ConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An occurrence of a forbidden configuration in a link graph, together with
/// the embedding of F6 or K4- it forces in the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigWitness {
    pub config: ConfigId,
    /// Anchor vertices playing roles (A, B, C).
    pub roles: [Vertex; 3],
    /// The configuration's link vertices in template order.
    pub vertices: Vec<Vertex>,
    /// Host embedding of `config.pattern()`.
    pub implied: Embedding,
}

const ROLE_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Scans a link graph for all occurrences of the eight forbidden
/// configurations, over all six permutations of the anchor labels. None may
/// occur when the host is {K4-, F6}-free.
pub fn forbidden_config_scan(l: &LabeledLinkGraph) -> Vec<ConfigWitness> {
    let anchor = l.anchor.vertices();
    let vs = l.vertices().to_vec();
    let mut out: Vec<ConfigWitness> = Vec::new();
    let mut push = |w: ConfigWitness| {
        if !out
            .iter()
            .any(|x| x.config == w.config && x.implied == w.implied)
        {
            out.push(w);
        }
    };

    for perm in ROLE_PERMS {
        let role = |r: usize| anchor[perm[r]];
        let has = |y: Vertex, z: Vertex, r: usize| l.label(y, z) >> perm[r] & 1 == 1;
        let in_gamma = |v: Vertex, r1: usize, r2: usize| {
            l.gamma(gamma_pair_index(perm[r1], perm[r2])).contains(&v)
        };
        let (ra, rb, rc) = (role(0), role(1), role(2));

        // F6-1: triangle with l(xy) = l(xz) = A and l(yz) = B.
        for &x in &vs {
            for (yi, &y) in vs.iter().enumerate() {
                if y == x {
                    continue;
                }
                for &z in &vs[yi + 1..] {
                    if z == x {
                        continue;
                    }
                    if has(x, y, 0) && has(x, z, 0) && has(y, z, 1) {
                        push(ConfigWitness {
                            config: ConfigId::F6C1,
                            roles: [ra, rb, rc],
                            vertices: vec![x, y, z],
                            implied: Embedding::new(vec![ra, x, y, z, rb, rc]),
                        });
                    }
                }
            }
        }

        // F6-2: l(xy) contains AB, l(xz) contains C.
        for &x in &vs {
            for &y in &vs {
                if y == x || !(has(x, y, 0) && has(x, y, 1)) {
                    continue;
                }
                for &z in &vs {
                    if z == x || z == y || !has(x, z, 2) {
                        continue;
                    }
                    push(ConfigWitness {
                        config: ConfigId::F6C2,
                        roles: [ra, rb, rc],
                        vertices: vec![x, y, z],
                        implied: Embedding::new(vec![x, y, ra, rb, rc, z]),
                    });
                }
            }
        }

        // F6-3: x in Gamma_AB, l(xy) = C, l(yz) = A.
        for &x in &vs {
            if !in_gamma(x, 0, 1) {
                continue;
            }
            for &y in &vs {
                if y == x || !has(x, y, 2) {
                    continue;
                }
                for &z in &vs {
                    if z == x || z == y || !has(y, z, 0) {
                        continue;
                    }
                    push(ConfigWitness {
                        config: ConfigId::F6C3,
                        roles: [ra, rb, rc],
                        vertices: vec![x, y, z],
                        implied: Embedding::new(vec![ra, rb, rc, x, y, z]),
                    });
                }
            }
        }

        // F6-4: x in Gamma_AB, path edges l(xy) = l(zw) = A, l(yz) = B.
        for &x in &vs {
            if !in_gamma(x, 0, 1) {
                continue;
            }
            for &y in &vs {
                if y == x || !has(x, y, 0) {
                    continue;
                }
                for &z in &vs {
                    if z == x || z == y || !has(y, z, 1) {
                        continue;
                    }
                    for &w in &vs {
                        if w == x || w == y || w == z || !has(z, w, 0) {
                            continue;
                        }
                        push(ConfigWitness {
                            config: ConfigId::F6C4,
                            roles: [ra, rb, rc],
                            vertices: vec![x, y, z, w],
                            implied: Embedding::new(vec![ra, x, rb, y, z, w]),
                        });
                    }
                }
            }
        }

        // F6-5: x in Gamma_AC, y in Gamma_BC, z in Gamma_AB, l(xy) = B.
        for &x in &vs {
            if !in_gamma(x, 0, 2) {
                continue;
            }
            for &y in &vs {
                if y == x || !in_gamma(y, 1, 2) || !has(x, y, 1) {
                    continue;
                }
                for &z in &vs {
                    if z == x || z == y || !in_gamma(z, 0, 1) {
                        continue;
                    }
                    push(ConfigWitness {
                        config: ConfigId::F6C5,
                        roles: [ra, rb, rc],
                        vertices: vec![x, y, z],
                        implied: Embedding::new(vec![rb, y, rc, x, ra, z]),
                    });
                }
            }
        }

        // K4m-1: monochromatic triangle labeled A.
        for (xi, &x) in vs.iter().enumerate() {
            for (yi, &y) in vs.iter().enumerate().skip(xi + 1) {
                for &z in &vs[yi + 1..] {
                    if has(x, y, 0) && has(x, z, 0) && has(y, z, 0) {
                        push(ConfigWitness {
                            config: ConfigId::K4mC1,
                            roles: [ra, rb, rc],
                            vertices: vec![x, y, z],
                            implied: Embedding::new(vec![ra, x, y, z]),
                        });
                    }
                }
            }
        }

        // K4m-2: x in Gamma_AB with l(xy) containing AB.
        for &x in &vs {
            if !in_gamma(x, 0, 1) {
                continue;
            }
            for &y in &vs {
                if y == x || !(has(x, y, 0) && has(x, y, 1)) {
                    continue;
                }
                push(ConfigWitness {
                    config: ConfigId::K4mC2,
                    roles: [ra, rb, rc],
                    vertices: vec![x, y],
                    implied: Embedding::new(vec![x, y, ra, rb]),
                });
            }
        }

        // K4m-3: x, y in Gamma_AB with l(xy) = A.
        for (xi, &x) in vs.iter().enumerate() {
            if !in_gamma(x, 0, 1) {
                continue;
            }
            for &y in &vs[xi + 1..] {
                if !in_gamma(y, 0, 1) || !has(x, y, 0) {
                    continue;
                }
                push(ConfigWitness {
                    config: ConfigId::K4mC3,
                    roles: [ra, rb, rc],
                    vertices: vec![x, y],
                    implied: Embedding::new(vec![ra, rb, x, y]),
                });
            }
        }
    }
    out
}

/// One structural check of the audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCheck {
    pub id: &'static str,
    pub pass: bool,
    /// Offending vertex tuples, empty on pass.
    pub witnesses: Vec<Vec<Vertex>>,
}

/// Result of auditing one edge's link structure.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub anchor: Triple,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&AuditCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Audits the link of `e`: Gamma disjointness plus the nine structural
/// properties a free host must satisfy. All failures are reported, not just
/// the first.
pub fn structural_audit(g: &TripleSystem, e: &Triple) -> Result<AuditReport, LinkError> {
    let l = link_of_edge(g, e)?;
    let vs = l.vertices().to_vec();
    let gamma_union = l.gamma_union();
    let v4 = v4_vertices(&l);
    let mut checks = Vec::new();

    let mut add = |id: &'static str, witnesses: Vec<Vec<Vertex>>| {
        let mut w = witnesses;
        w.sort();
        w.dedup();
        checks.push(AuditCheck {
            id,
            pass: w.is_empty(),
            witnesses: w,
        });
    };

    // Gamma sets must be pairwise disjoint (K4- around the anchor otherwise).
    add(
        "gamma-disjoint",
        l.gamma_overlap().into_iter().map(|v| vec![v]).collect(),
    );

    // (i) only rainbow triangles
    let mut w1 = Vec::new();
    for (xi, &x) in vs.iter().enumerate() {
        for (yi, &y) in vs.iter().enumerate().skip(xi + 1) {
            for &z in &vs[yi + 1..] {
                if l.adjacent(x, y) && l.adjacent(x, z) && l.adjacent(y, z) {
                    let labs = [l.label(x, y), l.label(x, z), l.label(y, z)];
                    let rainbow = labs.iter().all(|lab| lab.count_ones() == 1)
                        && labs[0] | labs[1] | labs[2] == LABEL_ALL;
                    if !rainbow {
                        w1.push(vec![x, y, z]);
                    }
                }
            }
        }
    }
    add("i-rainbow-triangles", w1);

    // (ii) only rainbow K4s
    let mut w2 = Vec::new();
    for (xi, &x) in vs.iter().enumerate() {
        for (yi, &y) in vs.iter().enumerate().skip(xi + 1) {
            for (zi, &z) in vs.iter().enumerate().skip(yi + 1) {
                for &u in &vs[zi + 1..] {
                    let q = [x, y, z, u];
                    let mut clique = true;
                    let mut rainbow = true;
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            if !l.adjacent(q[i], q[j]) {
                                clique = false;
                            } else if l.label(q[i], q[j]).count_ones() != 1 {
                                rainbow = false;
                            }
                        }
                    }
                    if clique && rainbow {
                        // every triangle inside must carry all three labels
                        for skip in 0..4 {
                            let t: Vec<Vertex> =
                                (0..4).filter(|&i| i != skip).map(|i| q[i]).collect();
                            let union =
                                l.label(t[0], t[1]) | l.label(t[0], t[2]) | l.label(t[1], t[2]);
                            if union != LABEL_ALL {
                                rainbow = false;
                            }
                        }
                    }
                    if clique && !rainbow {
                        w2.push(q.to_vec());
                    }
                }
            }
        }
    }
    add("ii-rainbow-k4", w2);

    // (iii) K5-free
    let mut w3 = Vec::new();
    for (ai, &a) in vs.iter().enumerate() {
        for (bi, &b) in vs.iter().enumerate().skip(ai + 1) {
            for (ci, &c) in vs.iter().enumerate().skip(bi + 1) {
                for (di, &d) in vs.iter().enumerate().skip(ci + 1) {
                    for &f in &vs[di + 1..] {
                        let q = [a, b, c, d, f];
                        let mut clique = true;
                        'k5: for i in 0..5 {
                            for j in (i + 1)..5 {
                                if !l.adjacent(q[i], q[j]) {
                                    clique = false;
                                    break 'k5;
                                }
                            }
                        }
                        if clique {
                            w3.push(q.to_vec());
                        }
                    }
                }
            }
        }
    }
    add("iii-k5-free", w3);

    // (iv) weight-3 edges isolated and outside Gamma
    let mut w4 = Vec::new();
    for (y, z, lab) in l.edges() {
        if *lab == LABEL_ALL
            && (l.degree(*y) != 1
                || l.degree(*z) != 1
                || gamma_union.contains(y)
                || gamma_union.contains(z))
        {
            w4.push(vec![*y, *z]);
        }
    }
    add("iv-weight3-isolated", w4);

    // (v) Gamma and V4 disjoint
    add(
        "v-gamma-v4-disjoint",
        gamma_union
            .iter()
            .copied()
            .filter(|v| v4.contains(v))
            .map(|v| vec![v])
            .collect(),
    );

    // (vi) no edges between Gamma and V4
    let mut w6 = Vec::new();
    for (y, z, _) in l.edges() {
        let cross = (gamma_union.contains(y) && v4.contains(z))
            || (gamma_union.contains(z) && v4.contains(y));
        if cross {
            w6.push(vec![*y, *z]);
        }
    }
    add("vi-no-gamma-v4-edges", w6);

    // (vii) V4 vertices meet only weight-1 edges
    let mut w7 = Vec::new();
    for (y, z, lab) in l.edges() {
        if (v4.contains(y) || v4.contains(z)) && lab.count_ones() > 1 {
            w7.push(vec![*y, *z]);
        }
    }
    add("vii-v4-weight1", w7);

    // (viii) a weight-2 edge across Gamma_AC x Gamma_BC forces Gamma_AB
    // empty, and the further neighbors of its ends carry the single fixed
    // label and avoid Gamma entirely.
    let mut w8 = Vec::new();
    for perm in ROLE_PERMS {
        let has = |y: Vertex, z: Vertex, r: usize| l.label(y, z) >> perm[r] & 1 == 1;
        let gamma_of = |r1: usize, r2: usize| l.gamma(gamma_pair_index(perm[r1], perm[r2]));
        for &x in gamma_of(0, 2) {
            for &y in gamma_of(1, 2) {
                if x == y || !(has(x, y, 0) && has(x, y, 1)) {
                    continue;
                }
                if !gamma_of(0, 1).is_empty() {
                    w8.push(vec![x, y]);
                }
                for z in l.neighbors(x) {
                    if z == y {
                        continue;
                    }
                    let only_a = l.label(x, z) == 1 << perm[0];
                    if !only_a || gamma_union.contains(&z) {
                        w8.push(vec![x, y, z]);
                    }
                }
                for z in l.neighbors(y) {
                    if z == x {
                        continue;
                    }
                    let only_b = l.label(y, z) == 1 << perm[1];
                    if !only_b || gamma_union.contains(&z) {
                        w8.push(vec![x, y, z]);
                    }
                }
            }
        }
    }
    add("viii-weight2-cross", w8);

    // (ix) weight-2 edge xy plus a Gamma neighbor z of x forces |l(xz)| <= 1
    let mut w9 = Vec::new();
    for (y0, z0, lab) in l.edges() {
        if lab.count_ones() != 2 {
            continue;
        }
        for (x, y) in [(*y0, *z0), (*z0, *y0)] {
            for z in l.neighbors(x) {
                if z != y && gamma_union.contains(&z) && l.label(x, z).count_ones() > 1 {
                    w9.push(vec![x, y, z]);
                }
            }
        }
    }
    add("ix-weight2-gamma-neighbor", w9);

    Ok(AuditReport { anchor: *e, checks })
}

/// Both sides of the link weight bound w(L) + |Gamma| <= t3(n-3) + n - 3,
/// plus whether the equality structure (rainbow T3 with Gamma = V-) holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightGammaBound {
    pub lhs: usize,
    pub rhs: usize,
    pub equality_structure: bool,
}

pub fn weight_gamma_bound(g: &TripleSystem, e: &Triple) -> Result<WeightGammaBound, LinkError> {
    let n = g.order();
    if n < 6 {
        return Err(LinkError::OrderTooSmall(n, 6));
    }
    let l = link_of_edge(g, e)?;
    let gamma = l.gamma_union();
    let lhs = l.weight() + gamma.len();
    let rhs = tk_count(3, n - 3) + n - 3;
    let equality_structure = is_rainbow_t3(&l) && gamma == l.vertices();
    Ok(WeightGammaBound {
        lhs,
        rhs,
        equality_structure,
    })
}

/// The split inequality t3(j+k) + t4(l) + j + k + kl <= t3(s) + s for
/// s = j+k+l >= 5 and j >= s - floor(s/3) - 1. Returns (holds, equality);
/// equality occurs exactly at l = 0.
pub fn turan_split_inequality(j: usize, k: usize, l: usize) -> Result<(bool, bool), LinkError> {
    let s = j + k + l;
    if s < 5 || j + s / 3 + 1 < s {
        return Err(LinkError::InequalityOutOfRange { j, k, l });
    }
    let lhs = tk_count(3, j + k) + tk_count(4, l) + j + k + k * l;
    let rhs = tk_count(3, s) + s;
    Ok((lhs <= rhs, lhs == rhs))
}

/// The edge maximizing the codegree sum d_uv + d_uw + d_vw (ties broken by
/// the lexicographically least edge). For a K4- free system with at least
/// s3(n) edges this edge satisfies |Gamma| >= n - floor(n/3) - 3.
pub fn max_gamma_edge(g: &TripleSystem) -> Result<Triple, LinkError> {
    if g.edges().is_empty() {
        return Err(LinkError::NoEdges);
    }
    let needed = s3_count(g.order());
    if g.size() < needed {
        return Err(LinkError::SizeBelowS3 {
            size: g.size(),
            needed,
        });
    }
    let mut best: Option<(usize, Triple)> = None;
    for t in g.edges() {
        let [u, v, w] = t.vertices();
        let sum = g.codegree(u, v).expect("edge vertices distinct")
            + g.codegree(u, w).expect("edge vertices distinct")
            + g.codegree(v, w).expect("edge vertices distinct");
        if best.map(|(s, _)| sum > s).unwrap_or(true) {
            best = Some((sum, *t));
        }
    }
    Ok(best.expect("nonempty").1)
}

/// Exact check that n(n-1)(n - floor(n/3) - 1) / 18 < s3(n), via integers
/// (multiply through by 18).
pub fn codegree_convexity_bound(n: usize) -> Result<bool, LinkError> {
    if n < 6 {
        return Err(LinkError::OrderTooSmall(n, 6));
    }
    let lhs = (n as u128) * (n as u128 - 1) * ((n - n / 3 - 1) as u128);
    let rhs = 18 * s3_count(n) as u128;
    Ok(lhs < rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::s3_graph;
    use crate::embed::{is_free, Family};
    use crate::system::make_system;

    /// S3(6) with parts {0,1}, {2,3}, {4,5}; anchor edge {0,2,4}.
    fn s36_link() -> LabeledLinkGraph {
        let g = s3_graph(6).unwrap();
        let e = Triple::new(0, 2, 4).unwrap();
        link_of_edge(&g, &e).unwrap()
    }

    #[test]
    fn s36_link_is_rainbow_triangle() {
        let l = s36_link();
        assert_eq!(l.vertices(), &[1, 3, 5]);
        // l(3,5) = {0}, l(1,5) = {2}, l(1,3) = {4}
        assert_eq!(l.label(3, 5), 0b001);
        assert_eq!(l.label(1, 5), 0b010);
        assert_eq!(l.label(1, 3), 0b100);
        assert_eq!(l.gamma(0), &[5]); // Gamma_{0,2}
        assert_eq!(l.gamma(1), &[3]); // Gamma_{0,4}
        assert_eq!(l.gamma(2), &[1]); // Gamma_{2,4}
        assert_eq!(l.weight(), 3);
        assert!(is_rainbow_t3(&l));
        assert!(l.gamma_disjoint());
    }

    #[test]
    fn k4_minus_link_flags_gamma_overlap() {
        let g = make_system(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert!(l.edges().is_empty());
        assert_eq!(l.gamma(0), &[3]); // Gamma_{0,1} via 013
        assert_eq!(l.gamma(1), &[3]); // Gamma_{0,2} via 023
        assert!(l.gamma(2).is_empty());
        assert!(!l.gamma_disjoint());
        assert_eq!(l.gamma_overlap(), vec![3]);
    }

    #[test]
    fn single_edge_link_is_empty() {
        let g = make_system(6, &[[0, 1, 2]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert!(l.edges().is_empty());
        assert!(l.gamma_union().is_empty());
        assert_eq!(l.weight(), 0);
    }

    #[test]
    fn single_weight_two_edge_has_weight_two() {
        // anchor {0,1,2}; pair {3,4} completed by both 0 and 1
        let g = make_system(5, &[[0, 1, 2], [0, 3, 4], [1, 3, 4]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert_eq!(l.weight(), 2);
        assert_eq!(l.label(3, 4), 0b011);
    }

    #[test]
    fn link_requires_edge_in_system() {
        let g = make_system(6, &[[0, 1, 2]]).unwrap();
        let e = Triple::new(3, 4, 5).unwrap();
        assert!(link_of_edge(&g, &e).is_err());
    }

    #[test]
    fn overlap_profile_s36() {
        let g = s3_graph(6).unwrap();
        let e = Triple::new(0, 2, 4).unwrap();
        assert_eq!(overlap_profile(&g, &e).unwrap(), [1, 3, 3, 1]);
    }

    #[test]
    fn overlap_profile_single_edge() {
        let g = make_system(6, &[[0, 1, 2]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        assert_eq!(overlap_profile(&g, &e).unwrap(), [0, 0, 0, 1]);
    }

    #[test]
    fn overlap_profile_c5() {
        let g = NamedGraph::C5Tight.system();
        let e = Triple::new(0, 1, 2).unwrap();
        let p = overlap_profile(&g, &e).unwrap();
        assert_eq!(p[3], 1);
        assert_eq!(p[0] + p[1] + p[2], 4);
    }

    #[test]
    fn profile_identities_match_link() {
        let g = s3_graph(6).unwrap();
        for e in g.edges() {
            let l = link_of_edge(&g, e).unwrap();
            let p = overlap_profile(&g, e).unwrap();
            assert_eq!(p[1], l.weight());
            let gamma_total: usize = (0..3).map(|i| l.gamma(i).len()).sum();
            assert_eq!(p[2], gamma_total);
            assert_eq!(p.iter().sum::<usize>(), g.size());
        }
    }

    #[test]
    fn rainbow_rejects_weight_two_edge() {
        // S3(6) plus 235: the anchor {0,2,4} link pair (3,5) gains a second
        // label, so the link is no longer weight-1 everywhere.
        let g = s3_graph(6).unwrap().with_edge(Triple::new(2, 3, 5).unwrap());
        let e = Triple::new(0, 2, 4).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert_eq!(l.label(3, 5), 0b011);
        assert!(!is_rainbow_t3(&l));
    }

    #[test]
    fn rainbow_on_tiny_links() {
        // |V-| = 2: the link must be K2 with one label, not the empty graph.
        let g = make_system(5, &[[0, 1, 2], [0, 3, 4]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        assert!(is_rainbow_t3(&link_of_edge(&g, &e).unwrap()));
        let g = make_system(5, &[[0, 1, 2]]).unwrap();
        assert!(!is_rainbow_t3(&link_of_edge(&g, &e).unwrap()));
        // |V-| = 1 and |V-| = 0 are vacuously balanced
        let g = make_system(4, &[[0, 1, 2]]).unwrap();
        assert!(is_rainbow_t3(&link_of_edge(&g, &e).unwrap()));
        let g = make_system(3, &[[0, 1, 2]]).unwrap();
        assert!(is_rainbow_t3(&link_of_edge(&g, &e).unwrap()));
    }

    #[test]
    fn rainbow_rejects_non_rainbow_triangle() {
        // Build a host whose link triangle has two equal labels: anchor
        // {0,1,2}, link on {3,4,5} with l(34)=0, l(35)=0, l(45)=1.
        let g = make_system(
            6,
            &[[0, 1, 2], [0, 3, 4], [0, 3, 5], [1, 4, 5]],
        )
        .unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert!(!is_rainbow_t3(&l));
    }

    #[test]
    fn partition_of_s36_link() {
        let l = s36_link();
        let p = partition(&l);
        assert_eq!(p.gamma_abc, vec![1, 3, 5]);
        assert!(p.v4.is_empty());
        assert!(p.rest.is_empty());
        assert!(p.overlap.is_empty());
    }

    #[test]
    fn partition_rainbow_k4_all_v4() {
        // Anchor {0,1,2}; link K4 on {3,4,5,6} rainbow, no Gamma members.
        let g = make_system(
            7,
            &[
                [0, 1, 2],
                [0, 3, 4], // l(34)=a
                [1, 3, 5], // l(35)=b
                [2, 3, 6], // l(36)=c
                [2, 4, 5], // l(45)=c
                [1, 4, 6], // l(46)=b
                [0, 5, 6], // l(56)=a
            ],
        )
        .unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        let p = partition(&l);
        assert!(p.gamma_abc.is_empty());
        assert_eq!(p.v4, vec![3, 4, 5, 6]);
        assert!(p.rest.is_empty());
    }

    #[test]
    fn partition_rest_when_gamma_partial() {
        // Anchor {0,1,2} with only one Gamma member and no link edges.
        let g = make_system(6, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        let p = partition(&l);
        assert_eq!(p.gamma_abc, vec![3]);
        assert!(p.v4.is_empty());
        assert_eq!(p.rest, vec![4, 5]);
    }

    #[test]
    fn scan_clean_on_free_graph_links() {
        let g = s3_graph(6).unwrap();
        for e in g.edges() {
            let l = link_of_edge(&g, e).unwrap();
            assert!(forbidden_config_scan(&l).is_empty());
        }
    }

    #[test]
    fn scan_finds_monochromatic_triangle() {
        // Anchor {0,1,2}; link triangle {3,4,5} all labeled by vertex 0.
        let g = make_system(6, &[[0, 1, 2], [0, 3, 4], [0, 3, 5], [0, 4, 5]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        let hits = forbidden_config_scan(&l);
        let k1: Vec<_> = hits
            .iter()
            .filter(|w| w.config == ConfigId::K4mC1)
            .collect();
        assert_eq!(k1.len(), 1);
        let w = k1[0];
        assert_eq!(w.roles[0], 0);
        assert_eq!(w.vertices, vec![3, 4, 5]);
        assert!(w
            .implied
            .validates(&g, &w.config.pattern().system()));
        assert!(!is_free(&g, &Family::kf6()).is_free());
    }

    #[test]
    fn scan_finds_k4m2() {
        // x in Gamma_ab and l(xy) = ab: anchor {0,1,2}, x=3, y=4.
        let g = make_system(5, &[[0, 1, 2], [0, 1, 3], [0, 3, 4], [1, 3, 4]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        let hits = forbidden_config_scan(&l);
        let k2: Vec<_> = hits
            .iter()
            .filter(|w| w.config == ConfigId::K4mC2)
            .collect();
        assert!(!k2.is_empty());
        for w in k2 {
            assert!(w.implied.validates(&g, &w.config.pattern().system()));
        }
    }

    #[test]
    fn audit_passes_on_s3_links() {
        let g = s3_graph(6).unwrap();
        for e in g.edges() {
            let report = structural_audit(&g, e).unwrap();
            assert!(report.all_pass(), "failed: {:?}", report.failed());
        }
    }

    #[test]
    fn audit_fails_on_k4_complete() {
        let g = NamedGraph::K4Complete.system();
        for e in g.edges() {
            let report = structural_audit(&g, e).unwrap();
            assert!(!report.all_pass());
            assert!(report.failed().iter().any(|c| c.id == "gamma-disjoint"));
        }
    }

    #[test]
    fn audit_passes_vacuously_on_single_edge() {
        let g = make_system(6, &[[0, 1, 2]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        assert!(structural_audit(&g, &e).unwrap().all_pass());
    }

    #[test]
    fn weight_gamma_bound_on_s3() {
        let g = s3_graph(6).unwrap();
        let e = Triple::new(0, 2, 4).unwrap();
        let b = weight_gamma_bound(&g, &e).unwrap();
        assert_eq!(b.lhs, 6);
        assert_eq!(b.rhs, 6);
        assert!(b.equality_structure);

        let g = s3_graph(9).unwrap();
        // parts {0,1,2}, {3,4,5}, {6,7,8}
        let e = Triple::new(0, 3, 6).unwrap();
        let b = weight_gamma_bound(&g, &e).unwrap();
        assert_eq!(b.lhs, 18);
        assert_eq!(b.rhs, tk_count(3, 6) + 6);
        assert!(b.equality_structure);
    }

    #[test]
    fn weight_gamma_bound_single_edge() {
        let g = make_system(6, &[[0, 1, 2]]).unwrap();
        let e = Triple::new(0, 1, 2).unwrap();
        let b = weight_gamma_bound(&g, &e).unwrap();
        assert_eq!(b.lhs, 0);
        assert!(b.lhs <= b.rhs);
        assert!(!b.equality_structure);
    }

    #[test]
    fn weight_gamma_bound_requires_order_six() {
        let g = NamedGraph::C5Tight.system();
        let e = *g.edges().first().unwrap();
        assert_eq!(
            weight_gamma_bound(&g, &e).unwrap_err(),
            LinkError::OrderTooSmall(5, 6)
        );
    }

    #[test]
    fn split_inequality_cases() {
        assert_eq!(turan_split_inequality(5, 0, 0).unwrap(), (true, true));
        assert_eq!(turan_split_inequality(4, 0, 1).unwrap(), (true, false));
        assert!(turan_split_inequality(1, 1, 1).is_err());
    }

    #[test]
    fn max_gamma_edge_examples() {
        let g = s3_graph(6).unwrap();
        let e = max_gamma_edge(&g).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert_eq!(l.gamma_union().len(), 3);
        assert!(l.gamma_union().len() >= 6 - 2 - 3);

        let g = s3_graph(9).unwrap();
        let e = max_gamma_edge(&g).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert_eq!(l.gamma_union().len(), 6);
        assert!(l.gamma_union().len() >= 9 - 3 - 3);

        // Every edge of the tight 5-cycle has Gamma of size 2; bound is 1.
        let g = NamedGraph::C5Tight.system();
        let e = max_gamma_edge(&g).unwrap();
        let l = link_of_edge(&g, &e).unwrap();
        assert_eq!(l.gamma_union().len(), 2);
        assert!(l.gamma_union().len() >= 5 - 1 - 3);
    }

    #[test]
    fn max_gamma_edge_errors() {
        assert_eq!(
            max_gamma_edge(&TripleSystem::empty(6)).unwrap_err(),
            LinkError::NoEdges
        );
        let g = make_system(6, &[[0, 1, 2]]).unwrap();
        assert_eq!(
            max_gamma_edge(&g).unwrap_err(),
            LinkError::SizeBelowS3 { size: 1, needed: 8 }
        );
    }

    #[test]
    fn convexity_bound_small() {
        assert!(codegree_convexity_bound(6).unwrap()); // 5 < 8
        assert!(codegree_convexity_bound(9).unwrap()); // 20 < 27
        assert!(codegree_convexity_bound(5).is_err());
    }
}
