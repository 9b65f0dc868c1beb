//! Exhaustive canonical enumeration of free systems, exact extremal numbers
//! with uniqueness certification, density sequences, and stability fitting.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use thiserror::Error;

use crate::canon::{canonical_form, canonical_representative, CanonicalCode};
use crate::constructions::{s3_count, s3_graph};
use crate::embed::{is_free, Family};
use crate::system::{triple_count, Triple, TripleSystem, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {0} below minimum {1}")]
    OrderTooSmall(usize, usize),
    #[error("n = {n} is above the enumeration ceiling {ceiling} (override explicitly)")]
    AboveCeiling { n: usize, ceiling: usize },
    #[error("n = {0} is beyond desk-scale certification (max {1})")]
    DeskScaleExceeded(usize, usize),
    #[error("no certified value for n = {0} and the s3 fallback was not enabled")]
    NoCertifiedValue(usize),
}

/// Default full-enumeration ceiling.
pub const ENUMERATION_CEILING: usize = 7;

/// Largest order the branch-and-bound certifier accepts (triple masks are
/// 128-bit; C(10,3) = 120).
pub const BNB_MAX_ORDER: usize = 10;

/// Orders up to this bound use enumeration inside [`extremal`].
const EXTREMAL_ENUMERATION_MAX: usize = 6;

/// How a result was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Enumeration,
    BranchAndBound,
}

impl fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMethod::Enumeration => f.write_str("enumeration"),
            SearchMethod::BranchAndBound => f.write_str("branch_and_bound"),
        }
    }
}

/// Exact (or budget-bounded) Turán number for one order and family.
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub n: usize,
    pub family: String,
    /// Best size found; the exact maximum when `certified`.
    pub ex_value: usize,
    /// All extremal isomorphism classes at `ex_value`, sorted.
    pub extremal: Vec<CanonicalCode>,
    pub unique: bool,
    /// True when the whole search space was covered within budget.
    pub certified: bool,
    /// Upper bound; equals `ex_value` when certified.
    pub upper_bound: usize,
    pub method: SearchMethod,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SizeSel {
    All,
    Exact(usize),
    AtLeast(usize),
}

impl SizeSel {
    fn admits(&self, size: usize) -> bool {
        match self {
            SizeSel::All => true,
            SizeSel::Exact(m) => size == *m,
            SizeSel::AtLeast(m) => size >= *m,
        }
    }
}

/// Precomputed labeled copies of every family member inside K_n, as triple
/// bitmasks, with per-triple and per-triple-pair indexes for incremental
/// violation checks.
struct CopyTables {
    total: usize,
    copies: Vec<u128>,
    by_triple: Vec<Vec<u32>>,
    by_pair: Vec<Vec<Vec<u32>>>,
}

impl CopyTables {
    fn new(n: usize, family: &Family) -> CopyTables {
        let total = triple_count(n);
        assert!(total <= 128, "copy tables need C(n,3) <= 128");
        let mut set: HashSet<u128> = HashSet::new();
        for member in family.members() {
            let p = member.order();
            if p > n {
                continue;
            }
            for perm in (0..n as Vertex).permutations(p) {
                let mut mask = 0u128;
                for t in member.edges() {
                    let [a, b, c] = t.vertices();
                    let img = Triple::new(
                        perm[a as usize],
                        perm[b as usize],
                        perm[c as usize],
                    )
                    .expect("injective");
                    mask |= 1u128 << img.colex_index();
                }
                set.insert(mask);
            }
        }
        let mut copies: Vec<u128> = set.into_iter().collect();
        copies.sort_unstable();
        let mut by_triple = vec![Vec::new(); total];
        let mut by_pair = vec![vec![Vec::new(); total]; total];
        for (id, copy) in copies.iter().enumerate() {
            let bits: Vec<usize> = (0..total).filter(|i| copy >> i & 1 == 1).collect();
            for (bi, &i) in bits.iter().enumerate() {
                by_triple[i].push(id as u32);
                for &j in &bits[bi + 1..] {
                    by_pair[i][j].push(id as u32);
                }
            }
        }
        CopyTables {
            total,
            copies,
            by_triple,
            by_pair,
        }
    }

    /// True iff `mask` (which contains bit `t`) completes some copy through
    /// triple `t`.
    fn violation_through(&self, mask: u128, t: usize) -> bool {
        self.by_triple[t]
            .iter()
            .any(|&c| self.copies[c as usize] & !mask == 0)
    }

    /// True iff `mask` (containing bits `t` and `u`) completes a copy using
    /// both.
    fn violation_through_pair(&self, mask: u128, t: usize, u: usize) -> bool {
        let (lo, hi) = (t.min(u), t.max(u));
        self.by_pair[lo][hi]
            .iter()
            .any(|&c| self.copies[c as usize] & !mask == 0)
    }

    fn addable_count(&self, mask: u128) -> usize {
        (0..self.total)
            .filter(|&u| mask >> u & 1 == 0 && !self.violation_through(mask | 1 << u, u))
            .count()
    }
}

fn system_from_mask(n: usize, mask: u128) -> TripleSystem {
    let words = [mask as u64, (mask >> 64) as u64];
    TripleSystem::from_colex_bitset(n, &words)
}

fn mask_from_system(g: &TripleSystem) -> u128 {
    let words = g.colex_bitset();
    let mut mask = 0u128;
    for (i, w) in words.iter().enumerate() {
        mask |= (*w as u128) << (64 * i);
    }
    mask
}

/// Canonical-augmentation enumeration: one representative per isomorphism
/// class of `family`-free systems on `n` vertices, optionally filtered by
/// size. A child is accepted iff deleting its canonical last edge recovers
/// the parent it was generated from.
pub(crate) fn enumerate_classes(
    n: usize,
    family: &Family,
    sel: SizeSel,
    ceiling: usize,
) -> Result<Vec<TripleSystem>, SearchError> {
    if n > ceiling {
        return Err(SearchError::AboveCeiling { n, ceiling });
    }
    if n > BNB_MAX_ORDER {
        return Err(SearchError::DeskScaleExceeded(n, BNB_MAX_ORDER));
    }
    let tables = CopyTables::new(n, family);
    let empty = TripleSystem::empty(n);
    let empty_code = canonical_form(&empty);
    let mut out = Vec::new();
    if sel.admits(0) {
        out.push(empty.clone());
    }
    let mut stack = vec![(empty, empty_code)];
    while let Some((g, g_code)) = stack.pop() {
        let g_mask = mask_from_system(&g);
        let size = g.size();
        let mut sibling_codes: HashSet<CanonicalCode> = HashSet::new();
        for t in 0..tables.total {
            if g_mask >> t & 1 == 1 {
                continue;
            }
            let h_mask = g_mask | 1 << t;
            if tables.violation_through(h_mask, t) {
                continue;
            }
            match sel {
                SizeSel::Exact(m) if size + 1 > m => continue,
                SizeSel::Exact(m) | SizeSel::AtLeast(m) => {
                    if size + 1 < m && size + 1 + tables.addable_count(h_mask) < m {
                        continue;
                    }
                }
                SizeSel::All => {}
            }
            let h = system_from_mask(n, h_mask);
            let rep = canonical_representative(&h);
            let h_code = canonical_form(&rep);
            if sibling_codes.contains(&h_code) {
                continue;
            }
            // Canonical deletion: remove the colex-largest edge of the
            // canonical representative and compare with the parent.
            let last = *rep.edges().last().expect("h has an edge");
            let parent = TripleSystem::new(
                n,
                rep.edges()
                    .iter()
                    .filter(|e| **e != last)
                    .map(|e| e.vertices()),
            )
            .expect("edges of a valid system");
            if canonical_form(&parent) != g_code {
                continue;
            }
            sibling_codes.insert(h_code.clone());
            if sel.admits(size + 1) {
                out.push(rep.clone());
            }
            stack.push((rep, h_code));
        }
    }
    out.sort_by_key(canonical_form);
    Ok(out)
}

/// One canonical representative per isomorphism class of family-free systems
/// on `n` vertices, optionally filtered to an exact edge count. Orders above
/// the default ceiling of 7 are rejected; use
/// [`enumerate_free_with_ceiling`] to override.
pub fn enumerate_free(
    n: usize,
    family: &Family,
    size_filter: Option<usize>,
) -> Result<Vec<CanonicalCode>, SearchError> {
    enumerate_free_with_ceiling(n, family, size_filter, ENUMERATION_CEILING)
}

pub fn enumerate_free_with_ceiling(
    n: usize,
    family: &Family,
    size_filter: Option<usize>,
    ceiling: usize,
) -> Result<Vec<CanonicalCode>, SearchError> {
    let sel = match size_filter {
        Some(m) => SizeSel::Exact(m),
        None => SizeSel::All,
    };
    let systems = enumerate_classes(n, family, sel, ceiling)?;
    Ok(systems.iter().map(canonical_form).collect())
}

struct Bnb<'a> {
    tables: &'a CopyTables,
    /// Incumbent best size, shared across workers; monotone updates only.
    best: &'a AtomicUsize,
    /// Masks seen with size >= the incumbent at visit time; filtered to the
    /// final best afterwards, which makes the result schedule-independent.
    found: Vec<u128>,
    deadline: Instant,
    aborted: bool,
    open_upper: usize,
    nodes: u64,
}

impl<'a> Bnb<'a> {
    fn dfs(&mut self, mask: u128, size: usize, cands: &[u16]) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(8192) && Instant::now() > self.deadline {
            self.aborted = true;
        }
        if self.aborted {
            self.open_upper = self.open_upper.max(size + cands.len());
            return;
        }
        if size >= self.best.load(Ordering::Relaxed) {
            self.best.fetch_max(size, Ordering::Relaxed);
            self.found.push(mask);
        }
        for (i, &t) in cands.iter().enumerate() {
            if size + (cands.len() - i) < self.best.load(Ordering::Relaxed) {
                break;
            }
            let new_mask = mask | 1 << t;
            let new_cands: Vec<u16> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&u| {
                    !self.tables.violation_through_pair(
                        new_mask | 1 << u,
                        t as usize,
                        u as usize,
                    )
                })
                .collect();
            self.dfs(new_mask, size + 1, &new_cands);
        }
    }
}

fn branch_and_bound(
    n: usize,
    family: &Family,
    budget: Duration,
    workers: usize,
) -> (usize, Vec<TripleSystem>, bool, usize) {
    let tables = CopyTables::new(n, family);
    let total = tables.total;
    // Symmetry breaking: some extremal representative contains the colex
    // least triple {0,1,2} (relabel any edge onto it), so force it in.
    let seed = match s3_graph(n) {
        Ok(s3) if is_free(&s3, family).is_free() => s3.size(),
        _ => 1,
    };
    let root_mask: u128 = 1;
    let root_cands: Vec<u16> = (1..total as u16)
        .filter(|&u| !tables.violation_through_pair(root_mask | 1 << u, 0, u as usize))
        .collect();
    let deadline = Instant::now() + budget;
    let best = AtomicUsize::new(seed);
    let workers = workers.max(1).min(root_cands.len().max(1));

    // Each worker owns the subtrees rooted at its share of the first-branch
    // candidates; the incumbent is shared. The merged result only depends on
    // the final best, so scheduling cannot change the output.
    let run_worker = |offset: usize| -> (Vec<u128>, bool, usize) {
        let mut bnb = Bnb {
            tables: &tables,
            best: &best,
            found: Vec::new(),
            deadline,
            aborted: false,
            open_upper: 0,
            nodes: 0,
        };
        if offset == 0 {
            // the root itself (the single-edge system) belongs to one worker
            if 1 >= bnb.best.load(Ordering::Relaxed) {
                bnb.best.fetch_max(1, Ordering::Relaxed);
                bnb.found.push(root_mask);
            }
        }
        let mut i = offset;
        while i < root_cands.len() {
            let t = root_cands[i];
            if 1 + (root_cands.len() - i) >= bnb.best.load(Ordering::Relaxed) && !bnb.aborted {
                let new_mask = root_mask | 1 << t;
                let new_cands: Vec<u16> = root_cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| {
                        !tables.violation_through_pair(new_mask | 1 << u, t as usize, u as usize)
                    })
                    .collect();
                bnb.dfs(new_mask, 2, &new_cands);
            } else if bnb.aborted {
                bnb.open_upper = bnb.open_upper.max(1 + (root_cands.len() - i));
            }
            i += workers;
        }
        (bnb.found, bnb.aborted, bnb.open_upper)
    };

    let (found, any_aborted, open_upper) = if workers == 1 {
        run_worker(0)
    } else {
        let mut found = Vec::new();
        let mut aborted = false;
        let mut open = 0usize;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| scope.spawn(move || run_worker(w)))
                .collect();
            for h in handles {
                let (f, a, o) = h.join().expect("worker panicked");
                found.extend(f);
                aborted |= a;
                open = open.max(o);
            }
        });
        (found, aborted, open)
    };

    let final_best = best.load(Ordering::Relaxed);
    let mut class_set: HashSet<CanonicalCode> = HashSet::new();
    let mut classes = Vec::new();
    let mut masks = found;
    masks.sort_unstable();
    for mask in &masks {
        let g = system_from_mask(n, *mask);
        if g.size() != final_best {
            continue;
        }
        let code = canonical_form(&g);
        if class_set.insert(code) {
            classes.push(canonical_representative(&g));
        }
    }
    classes.sort_by_key(canonical_form);
    let certified = !any_aborted;
    let upper = if certified {
        final_best
    } else {
        final_best.max(open_upper)
    };
    (final_best, classes, certified, upper)
}

/// Exact Turán number ex(n, family) with all extremal classes and a
/// uniqueness flag. Uses exhaustive enumeration for n <= 6 and
/// branch-and-bound for 7 <= n <= 10. On budget expiry the result is an
/// explicit interval (`certified = false`, `ex_value <=` true value
/// `<= upper_bound`), never a silent wrong answer.
pub fn extremal(
    n: usize,
    family: &Family,
    budget: Duration,
) -> Result<ExtremalResult, SearchError> {
    extremal_with_workers(n, family, budget, 1)
}

/// [`extremal`] with a worker pool for the branch-and-bound phase. Output is
/// identical for every worker count.
pub fn extremal_with_workers(
    n: usize,
    family: &Family,
    budget: Duration,
    workers: usize,
) -> Result<ExtremalResult, SearchError> {
    if n < 3 {
        return Err(SearchError::OrderTooSmall(n, 3));
    }
    if n > BNB_MAX_ORDER {
        return Err(SearchError::DeskScaleExceeded(n, BNB_MAX_ORDER));
    }
    let start = Instant::now();
    let (ex_value, classes, certified, upper, method) = if n <= EXTREMAL_ENUMERATION_MAX {
        let all = enumerate_classes(n, family, SizeSel::All, n)?;
        let best = all.iter().map(TripleSystem::size).max().unwrap_or(0);
        let extremal: Vec<TripleSystem> = all
            .into_iter()
            .filter(|g| g.size() == best)
            .collect();
        (best, extremal, true, best, SearchMethod::Enumeration)
    } else {
        let (best, classes, certified, upper) = branch_and_bound(n, family, budget, workers);
        (best, classes, certified, upper, SearchMethod::BranchAndBound)
    };
    let codes: Vec<CanonicalCode> = classes.iter().map(canonical_form).collect();
    Ok(ExtremalResult {
        n,
        family: family.name().to_string(),
        ex_value,
        unique: codes.len() == 1 && certified,
        extremal: codes,
        certified,
        upper_bound: upper,
        method,
        elapsed: start.elapsed(),
    })
}

/// One point of the density sequence ex(n, F) / C(n,3), as an exact reduced
/// rational. `certified` is false when the s3 fallback supplied the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityPoint {
    pub n: usize,
    pub numerator: u64,
    pub denominator: u64,
    pub certified: bool,
}

impl DensityPoint {
    fn new(n: usize, ex: usize, certified: bool) -> DensityPoint {
        let num = ex as u64;
        let den = triple_count(n) as u64;
        let g = gcd(num, den.max(1));
        DensityPoint {
            n,
            numerator: num / g,
            denominator: (den / g).max(1),
            certified,
        }
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// Exact comparison: self < other as rationals.
    pub fn lt(&self, other: &DensityPoint) -> bool {
        (self.numerator as u128) * (other.denominator as u128)
            < (other.numerator as u128) * (self.denominator as u128)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Density points for the given orders. Orders with a cheap certified value
/// (n <= 6) are computed exactly; beyond that, families with a known
/// extremal construction (kf6, kf5) may fall back to s3(n), flagged as
/// uncertified. Other out-of-range orders are an error.
pub fn density_sequence(
    family: &Family,
    orders: &[usize],
    allow_fallback: bool,
) -> Result<Vec<DensityPoint>, SearchError> {
    let mut out = Vec::new();
    for &n in orders {
        if n < 3 {
            return Err(SearchError::OrderTooSmall(n, 3));
        }
        if n <= EXTREMAL_ENUMERATION_MAX {
            let r = extremal(n, family, Duration::from_secs(60))?;
            out.push(DensityPoint::new(n, r.ex_value, true));
        } else if allow_fallback && matches!(family.name(), "kf6" | "kf5") {
            out.push(DensityPoint::new(n, s3_count(n), false));
        } else {
            return Err(SearchError::NoCertifiedValue(n));
        }
    }
    Ok(out)
}

/// A tripartition of the vertices with the count of non-transversal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityFit {
    /// partition[v] in {0,1,2}
    pub partition: Vec<u8>,
    pub transversal: usize,
    pub defect: usize,
    /// True when the minimum was certified by exhausting all assignments.
    pub exact: bool,
}

impl StabilityFit {
    pub fn defect_fraction(&self) -> f64 {
        let n = self.partition.len() as f64;
        if n == 0.0 {
            0.0
        } else {
            self.defect as f64 / (n * n * n)
        }
    }
}

/// Exact order bound for the 3^n stability scan.
const STABILITY_EXACT_MAX: usize = 14;

/// Best tripartition minimizing the defect (edges not meeting all three
/// parts). Exact for n <= 14 (exhaustive over assignments with vertex 0
/// pinned to part 0); hill climbing with restarts beyond, flagged inexact.
pub fn stability_fit(g: &TripleSystem) -> StabilityFit {
    stability_fit_seeded(g, 0)
}

pub fn stability_fit_seeded(g: &TripleSystem, seed: u64) -> StabilityFit {
    let n = g.order();
    if n == 0 {
        return StabilityFit {
            partition: Vec::new(),
            transversal: 0,
            defect: 0,
            exact: true,
        };
    }
    if n <= STABILITY_EXACT_MAX {
        exact_stability(g)
    } else {
        hill_climb_stability(g, seed, 20)
    }
}

fn defect_of(g: &TripleSystem, assign: &[u8]) -> usize {
    g.edges()
        .iter()
        .filter(|t| {
            let [a, b, c] = t.vertices();
            let (pa, pb, pc) = (
                assign[a as usize],
                assign[b as usize],
                assign[c as usize],
            );
            pa == pb || pa == pc || pb == pc
        })
        .count()
}

fn exact_stability(g: &TripleSystem) -> StabilityFit {
    let n = g.order();
    // Edges grouped by their maximum vertex so the defect accumulates as
    // vertices get assigned.
    let mut edges_by_max: Vec<Vec<[usize; 3]>> = vec![Vec::new(); n];
    for t in g.edges() {
        let [a, b, c] = t.vertices();
        edges_by_max[c as usize].push([a as usize, b as usize, c as usize]);
    }
    let mut assign = vec![0u8; n];
    let mut best_defect = usize::MAX;
    let mut best_assign = vec![0u8; n];

    fn recurse(
        v: usize,
        n: usize,
        assign: &mut Vec<u8>,
        partial: usize,
        edges_by_max: &[Vec<[usize; 3]>],
        best_defect: &mut usize,
        best_assign: &mut Vec<u8>,
    ) {
        if partial >= *best_defect {
            return;
        }
        if v == n {
            *best_defect = partial;
            best_assign.copy_from_slice(assign);
            return;
        }
        // part-relabeling symmetry: vertex 0 stays in part 0
        let parts: &[u8] = if v == 0 { &[0] } else { &[0, 1, 2] };
        for &p in parts {
            assign[v] = p;
            let mut added = 0;
            for e in &edges_by_max[v] {
                let (pa, pb, pc) = (assign[e[0]], assign[e[1]], assign[e[2]]);
                if pa == pb || pa == pc || pb == pc {
                    added += 1;
                }
            }
            recurse(
                v + 1,
                n,
                assign,
                partial + added,
                edges_by_max,
                best_defect,
                best_assign,
            );
        }
        assign[v] = 0;
    }

    recurse(
        0,
        n,
        &mut assign,
        0,
        &edges_by_max,
        &mut best_defect,
        &mut best_assign,
    );
    let defect = best_defect;
    StabilityFit {
        partition: best_assign,
        transversal: g.size() - defect,
        defect,
        exact: true,
    }
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

fn hill_climb_stability(g: &TripleSystem, seed: u64, restarts: usize) -> StabilityFit {
    let n = g.order();
    let mut rng = SplitMix64(seed);
    let mut best: Option<(usize, Vec<u8>)> = None;
    for _ in 0..restarts {
        let mut assign: Vec<u8> = (0..n).map(|_| (rng.next() % 3) as u8).collect();
        let mut defect = defect_of(g, &assign);
        loop {
            let mut improved = false;
            for v in 0..n {
                let original = assign[v];
                let mut local_best = (defect, original);
                for p in 0..3u8 {
                    if p == original {
                        continue;
                    }
                    assign[v] = p;
                    let d = defect_of(g, &assign);
                    if d < local_best.0 {
                        local_best = (d, p);
                    }
                }
                assign[v] = local_best.1;
                if local_best.0 < defect {
                    defect = local_best.0;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().map(|(d, _)| defect < *d).unwrap_or(true) {
            best = Some((defect, assign.clone()));
        }
    }
    let (defect, partition) = best.expect("at least one restart");
    StabilityFit {
        transversal: g.size() - defect,
        partition,
        defect,
        exact: false,
    }
}

fn pair_colex_index(x: usize, y: usize) -> usize {
    debug_assert!(x < y);
    y * (y - 1) / 2 + x
}

/// All isomorphism classes of family-free systems on `n` vertices with at
/// least `min_size` edges. For n <= 6 this filters the full enumeration; for
/// n = 7 it extends every 6-vertex parent class by one vertex with every
/// possible link, which covers all targets because deleting a minimum-degree
/// vertex (degree <= floor(3e/n)) lands in the parent set.
pub fn near_extremal_classes(
    n: usize,
    family: &Family,
    min_size: usize,
) -> Result<Vec<TripleSystem>, SearchError> {
    if n <= EXTREMAL_ENUMERATION_MAX {
        return enumerate_classes(n, family, SizeSel::AtLeast(min_size), n);
    }
    if n != EXTREMAL_ENUMERATION_MAX + 1 {
        return Err(SearchError::DeskScaleExceeded(
            n,
            EXTREMAL_ENUMERATION_MAX + 1,
        ));
    }
    extend_classes_by_vertex(n, family, min_size)
}

/// Vertex-extension sweep: every family-free class on `n` vertices with at
/// least `min_size` edges, built by adding one vertex with an arbitrary link
/// to every free class on n-1 vertices with enough edges. Coverage: a target
/// G has a vertex of degree <= floor(3e/n), whose deletion leaves a parent
/// with at least min over admissible e of (e - floor(3e/n)) edges.
fn extend_classes_by_vertex(
    n: usize,
    family: &Family,
    min_size: usize,
) -> Result<Vec<TripleSystem>, SearchError> {
    let parent_n = n - 1;
    let new_vertex = parent_n as Vertex;
    let parent_min = (min_size..=triple_count(n))
        .map(|e| e - 3 * e / n)
        .min()
        .unwrap_or(0);
    let parents = enumerate_classes(parent_n, family, SizeSel::AtLeast(parent_min), parent_n)?;

    // Copies of each member in K_n that use the new vertex, split into the
    // part inside the parent and the link pairs at the new vertex.
    let mut split_copies: Vec<(u64, u32)> = Vec::new();
    {
        let mut seen: HashSet<(u64, u32)> = HashSet::new();
        for member in family.members() {
            let p = member.order();
            if p > n {
                continue;
            }
            for perm in (0..n as Vertex).permutations(p) {
                if !perm.contains(&new_vertex) {
                    continue;
                }
                let mut pmask = 0u64;
                let mut lmask = 0u32;
                for t in member.edges() {
                    let [a, b, c] = t.vertices();
                    let img = Triple::new(
                        perm[a as usize],
                        perm[b as usize],
                        perm[c as usize],
                    )
                    .expect("injective");
                    if img.contains(new_vertex) {
                        let rest: Vec<usize> = img
                            .vertices()
                            .iter()
                            .map(|&v| v as usize)
                            .filter(|&v| v != new_vertex as usize)
                            .collect();
                        lmask |= 1 << pair_colex_index(rest[0], rest[1]);
                    } else {
                        pmask |= 1 << img.colex_index();
                    }
                }
                if seen.insert((pmask, lmask)) {
                    split_copies.push((pmask, lmask));
                }
            }
        }
    }

    let pair_total = parent_n * (parent_n - 1) / 2;
    let pairs: Vec<(Vertex, Vertex)> = {
        let mut v = Vec::with_capacity(pair_total);
        for y in 0..parent_n {
            for x in 0..y {
                v.push((x as Vertex, y as Vertex));
            }
        }
        v.sort_by_key(|&(x, y)| pair_colex_index(x as usize, y as usize));
        v
    };

    let mut class_set: HashSet<CanonicalCode> = HashSet::new();
    let mut out = Vec::new();
    for parent in &parents {
        let pmask = mask_from_system(parent) as u64;
        // Link-pair obstructions whose parent part is already present;
        // keeping minimal ones is enough for the subset test.
        let mut obstructions: Vec<u32> = split_copies
            .iter()
            .filter(|(pm, _)| pm & !pmask == 0)
            .map(|(_, lm)| *lm)
            .collect();
        obstructions.sort_unstable_by_key(|m| m.count_ones());
        let mut minimal: Vec<u32> = Vec::new();
        for m in obstructions {
            if !minimal.iter().any(|&k| m | k == m) {
                minimal.push(m);
            }
        }
        let need = min_size.saturating_sub(parent.size());
        'links: for link in 0..(1u32 << pair_total) {
            if (link.count_ones() as usize) < need {
                continue;
            }
            for &ob in &minimal {
                if link & ob == ob {
                    continue 'links;
                }
            }
            let mut edges: Vec<[Vertex; 3]> =
                parent.edges().iter().map(|t| t.vertices()).collect();
            for (i, &(x, y)) in pairs.iter().enumerate() {
                if link >> i & 1 == 1 {
                    edges.push([x, y, new_vertex]);
                }
            }
            let child = TripleSystem::new(n, edges).expect("valid construction");
            debug_assert!(is_free(&child, family).is_free());
            let code = canonical_form(&child);
            if class_set.insert(code) {
                out.push(canonical_representative(&child));
            }
        }
    }
    out.sort_by_key(canonical_form);
    Ok(out)
}
