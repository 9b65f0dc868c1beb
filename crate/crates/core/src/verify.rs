//! Named verification suites: each runs a batch of exact checks against the
//! reference formulas and constructions and reports one pass/fail line per
//! claim. The CLI `verify` command and the acceptance tests share these.

use std::time::Duration;

use crate::canon::canonical_form;
use crate::constructions::{blow_up, counting_identity, s3_count, s3_graph, NamedGraph};
use crate::embed::{find_embedding, is_cancellative, is_free, Family};
use crate::link::{codegree_convexity_bound, turan_split_inequality};
use crate::search::{extremal, near_extremal_classes, stability_fit, SearchError};
use crate::system::{triple_count, TripleSystem};

/// One verified claim.
#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl ClaimResult {
    fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        ClaimResult {
            label: label.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// A suite's worth of claims.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub claims: Vec<ClaimResult>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

/// The four counting identities over their full admissible ranges.
pub fn suite_identities(max_n: usize, max_k: usize) -> SuiteReport {
    let mut claims = Vec::new();
    for (which, start) in [(1u8, 6usize), (2, 6), (3, 5)] {
        let mut fail = None;
        for n in start..=max_n {
            if !counting_identity(which, n, 3).expect("in range") {
                fail = Some(n);
                break;
            }
        }
        claims.push(ClaimResult::new(
            format!("identity ({which}) for {start} <= n <= {max_n}"),
            fail.is_none(),
            match fail {
                None => format!("checked {} orders", max_n + 1 - start),
                Some(n) => format!("first failure at n = {n}"),
            },
        ));
    }
    let mut fail = None;
    'outer: for k in 3..=max_k {
        for n in k..=max_n {
            if !counting_identity(4, n, k).expect("in range") {
                fail = Some((n, k));
                break 'outer;
            }
        }
    }
    claims.push(ClaimResult::new(
        format!("identity (4) for 3 <= k <= {max_k}, k <= n <= {max_n}"),
        fail.is_none(),
        match fail {
            None => "checked all (n, k)".to_string(),
            Some((n, k)) => format!("first failure at n = {n}, k = {k}"),
        },
    ));
    SuiteReport {
        suite: "identities".to_string(),
        claims,
    }
}

/// The split inequality over every admissible (j, k, l) with j+k+l <= max_s,
/// with equality exactly at l = 0.
pub fn suite_split_inequality(max_s: usize) -> SuiteReport {
    let mut holds = true;
    let mut equality_iff_l0 = true;
    let mut checked = 0usize;
    for s in 5..=max_s {
        for j in 0..=s {
            if j + s / 3 + 1 < s {
                continue;
            }
            for k in 0..=(s - j) {
                let l = s - j - k;
                let (h, eq) = turan_split_inequality(j, k, l).expect("admissible");
                checked += 1;
                if !h {
                    holds = false;
                }
                if eq != (l == 0) {
                    equality_iff_l0 = false;
                }
            }
        }
    }
    SuiteReport {
        suite: "k4-inequality".to_string(),
        claims: vec![
            ClaimResult::new(
                format!("t3(j+k)+t4(l)+j+k+kl <= t3(s)+s for all admissible s <= {max_s}"),
                holds,
                format!("checked {checked} triples"),
            ),
            ClaimResult::new(
                "equality exactly at l = 0",
                equality_iff_l0,
                format!("checked {checked} triples"),
            ),
        ],
    }
}

/// The codegree convexity bound n(n-1)(n-floor(n/3)-1)/18 < s3(n).
pub fn suite_convexity(max_n: usize) -> SuiteReport {
    let fail = (6..=max_n).find(|&n| !codegree_convexity_bound(n).expect("n >= 6"));
    SuiteReport {
        suite: "convexity".to_string(),
        claims: vec![ClaimResult::new(
            format!("convexity bound strict for 6 <= n <= {max_n}"),
            fail.is_none(),
            match fail {
                None => format!("checked {} orders", max_n - 5),
                Some(n) => format!("first failure at n = {n}"),
            },
        )],
    }
}

/// Blow-up containments: F5 and F6 embed in K4-(2); F6 embeds in no blow-up
/// F5(t) for t <= max_t (finite evidence for the blow-up-free claim).
pub fn suite_blowup_containments(max_t: usize) -> SuiteReport {
    let k4m2 = blow_up(&NamedGraph::K4Minus.system(), 2).expect("t = 2");
    let mut claims = vec![
        ClaimResult::new(
            "F5 embeds in K4-(2)",
            find_embedding(&k4m2, &NamedGraph::F5.system()).is_some(),
            "witness by search",
        ),
        ClaimResult::new(
            "F6 embeds in K4-(2)",
            find_embedding(&k4m2, &NamedGraph::F6.system()).is_some(),
            "witness by search",
        ),
    ];
    for t in 1..=max_t {
        let host = blow_up(&NamedGraph::F5.system(), t).expect("t >= 1");
        claims.push(ClaimResult::new(
            format!("F6 does not embed in F5({t})"),
            find_embedding(&host, &NamedGraph::F6.system()).is_none(),
            "partial evidence: finite t only",
        ));
    }
    SuiteReport {
        suite: "blowup-containments".to_string(),
        claims,
    }
}

/// Exhaustive equivalence of the cancellative property with {K4-, F5}
/// freeness over every labeled 3-graph on n vertices.
pub fn suite_cancellative_equiv(n: usize) -> SuiteReport {
    assert!(n <= 6, "exhaustive sweep is desk-scale only");
    let total = triple_count(n);
    let family = Family::kf5();
    let mut mismatches = 0u64;
    let mut free_count = 0u64;
    for mask in 0..(1u64 << total) {
        let g = TripleSystem::from_colex_bitset(n, &[mask]);
        let canc = is_cancellative(&g);
        let free = is_free(&g, &family).is_free();
        if canc != free {
            mismatches += 1;
        }
        if free {
            free_count += 1;
        }
    }
    SuiteReport {
        suite: "cancellative-equiv".to_string(),
        claims: vec![ClaimResult::new(
            format!("cancellative iff {{K4-,F5}}-free over all 2^{total} 3-graphs on {n} vertices"),
            mismatches == 0,
            format!("{free_count} free graphs, {mismatches} mismatches"),
        )],
    }
}

/// Expected extremal data for the reference families: (ex value, unique
/// extremal class).
pub fn expected_extremal(family: &Family, n: usize) -> Option<(usize, TripleSystem)> {
    match (family.name(), n) {
        ("kf6", 5) => Some((5, NamedGraph::C5Tight.system())),
        ("kf6", _) if n >= 3 => Some((s3_count(n), s3_graph(n).expect("n >= 3"))),
        ("kf5", _) if (3..=7).contains(&n) => Some((s3_count(n), s3_graph(n).expect("n >= 3"))),
        _ => None,
    }
}

/// The extremal table for a reference family up to max_n: exact value,
/// uniqueness, and the identity of the extremal class.
pub fn suite_extremal_table(
    family: &Family,
    max_n: usize,
    budget: Duration,
) -> Result<SuiteReport, SearchError> {
    let mut claims = Vec::new();
    for n in 3..=max_n {
        let Some((expect_ex, expect_class)) = expected_extremal(family, n) else {
            continue;
        };
        let r = extremal(n, family, budget)?;
        if !r.certified {
            claims.push(ClaimResult::new(
                format!("ex({n}, {}) = {expect_ex}", family.name()),
                r.ex_value == expect_ex,
                format!(
                    "budget expired: interval [{}, {}]",
                    r.ex_value, r.upper_bound
                ),
            ));
            continue;
        }
        let class_ok = r.extremal == vec![canonical_form(&expect_class)];
        claims.push(ClaimResult::new(
            format!("ex({n}, {}) = {expect_ex} with unique extremal class", family.name()),
            r.ex_value == expect_ex && r.unique && class_ok,
            format!(
                "got {} ({} classes, method {})",
                r.ex_value,
                r.extremal.len(),
                r.method
            ),
        ));
    }
    Ok(SuiteReport {
        suite: "extremal-table".to_string(),
        claims,
    })
}

/// Empirical stability: S3(n) fits with zero defect for n <= max_s3, and
/// every near-extremal free system on 7 vertices has small exact defect.
pub fn suite_stability(family: &Family, max_s3: usize) -> Result<SuiteReport, SearchError> {
    let mut claims = Vec::new();
    let mut worst = 0usize;
    for n in 3..=max_s3 {
        let fit = stability_fit(&s3_graph(n).expect("n >= 3"));
        worst = worst.max(fit.defect);
    }
    claims.push(ClaimResult::new(
        format!("defect(S3(n)) = 0 for 3 <= n <= {max_s3}"),
        worst == 0,
        format!("worst defect {worst}"),
    ));
    let min_size = s3_count(7) - 1;
    let corpus = near_extremal_classes(7, family, min_size)?;
    let mut max_defect = 0usize;
    let mut all_exact = true;
    for g in &corpus {
        let fit = stability_fit(g);
        max_defect = max_defect.max(fit.defect);
        all_exact &= fit.exact;
    }
    claims.push(ClaimResult::new(
        format!(
            "every {}-free system on 7 vertices with e >= {min_size} has exact defect <= 2",
            family.name()
        ),
        max_defect <= 2 && all_exact,
        format!("{} systems, max defect {max_defect}", corpus.len()),
    ));
    Ok(SuiteReport {
        suite: "stability".to_string(),
        claims,
    })
}
