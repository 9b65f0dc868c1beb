mod fmt;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use turan3::constructions::{blow_up, s3_graph, turan_graph, NamedGraph};
use turan3::embed::{is_free, Family, Freeness};
use turan3::link::{forbidden_config_scan, link_of_edge, overlap_profile, partition, structural_audit, weight_gamma_bound};
use turan3::search::{
    density_sequence, enumerate_free_with_ceiling, extremal_with_workers, stability_fit_seeded,
};
use turan3::system::{Triple, TripleSystem, Vertex};
use turan3::verify::{
    suite_blowup_containments, suite_cancellative_equiv, suite_convexity, suite_extremal_table,
    suite_identities, suite_split_inequality, suite_stability, SuiteReport,
};

use fmt::{load_system, write_graph2_file, write_graph_file, write_hex_code};

/// Exact Turán numbers, canonical enumeration, and link-structure audits for
/// 3-uniform hypergraphs.
#[derive(Parser)]
#[command(name = "turan3", version, max_term_width = 100)]
struct Cli {
    /// Config file (key=value: ceiling, budget_secs, workers); defaults to
    /// $TURAN3_CONFIG when set.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for branch-and-bound (identical output at any count).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named construction as a GraphFile (or hex code).
    Construct(ConstructArgs),
    /// Freeness verdict for a system against a forbidden family.
    Check(CheckArgs),
    /// The labeled link graph of one edge, with audits.
    Link(LinkArgs),
    /// Exact Turán number with extremal classes and uniqueness.
    Ex(ExArgs),
    /// Enumerate free isomorphism classes.
    Enumerate(EnumArgs),
    /// Density sequence ex(n, F) / C(n,3).
    Density(DensityArgs),
    /// Best tripartition fit (defect minimization).
    Stability(StabilityArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// One of: s3, c5_3, k4_minus, f5, f6, k4_3, turan2, blowup
    name: String,
    /// Order (s3, turan2).
    #[arg(long)]
    n: Option<usize>,
    /// Part count (turan2).
    #[arg(long)]
    k: Option<usize>,
    /// Base graph for blowup (a named id, or s3 with --n).
    #[arg(long)]
    base: Option<String>,
    /// Blow-up factor.
    #[arg(long)]
    t: Option<usize>,
    /// Emit a hex code instead of a GraphFile.
    #[arg(long)]
    hex: bool,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// GraphFile path or h3: hex code.
    #[arg(long)]
    input: String,
    /// Family: kf6, kf5, k4m, f5, f6, k43
    #[arg(long)]
    family: String,
    /// Include per-edge structural audits and configuration scans.
    #[arg(long)]
    audit: bool,
}

#[derive(Args)]
struct LinkArgs {
    #[arg(long)]
    input: String,
    /// Anchor edge as three 1-based labels, e.g. 1,3,5
    #[arg(long)]
    edge: String,
}

#[derive(Args)]
struct ExArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    family: String,
    /// Soft wall-clock budget in seconds.
    #[arg(long)]
    budget: Option<u64>,
    /// Tab-separated output.
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    family: String,
    /// Filter to an exact edge count.
    #[arg(long)]
    size: Option<usize>,
    /// Override the enumeration ceiling.
    #[arg(long)]
    ceiling: Option<usize>,
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    family: String,
    /// Explicit comma-separated orders, e.g. 3,6,9
    #[arg(long)]
    orders: Option<String>,
    /// Or a range: --min-n/--max-n/--step.
    #[arg(long, default_value_t = 3)]
    min_n: usize,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    step: usize,
    /// Allow the s3(n) fallback beyond the certified range (flagged).
    #[arg(long)]
    fallback: bool,
    #[arg(long)]
    tsv: bool,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long)]
    input: String,
    /// Seed for the local-search fallback on large orders.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// identities | k4-inequality | convexity | blowup-containments |
    /// cancellative-equiv | extremal-table | stability
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long)]
    max_s: Option<usize>,
    #[arg(long)]
    max_t: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    tsv: bool,
}

#[derive(Debug, Clone, Copy)]
struct Config {
    ceiling: usize,
    budget_secs: u64,
    workers: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            ceiling: 7,
            budget_secs: 900,
            workers: 1,
        }
    }
}

fn load_config(flag: Option<&PathBuf>) -> Result<Config> {
    let mut cfg = Config::default();
    let path = flag
        .cloned()
        .or_else(|| std::env::var_os("TURAN3_CONFIG").map(PathBuf::from));
    let Some(path) = path else {
        return Ok(cfg);
    };
    let text =
        std::fs::read_to_string(&path).with_context(|| format!("reading config {path:?}"))?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line must be key=value: {line:?}"))?;
        match key.trim() {
            "ceiling" => cfg.ceiling = value.trim().parse().context("ceiling")?,
            "budget_secs" => cfg.budget_secs = value.trim().parse().context("budget_secs")?,
            "workers" => cfg.workers = value.trim().parse().context("workers")?,
            other => bail!("unknown config key {other:?}"),
        }
    }
    Ok(cfg)
}

fn family_by_name(name: &str) -> Result<Family> {
    Family::by_name(name)
        .ok_or_else(|| anyhow!("unknown family {name:?} (try kf6, kf5, k4m, f5, f6, k43)"))
}

fn one_based(vs: &[Vertex]) -> Vec<usize> {
    vs.iter().map(|v| *v as usize + 1).collect()
}

fn triple_json(t: &Triple) -> Value {
    json!(one_based(&t.vertices()))
}

fn hex_of(g: &TripleSystem) -> Result<String> {
    write_hex_code(g)
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = {
        let mut cfg = load_config(cli.config.as_ref())?;
        if let Some(w) = cli.workers {
            cfg.workers = w.max(1);
        }
        cfg
    };
    match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Check(args) => cmd_check(args),
        Command::Link(args) => cmd_link(args),
        Command::Ex(args) => cmd_ex(args, cfg),
        Command::Enumerate(args) => cmd_enumerate(args, cfg),
        Command::Density(args) => cmd_density(args),
        Command::Stability(args) => cmd_stability(args),
        Command::Verify(args) => cmd_verify(args, cfg),
    }
}

fn cmd_construct(args: ConstructArgs) -> Result<u8> {
    let need_n = || args.n.ok_or_else(|| anyhow!("--n is required for {}", args.name));
    let text = match args.name.as_str() {
        "s3" => render_system(&s3_graph(need_n()?).map_err(|e| anyhow!("{e}"))?, args.hex)?,
        "turan2" => {
            let k = args.k.ok_or_else(|| anyhow!("--k is required for turan2"))?;
            if args.hex {
                bail!("turan2 emits a 2-graph; no hex form");
            }
            write_graph2_file(&turan_graph(k, need_n()?).map_err(|e| anyhow!("{e}"))?)
        }
        "blowup" => {
            let t = args.t.ok_or_else(|| anyhow!("--t is required for blowup"))?;
            let base_name = args
                .base
                .as_deref()
                .ok_or_else(|| anyhow!("--base is required for blowup"))?;
            let base = if base_name == "s3" {
                s3_graph(args.n.ok_or_else(|| anyhow!("--n is required for s3 base"))?)
                    .map_err(|e| anyhow!("{e}"))?
            } else {
                base_name
                    .parse::<NamedGraph>()
                    .map_err(|e| anyhow!("{e}"))?
                    .system()
            };
            render_system(&blow_up(&base, t).map_err(|e| anyhow!("{e}"))?, args.hex)?
        }
        name => {
            let named: NamedGraph = name.parse().map_err(|e| anyhow!("{e}"))?;
            render_system(&named.system(), args.hex)?
        }
    };
    match args.out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {path:?}"))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn render_system(g: &TripleSystem, hex: bool) -> Result<String> {
    Ok(if hex {
        format!("{}\n", write_hex_code(g)?)
    } else {
        write_graph_file(g)
    })
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let start = std::time::Instant::now();
    let g = load_system(&args.input)?;
    let family = family_by_name(&args.family)?;
    let verdict = is_free(&g, &family);
    let mut report = json!({
        "command": "check",
        "input": args.input,
        "n": g.order(),
        "size": g.size(),
        "family": family.name(),
        "free": verdict.is_free(),
    });
    if let Freeness::Violation { member, embedding } = &verdict {
        report["violation"] = json!({
            "member_index": member,
            "member_name": member_name(&family, *member),
            "embedding": one_based(embedding.map()),
        });
    }
    if args.audit {
        let mut audits = Vec::new();
        for e in g.edges() {
            let audit = structural_audit(&g, e).map_err(|e| anyhow!("{e}"))?;
            let l = link_of_edge(&g, e).map_err(|e| anyhow!("{e}"))?;
            let hits = forbidden_config_scan(&l);
            audits.push(json!({
                "edge": triple_json(e),
                "pass": audit.all_pass(),
                "failed_checks": audit.failed().iter().map(|c| c.id).collect::<Vec<_>>(),
                "config_hits": hits.len(),
            }));
        }
        report["audit"] = json!(audits);
    }
    report["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    emit(&report);
    Ok(if verdict.is_free() { 0 } else { 1 })
}

fn member_name(family: &Family, index: usize) -> String {
    // families are built from named graphs in a fixed order
    let names: &[&str] = match family.name() {
        "kf6" => &["k4_minus", "f6"],
        "kf5" => &["k4_minus", "f5"],
        "k4m" => &["k4_minus"],
        "f5" => &["f5"],
        "f6" => &["f6"],
        "k43" => &["k4_3"],
        _ => &[],
    };
    names
        .get(index)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("member-{index}"))
}

fn cmd_link(args: LinkArgs) -> Result<u8> {
    let g = load_system(&args.input)?;
    let labels: Vec<usize> = args
        .edge
        .split(',')
        .map(|w| w.trim().parse::<usize>().context("edge label"))
        .collect::<Result<_>>()?;
    if labels.len() != 3 {
        bail!("--edge needs exactly three labels");
    }
    for &v in &labels {
        if v == 0 || v > g.order() {
            bail!("vertex label {v} out of range 1..={}", g.order());
        }
    }
    let anchor = Triple::new(
        (labels[0] - 1) as Vertex,
        (labels[1] - 1) as Vertex,
        (labels[2] - 1) as Vertex,
    )
    .map_err(|e| anyhow!("{e}"))?;
    let l = link_of_edge(&g, &anchor).map_err(|e| anyhow!("{e}"))?;
    let profile = overlap_profile(&g, &anchor).map_err(|e| anyhow!("{e}"))?;
    let part = partition(&l);
    let audit = structural_audit(&g, &anchor).map_err(|e| anyhow!("{e}"))?;
    let hits = forbidden_config_scan(&l);
    let anchor_vs = anchor.vertices();
    let edges: Vec<Value> = l
        .edges()
        .iter()
        .map(|(y, z, lab)| {
            let labels: Vec<usize> = (0..3)
                .filter(|i| lab >> i & 1 == 1)
                .map(|i| anchor_vs[i] as usize + 1)
                .collect();
            json!({"pair": [*y as usize + 1, *z as usize + 1], "labels": labels})
        })
        .collect();
    let bound = if g.order() >= 6 {
        let wg = weight_gamma_bound(&g, &anchor).map_err(|e| anyhow!("{e}"))?;
        json!({"lhs": wg.lhs, "rhs": wg.rhs, "equality_structure": wg.equality_structure})
    } else {
        Value::Null
    };
    let report = json!({
        "command": "link",
        "anchor": triple_json(&anchor),
        "vertices": one_based(l.vertices()),
        "edges": edges,
        "weight": l.weight(),
        "gamma": {
            "ab": one_based(l.gamma(0)),
            "ac": one_based(l.gamma(1)),
            "bc": one_based(l.gamma(2)),
            "disjoint": l.gamma_disjoint(),
        },
        "profile": profile,
        "rainbow_t3": turan3::link::is_rainbow_t3(&l),
        "partition": {
            "gamma": one_based(&part.gamma_abc),
            "v4": one_based(&part.v4),
            "rest": one_based(&part.rest),
            "overlap": one_based(&part.overlap),
        },
        "weight_gamma_bound": bound,
        "audit_pass": audit.all_pass(),
        "failed_checks": audit.failed().iter().map(|c| c.id).collect::<Vec<_>>(),
        "config_witnesses": hits.iter().map(|w| json!({
            "config": w.config.label(),
            "roles": one_based(&w.roles),
            "vertices": one_based(&w.vertices),
            "pattern": w.config.pattern().name(),
            "implied_embedding": one_based(w.implied.map()),
        })).collect::<Vec<_>>(),
    });
    emit(&report);
    Ok(0)
}

fn cmd_ex(args: ExArgs, cfg: Config) -> Result<u8> {
    let family = family_by_name(&args.family)?;
    let budget = Duration::from_secs(args.budget.unwrap_or(cfg.budget_secs));
    let r = extremal_with_workers(args.n, &family, budget, cfg.workers)
        .map_err(|e| anyhow!("{e}"))?;
    let classes: Vec<String> = r
        .extremal
        .iter()
        .map(|c| hex_of(&c.to_system()))
        .collect::<Result<_>>()?;
    if args.tsv {
        println!("n\tfamily\tex\tunique\tcertified\tupper\tmethod\telapsed_ms\tclasses");
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.n,
            r.family,
            r.ex_value,
            r.unique,
            r.certified,
            r.upper_bound,
            r.method,
            r.elapsed.as_millis(),
            classes.join(",")
        );
    } else {
        emit(&json!({
            "command": "ex",
            "n": r.n,
            "family": r.family,
            "ex": r.ex_value,
            "unique": r.unique,
            "certified": r.certified,
            "upper_bound": r.upper_bound,
            "method": r.method.to_string(),
            "elapsed_ms": r.elapsed.as_millis() as u64,
            "extremal": classes,
        }));
    }
    Ok(if r.certified { 0 } else { 3 })
}

fn cmd_enumerate(args: EnumArgs, cfg: Config) -> Result<u8> {
    let start = std::time::Instant::now();
    let family = family_by_name(&args.family)?;
    let ceiling = args.ceiling.unwrap_or(cfg.ceiling);
    let classes = enumerate_free_with_ceiling(args.n, &family, args.size, ceiling)
        .map_err(|e| anyhow!("{e}"))?;
    let codes: Vec<String> = classes
        .iter()
        .map(|c| hex_of(&c.to_system()))
        .collect::<Result<_>>()?;
    if args.tsv {
        for c in &codes {
            println!("{c}");
        }
    } else {
        emit(&json!({
            "command": "enumerate",
            "n": args.n,
            "family": family.name(),
            "size": args.size,
            "count": codes.len(),
            "classes": codes,
            "elapsed_ms": start.elapsed().as_millis() as u64,
        }));
    }
    Ok(0)
}

fn cmd_density(args: DensityArgs) -> Result<u8> {
    let family = family_by_name(&args.family)?;
    let orders: Vec<usize> = match (&args.orders, args.max_n) {
        (Some(list), _) => list
            .split(',')
            .map(|w| w.trim().parse::<usize>().context("order"))
            .collect::<Result<_>>()?,
        (None, Some(max_n)) => {
            if args.step == 0 {
                bail!("--step must be positive");
            }
            (args.min_n..=max_n).step_by(args.step).collect()
        }
        (None, None) => bail!("pass --orders or --max-n"),
    };
    let points =
        density_sequence(&family, &orders, args.fallback).map_err(|e| anyhow!("{e}"))?;
    if args.tsv {
        println!("n\tex\tdensity\tvalue\tcertified");
        for p in &points {
            println!(
                "{}\t{}\t{}/{}\t{:.6}\t{}",
                p.n,
                p.numerator * (turan3::system::triple_count(p.n) as u64) / p.denominator,
                p.numerator,
                p.denominator,
                p.value(),
                p.certified
            );
        }
    } else {
        emit(&json!({
            "command": "density",
            "family": family.name(),
            "points": points.iter().map(|p| json!({
                "n": p.n,
                "numerator": p.numerator,
                "denominator": p.denominator,
                "value": p.value(),
                "certified": p.certified,
            })).collect::<Vec<_>>(),
        }));
    }
    Ok(0)
}

fn cmd_stability(args: StabilityArgs) -> Result<u8> {
    let start = std::time::Instant::now();
    let g = load_system(&args.input)?;
    let fit = stability_fit_seeded(&g, args.seed);
    let parts: Vec<Vec<usize>> = (0..3u8)
        .map(|p| {
            fit.partition
                .iter()
                .enumerate()
                .filter(|(_, q)| **q == p)
                .map(|(v, _)| v + 1)
                .collect()
        })
        .collect();
    emit(&json!({
        "command": "stability",
        "n": g.order(),
        "size": g.size(),
        "defect": fit.defect,
        "transversal": fit.transversal,
        "defect_fraction": fit.defect_fraction(),
        "exact": fit.exact,
        "parts": parts,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    }));
    Ok(0)
}

fn cmd_verify(args: VerifyArgs, cfg: Config) -> Result<u8> {
    let budget = Duration::from_secs(args.budget.unwrap_or(cfg.budget_secs));
    let report: SuiteReport = match args.suite.as_str() {
        "identities" => suite_identities(args.max_n.unwrap_or(1000), args.max_k.unwrap_or(10)),
        "k4-inequality" => suite_split_inequality(args.max_s.unwrap_or(200)),
        "convexity" => suite_convexity(args.max_n.unwrap_or(10000)),
        "blowup-containments" => suite_blowup_containments(args.max_t.unwrap_or(3)),
        "cancellative-equiv" => suite_cancellative_equiv(args.n.unwrap_or(6)),
        "extremal-table" => {
            let family = family_by_name(args.family.as_deref().unwrap_or("kf6"))?;
            let max_n = args.max_n.unwrap_or(if family.name() == "kf5" { 7 } else { 8 });
            suite_extremal_table(&family, max_n, budget).map_err(|e| anyhow!("{e}"))?
        }
        "stability" => {
            let family = family_by_name(args.family.as_deref().unwrap_or("kf6"))?;
            suite_stability(&family, args.max_n.unwrap_or(14)).map_err(|e| anyhow!("{e}"))?
        }
        other => bail!("unknown suite {other:?}"),
    };
    if args.tsv {
        println!("suite\tclaim\tpass\tdetail");
        for c in &report.claims {
            println!("{}\t{}\t{}\t{}", report.suite, c.label, c.pass, c.detail);
        }
    } else {
        emit(&json!({
            "command": "verify",
            "suite": report.suite,
            "pass": report.all_pass(),
            "claims": report.claims.iter().map(|c| json!({
                "label": c.label,
                "pass": c.pass,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        }));
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}
