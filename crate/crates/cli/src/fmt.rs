//! On-disk graph formats.
//!
//! GraphFile: optional `#` comment lines, a header `n m`, then m lines of
//! three space-separated 1-based vertex labels.
//!
//! HexCode: `h3:<n>:<hex>` where the hex digits are the big-endian colex
//! triple bitset, zero-padded to ceil(C(n,3)/4) digits. Bijective with
//! triple systems for n <= 64.

use anyhow::{anyhow, bail, Context, Result};

use turan3::constructions::Graph2;
use turan3::system::{triple_count, TripleSystem, Vertex};

pub fn write_graph_file(g: &TripleSystem) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.order(), g.size()));
    for t in g.edges() {
        let [a, b, c] = t.vertices();
        out.push_str(&format!("{} {} {}\n", a + 1, b + 1, c + 1));
    }
    out
}

pub fn parse_graph_file(text: &str) -> Result<TripleSystem> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| anyhow!("empty graph file"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .ok_or_else(|| anyhow!("missing vertex count"))?
        .parse()
        .context("vertex count")?;
    let m: usize = parts
        .next()
        .ok_or_else(|| anyhow!("missing edge count"))?
        .parse()
        .context("edge count")?;
    if parts.next().is_some() {
        bail!("header must be exactly 'n m'");
    }
    let mut triples: Vec<[Vertex; 3]> = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| anyhow!("expected {m} edge lines"))?;
        let vals: Vec<usize> = line
            .split_whitespace()
            .map(|w| w.parse::<usize>().context("vertex label"))
            .collect::<Result<_>>()?;
        if vals.len() != 3 {
            bail!("edge line must have exactly 3 labels: {line:?}");
        }
        let mut t = [0 as Vertex; 3];
        for (i, v) in vals.iter().enumerate() {
            if *v == 0 || *v > n {
                bail!("vertex label {v} out of range 1..={n}");
            }
            t[i] = (*v - 1) as Vertex;
        }
        triples.push(t);
    }
    if let Some(extra) = lines.next() {
        bail!("unexpected trailing line: {extra:?}");
    }
    TripleSystem::new(n, triples).map_err(|e| anyhow!("{e}"))
}

pub fn write_hex_code(g: &TripleSystem) -> Result<String> {
    let n = g.order();
    if n > 64 {
        bail!("hex codes support n <= 64, got {n}");
    }
    let total = triple_count(n);
    let words = g.colex_bitset();
    let digits = total.div_ceil(4);
    let mut out = format!("h3:{n}:");
    for d in (0..digits).rev() {
        let bit = 4 * d;
        let nibble = if bit / 64 < words.len() {
            (words[bit / 64] >> (bit % 64)) & 0xF
        } else {
            0
        };
        out.push(char::from_digit(nibble as u32, 16).expect("nibble"));
    }
    Ok(out)
}

pub fn parse_hex_code(text: &str) -> Result<TripleSystem> {
    let text = text.trim();
    let mut parts = text.splitn(3, ':');
    let tag = parts.next().unwrap_or_default();
    if tag != "h3" {
        bail!("hex code must start with 'h3:'");
    }
    let n: usize = parts
        .next()
        .ok_or_else(|| anyhow!("missing order in hex code"))?
        .parse()
        .context("order")?;
    if n > 64 {
        bail!("hex codes support n <= 64, got {n}");
    }
    let digits = parts.next().ok_or_else(|| anyhow!("missing hex digits"))?;
    let total = triple_count(n);
    let expected = total.div_ceil(4);
    if digits.len() != expected {
        bail!(
            "hex code for n = {n} needs exactly {expected} digits, got {}",
            digits.len()
        );
    }
    let mut words = vec![0u64; total.div_ceil(64).max(1)];
    for (i, ch) in digits.chars().rev().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| anyhow!("invalid hex digit {ch:?}"))? as u64;
        let bit = 4 * i;
        words[bit / 64] |= nibble << (bit % 64);
    }
    // bits beyond C(n,3) must be clear
    for i in total..words.len() * 64 {
        if words[i / 64] >> (i % 64) & 1 == 1 {
            bail!("hex code sets bit {i} beyond C({n},3) = {total}");
        }
    }
    Ok(TripleSystem::from_colex_bitset(n, &words))
}

/// Loads a system from a `h3:` literal, a file containing one, or a
/// GraphFile path.
pub fn load_system(input: &str) -> Result<TripleSystem> {
    if input.starts_with("h3:") {
        return parse_hex_code(input);
    }
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    if text.trim_start().starts_with("h3:") {
        parse_hex_code(text.trim())
    } else {
        parse_graph_file(&text).with_context(|| format!("parsing {input}"))
    }
}

pub fn write_graph2_file(g: &Graph2) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.order(), g.size()));
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e[0] + 1, e[1] + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use turan3::constructions::NamedGraph;

    #[test]
    fn graph_file_round_trip() {
        let g = NamedGraph::F6.system();
        let text = write_graph_file(&g);
        assert!(text.starts_with("6 4\n"));
        assert_eq!(parse_graph_file(&text).unwrap(), g);
    }

    #[test]
    fn graph_file_mirrors_one_based_lists() {
        let text = write_graph_file(&NamedGraph::F6.system());
        // F6 = {123, 124, 345, 156}
        assert_eq!(text, "6 4\n1 2 3\n1 2 4\n1 5 6\n3 4 5\n");
    }

    #[test]
    fn graph_file_accepts_comments() {
        let g = parse_graph_file("# a comment\n\n4 2\n1 2 3\n# inner\n1 2 4\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 2);
    }

    #[test]
    fn graph_file_rejects_bad_labels() {
        assert!(parse_graph_file("4 1\n0 1 2\n").is_err());
        assert!(parse_graph_file("4 1\n1 2 5\n").is_err());
        assert!(parse_graph_file("4 2\n1 2 3\n").is_err());
    }

    #[test]
    fn hex_code_round_trip() {
        for g in [
            NamedGraph::K4Minus.system(),
            NamedGraph::C5Tight.system(),
            turan3::constructions::s3_graph(9).unwrap(),
            TripleSystem::from_colex_bitset(3, &[1]),
            TripleSystem::empty(0),
        ] {
            let code = write_hex_code(&g).unwrap();
            assert_eq!(parse_hex_code(&code).unwrap(), g, "{code}");
        }
    }

    #[test]
    fn both_formats_round_trip_random_systems() {
        let mut state = 0x5eed_u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for n in 3..=12usize {
            for _ in 0..20 {
                let total = triple_count(n);
                let mut words = vec![0u64; total.div_ceil(64)];
                for i in 0..total {
                    if next() % 3 == 0 {
                        words[i / 64] |= 1 << (i % 64);
                    }
                }
                let g = TripleSystem::from_colex_bitset(n, &words);
                assert_eq!(parse_graph_file(&write_graph_file(&g)).unwrap(), g);
                assert_eq!(parse_hex_code(&write_hex_code(&g).unwrap()).unwrap(), g);
            }
        }
    }

    #[test]
    fn hex_code_shape() {
        // C(4,3) = 4 triples -> exactly one digit; K4- = triples 0,1,2
        assert_eq!(
            write_hex_code(&NamedGraph::K4Minus.system()).unwrap(),
            "h3:4:7"
        );
        assert!(parse_hex_code("h3:4:17").is_err()); // too many digits
        assert!(parse_hex_code("h3:4:g").is_err());
        assert!(parse_hex_code("x3:4:7").is_err());
    }
}
