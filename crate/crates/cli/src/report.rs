//! Text and JSON rendering of search results.

use std::collections::BTreeMap;
use std::fmt::Write;

use oppsym::{ColoredGraph, ComparisonReport, Heuristic, Mode, SearchResult};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mode: String,
    pub heuristic: String,
    pub group_order: String,
    pub generators: Vec<String>,
    pub nodes: u64,
    pub conflicts: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict_depth_histogram: Option<BTreeMap<u32, u64>>,
    pub bad_leaves: u64,
    pub time_ms: u64,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<BaselineSummary>,
}

/// The baseline half of a comparison run.
#[derive(Debug, Serialize)]
pub struct BaselineSummary {
    pub group_order: String,
    pub generators: Vec<String>,
    pub nodes: u64,
    pub conflicts: u64,
    pub bad_leaves: u64,
    pub time_ms: u64,
    pub complete: bool,
}

fn generator_strings(r: &SearchResult) -> Vec<String> {
    r.generators.iter().map(|g| g.to_string()).collect()
}

fn millis(r: &SearchResult) -> u64 {
    r.stats.elapsed.as_millis() as u64
}

impl JsonReport {
    pub fn single(g: &ColoredGraph, mode: Mode, heuristic: Heuristic, r: &SearchResult) -> Self {
        JsonReport {
            n: g.n(),
            m: g.m(),
            k: g.k(),
            mode: mode.to_string(),
            heuristic: heuristic.to_string(),
            group_order: r.stats.group_order.to_string(),
            generators: generator_strings(r),
            nodes: r.stats.nodes,
            conflicts: r.stats.conflicts,
            conflict_depth_histogram: None,
            bad_leaves: r.stats.bad_leaves,
            time_ms: millis(r),
            complete: r.stats.complete,
            baseline: None,
        }
    }

    /// Top-level numbers come from the enhanced run.
    pub fn comparison(g: &ColoredGraph, heuristic: Heuristic, c: &ComparisonReport) -> Self {
        let b = &c.baseline;
        JsonReport {
            mode: "compare".into(),
            conflict_depth_histogram: Some(c.histogram.clone()),
            complete: c.comparable,
            baseline: Some(BaselineSummary {
                group_order: b.stats.group_order.to_string(),
                generators: generator_strings(b),
                nodes: b.stats.nodes,
                conflicts: b.stats.conflicts,
                bad_leaves: b.stats.bad_leaves,
                time_ms: millis(b),
                complete: b.stats.complete,
            }),
            ..JsonReport::single(g, Mode::Enhanced, heuristic, &c.enhanced)
        }
    }
}

pub fn text_single(r: &SearchResult) -> String {
    let mut out = String::new();
    for g in &r.generators {
        let _ = writeln!(out, "{g}");
    }
    stats_block(&mut out, r);
    out
}

fn stats_block(out: &mut String, r: &SearchResult) {
    let s = &r.stats;
    let _ = writeln!(out, "group_order {}", s.group_order);
    let _ = writeln!(out, "generators {}", r.generators.len());
    let _ = writeln!(out, "nodes {}", s.nodes);
    let _ = writeln!(out, "conflicts {}", s.conflicts);
    let _ = writeln!(out, "bad_leaves {}", s.bad_leaves);
    let _ = writeln!(out, "complete {}", s.complete);
    let _ = writeln!(out, "time_ms {}", s.elapsed.as_millis());
}

pub fn text_comparison(c: &ComparisonReport) -> String {
    let mut out = text_single(&c.enhanced);
    let _ = writeln!(
        out,
        "conflicts baseline={} enhanced={}",
        c.baseline.stats.conflicts, c.enhanced.stats.conflicts
    );
    let _ = writeln!(
        out,
        "nodes baseline={} enhanced={}",
        c.baseline.stats.nodes, c.enhanced.stats.nodes
    );
    if !c.orders_agree() {
        let _ = writeln!(out, "baseline_group_order {}", c.baseline.stats.group_order);
    }
    out.push_str("histogram");
    for (depth, count) in &c.histogram {
        let _ = write!(out, " {depth}:{count}");
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use oppsym::{run_comparison, search, SearchConfig};

    fn square() -> ColoredGraph {
        ColoredGraph::new(vec![0; 4], &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn text_lists_generators_before_stats() {
        let r = search(&square(), &SearchConfig::default()).unwrap();
        let text = text_single(&r);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), r.generators.len() + 7);
        assert!(lines[..r.generators.len()]
            .iter()
            .all(|l| l.starts_with('(')));
        assert_eq!(lines[r.generators.len()], "group_order 8");
    }

    #[test]
    fn comparison_json_nests_the_baseline() {
        let g = square();
        let c = run_comparison(&g, &SearchConfig::default()).unwrap();
        let v = serde_json::to_value(JsonReport::comparison(&g, Heuristic::First, &c)).unwrap();
        assert_eq!(v["mode"], "compare");
        assert_eq!(v["group_order"], "8");
        assert_eq!(v["baseline"]["group_order"], "8");
        assert!(v["conflict_depth_histogram"].is_object());
    }

    #[test]
    fn single_json_omits_comparison_fields() {
        let g = square();
        let r = search(&g, &SearchConfig::default()).unwrap();
        let v = serde_json::to_value(JsonReport::single(&g, Mode::Enhanced, Heuristic::First, &r))
            .unwrap();
        assert!(v.get("baseline").is_none());
        assert!(v.get("conflict_depth_histogram").is_none());
        assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(4), Some(4)));
    }

    #[test]
    fn histogram_line() {
        // triangle 2-3-5 with tails of different lengths: no symmetry, no conflicts
        let rigid = ColoredGraph::new(
            vec![0; 6],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (3, 5)],
        )
        .unwrap();
        let c = run_comparison(&rigid, &SearchConfig::default()).unwrap();
        assert!(text_comparison(&c).ends_with("\nhistogram\n"));

        let mut c = run_comparison(&square(), &SearchConfig::default()).unwrap();
        c.histogram = [(0, 2), (3, 1)].into_iter().collect();
        assert!(text_comparison(&c).ends_with("\nhistogram 0:2 3:1\n"));
    }
}
