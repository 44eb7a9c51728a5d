//! Running both refinement modes on one graph and relating their conflicts.

use std::collections::BTreeMap;

use crate::graph::ColoredGraph;
use crate::search::{
    search, search_baseline_tracked, Mode, SearchConfig, SearchError, SearchResult,
};

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub baseline: SearchResult,
    pub enhanced: SearchResult,
    /// Baseline conflicts grouped by depth below the ancestor where enhanced
    /// refinement would already have conflicted.
    pub histogram: BTreeMap<u32, u64>,
    /// Nodes where enhanced refinement would conflict first on their path,
    /// as seen from the baseline run. Equals the enhanced conflict count
    /// when both runs complete.
    pub anticipated_conflicts: u64,
    /// Both runs finished within budget.
    pub comparable: bool,
}

impl ComparisonReport {
    pub fn orders_agree(&self) -> bool {
        self.baseline.stats.group_order == self.enhanced.stats.group_order
    }
}

/// Runs baseline and enhanced search (concurrently) with the heuristic and
/// budgets of `config`; its mode is ignored.
pub fn run_comparison(
    g: &ColoredGraph,
    config: &SearchConfig,
) -> Result<ComparisonReport, SearchError> {
    let enhanced_cfg = SearchConfig {
        mode: Mode::Enhanced,
        ..config.clone()
    };
    let (baseline, enhanced) = std::thread::scope(|s| {
        let handle = s.spawn(|| search_baseline_tracked(g, config));
        let enhanced = search(g, &enhanced_cfg);
        (handle.join().expect("baseline search panicked"), enhanced)
    });
    let (baseline, anticipation) = baseline?;
    let enhanced = enhanced?;
    let comparable = baseline.stats.complete && enhanced.stats.complete;
    Ok(ComparisonReport {
        histogram: anticipation.histogram,
        anticipated_conflicts: anticipation.roots,
        comparable,
        baseline,
        enhanced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rigid_graph_has_empty_histogram() {
        // triangle 2-3-5 with tails of different lengths
        let g = ColoredGraph::new(
            vec![0; 6],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 3)],
        )
        .unwrap();
        let r = run_comparison(&g, &SearchConfig::default()).unwrap();
        assert!(r.comparable && r.orders_agree());
        assert_eq!(r.baseline.stats.conflicts, 0);
        assert!(r.histogram.is_empty());
    }

    #[test]
    fn histogram_accounts_for_every_baseline_conflict() {
        let g = ColoredGraph::new(
            vec![0; 8],
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
            ],
        )
        .unwrap();
        let r = run_comparison(&g, &SearchConfig::default()).unwrap();
        assert!(r.orders_agree());
        assert_eq!(
            r.histogram.values().sum::<u64>(),
            r.baseline.stats.conflicts
        );
        assert_eq!(r.anticipated_conflicts, r.enhanced.stats.conflicts);
        assert!(r.enhanced.stats.conflicts <= r.baseline.stats.conflicts);
    }
}
