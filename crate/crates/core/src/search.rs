//! Depth-first search over OPPs.
//!
//! The leftmost path individualizes one target per level and maps it to
//! itself, producing a chain of point stabilizers that ends in the identity.
//! Levels are then revisited bottom-up: at each level the target is mapped
//! to every other vertex of its cell that is not already known to be in the
//! same orbit as an earlier candidate, and the resulting subtree is searched
//! until one automorphism (a coset representative) is found or the subtree
//! is exhausted. The group order is the product of the targets' orbit sizes.
//!
//! Partitions are never copied during the search. The top and bottom
//! partitions are mutated in place and rolled back with
//! [`OrderedPartition::undo_to`]; the top of each decision is refined once
//! and its trace reused for every sibling image.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::oracle::OrbitPartition;
use crate::partition::{Mark, Opp, OrderedPartition};
use crate::perm::Permutation;
use crate::refine::{refine_top, replay_bottom, Checks, Conflict, Scratch, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    Baseline,
    #[default]
    Enhanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Heuristic {
    /// Leftmost non-singleton cell.
    #[default]
    First,
    /// Largest cell, ties broken leftmost.
    Largest,
    /// Smallest non-singleton cell, ties broken leftmost.
    SmallestNonsingleton,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Baseline => "baseline",
            Mode::Enhanced => "enhanced",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "baseline" => Ok(Mode::Baseline),
            "enhanced" => Ok(Mode::Enhanced),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Heuristic::First => "first",
            Heuristic::Largest => "largest",
            Heuristic::SmallestNonsingleton => "smallest-nonsingleton",
        })
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "first" => Ok(Heuristic::First),
            "largest" => Ok(Heuristic::Largest),
            "smallest-nonsingleton" => Ok(Heuristic::SmallestNonsingleton),
            _ => Err(format!("unknown heuristic {s:?}")),
        }
    }
}

pub const DEFAULT_MAX_NODES: u64 = 1_000_000_000;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub mode: Mode,
    pub heuristic: Heuristic,
    pub max_nodes: u64,
    pub timeout: Option<Duration>,
    /// Re-check enhanced-mode leaves with an explicit automorphism test.
    /// Defaults to on in debug builds.
    pub verify_leaves: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: Mode::Enhanced,
            heuristic: Heuristic::First,
            max_nodes: DEFAULT_MAX_NODES,
            timeout: None,
            verify_leaves: cfg!(debug_assertions),
        }
    }
}

impl SearchConfig {
    pub fn with_mode(mode: Mode) -> Self {
        SearchConfig {
            mode,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    /// Nodes found to contain no automorphism: refinement conflicts plus
    /// leaves whose permutation failed verification.
    pub conflicts: u64,
    pub generators: u64,
    pub group_order: BigUint,
    pub discrete_leaves: u64,
    pub matching_leaves: u64,
    /// Leaves whose permutation failed verification (baseline mode only).
    pub bad_leaves: u64,
    pub orbit_prunes: u64,
    pub elapsed: Duration,
    /// False when a node or time budget stopped the search early; the group
    /// order is then only a lower bound.
    pub complete: bool,
}

/// One leftmost-path level: the target individualized there, its cell, and
/// the size of its orbit under the final generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRecord {
    pub target: u32,
    pub cell: u32,
    pub orbit_size: u32,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub generators: Vec<Permutation>,
    pub stats: SearchStats,
    pub levels: Vec<LevelRecord>,
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("matching OPP at level {level} produced a non-automorphism {alpha}")]
    TheoremViolation { level: u32, alpha: Permutation },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKind {
    Discrete,
    Matching,
}

/// Hooks into the search, for tracing and testing. Levels count mapping
/// decisions from the root.
pub trait SearchObserver {
    /// `target` is about to be mapped to `image` at a node of `level`.
    fn decision(&mut self, _level: u32, _target: u32, _image: u32) {}
    /// The top partition was refined after individualizing `target`.
    fn top_refined(&mut self, _level: u32, _target: u32, _trace: &Trace) {}
    fn conflict(&mut self, _level: u32, _conflict: Conflict) {}
    fn leaf(&mut self, _level: u32, _kind: LeafKind, _alpha: &Permutation, _accepted: bool) {}
}

impl SearchObserver for () {}

/// Picks the branching cell (by start offset) and target vertex of an
/// isomorphic OPP.
pub fn select_target(p: &Opp, heuristic: Heuristic) -> Result<(u32, u32)> {
    if !p.is_isomorphic() {
        return Err(Error::Precondition("OPP is not isomorphic".into()));
    }
    choose(&p.top, &p.bottom, heuristic)
        .ok_or_else(|| Error::Precondition("OPP is discrete".into()))
}

fn choose_cell(top: &OrderedPartition, heuristic: Heuristic) -> Option<u32> {
    let mut cells = top.nonsingleton_starts();
    match heuristic {
        Heuristic::First => cells.next(),
        Heuristic::Largest => cells.fold(None, |best: Option<u32>, c| match best {
            Some(b) if top.cell_len(b) >= top.cell_len(c) => Some(b),
            _ => Some(c),
        }),
        Heuristic::SmallestNonsingleton => cells.fold(None, |best: Option<u32>, c| match best {
            Some(b) if top.cell_len(b) <= top.cell_len(c) => Some(b),
            _ => Some(c),
        }),
    }
}

/// The smallest top vertex missing from the corresponding bottom cell, or
/// the smallest vertex of the cell when both cells hold the same vertices.
fn choose(top: &OrderedPartition, bot: &OrderedPartition, h: Heuristic) -> Option<(u32, u32)> {
    let cell = choose_cell(top, h)?;
    let members = top.cell(cell);
    let target = members
        .iter()
        .copied()
        .filter(|&v| bot.cell_of(v) != cell)
        .min()
        .or_else(|| members.iter().copied().min())?;
    Some((cell, target))
}

pub fn search(g: &ColoredGraph, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    search_observed(g, config, &mut ())
}

pub fn search_observed(
    g: &ColoredGraph,
    config: &SearchConfig,
    observer: &mut dyn SearchObserver,
) -> Result<SearchResult, SearchError> {
    let mut engine = Engine::new(g, config, observer, false);
    engine.run()?;
    Ok(engine.finish())
}

/// Baseline-mode result annotated with where enhanced refinement would have
/// pruned.
#[derive(Debug, Clone)]
pub(crate) struct Anticipation {
    /// conflict depth d = l_n - l -> number of baseline conflicts
    pub histogram: BTreeMap<u32, u64>,
    /// nodes at which enhanced refinement conflicts first on their path
    pub roots: u64,
}

/// Baseline search that also runs the enhanced checks as a shadow, to
/// attribute each baseline conflict to the shallowest ancestor where
/// enhanced refinement would have stopped.
pub(crate) fn search_baseline_tracked(
    g: &ColoredGraph,
    config: &SearchConfig,
) -> Result<(SearchResult, Anticipation), SearchError> {
    let config = SearchConfig {
        mode: Mode::Baseline,
        ..config.clone()
    };
    let mut obs = ();
    let mut engine = Engine::new(g, &config, &mut obs, true);
    engine.run()?;
    let anticipation = Anticipation {
        histogram: std::mem::take(&mut engine.histogram),
        roots: engine.roots,
    };
    Ok((engine.finish(), anticipation))
}

struct Level {
    cell: u32,
    target: u32,
    top_before: Mark,
    bot_before: Mark,
    top_after: Mark,
    trace: Trace,
}

struct Frame {
    level: u32,
    images: Vec<u32>,
    next: usize,
    top_before: Mark,
    top_after: Mark,
    bot_before: Mark,
    trace: Trace,
    anticipated: Option<u32>,
}

enum Node {
    Conflict,
    BadLeaf,
    Found(Permutation),
    Inner(Option<u32>),
}

enum Coset {
    Found(Permutation),
    Exhausted,
    Aborted,
}

#[derive(Clone, Copy)]
struct Base {
    top: Mark,
    bot: Mark,
}

struct Engine<'a> {
    g: &'a ColoredGraph,
    cfg: &'a SearchConfig,
    obs: &'a mut dyn SearchObserver,
    top: OrderedPartition,
    bot: OrderedPartition,
    ts: Scratch,
    bs: Scratch,
    orbits: OrbitPartition,
    generators: Vec<Permutation>,
    stats: SearchStats,
    levels: Vec<LevelRecord>,
    start: Instant,
    aborted: bool,
    track: bool,
    histogram: BTreeMap<u32, u64>,
    roots: u64,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a> Engine<'a> {
    fn new(
        g: &'a ColoredGraph,
        cfg: &'a SearchConfig,
        obs: &'a mut dyn SearchObserver,
        track: bool,
    ) -> Self {
        let n = g.n();
        let top = OrderedPartition::by_color(g);
        Engine {
            g,
            cfg,
            obs,
            bot: top.clone(),
            top,
            ts: Scratch::new(n),
            bs: Scratch::new(n),
            orbits: OrbitPartition::new(n),
            generators: Vec::new(),
            stats: SearchStats {
                nodes: 0,
                conflicts: 0,
                generators: 0,
                group_order: BigUint::from(1u32),
                discrete_leaves: 0,
                matching_leaves: 0,
                bad_leaves: 0,
                orbit_prunes: 0,
                elapsed: Duration::ZERO,
                complete: false,
            },
            levels: Vec::new(),
            start: Instant::now(),
            aborted: false,
            track,
            histogram: BTreeMap::new(),
            roots: 0,
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    fn finish(mut self) -> SearchResult {
        self.stats.elapsed = self.start.elapsed();
        self.stats.complete = !self.aborted;
        self.stats.generators = self.generators.len() as u64;
        self.levels.reverse();
        SearchResult {
            generators: self.generators,
            stats: self.stats,
            levels: self.levels,
        }
    }

    fn signatures(&self) -> bool {
        self.cfg.mode == Mode::Enhanced || self.track
    }

    /// Counts a new node; false once a budget is exhausted.
    fn charge(&mut self) -> bool {
        if self.aborted {
            return false;
        }
        if self.stats.nodes >= self.cfg.max_nodes {
            self.aborted = true;
            return false;
        }
        self.stats.nodes += 1;
        if let Some(limit) = self.cfg.timeout {
            if self.stats.nodes.is_multiple_of(256) && self.start.elapsed() > limit {
                self.aborted = true;
                return false;
            }
        }
        true
    }

    fn run(&mut self) -> Result<(), SearchError> {
        if !self.charge() {
            return Ok(());
        }
        let seeds: Vec<u32> = self.top.cell_starts().collect();
        let mut trace = Trace::new();
        refine_top(
            &mut self.top,
            self.g,
            &mut self.ts,
            &seeds,
            &mut trace,
            false,
        );
        self.top.clear_history();
        self.bot = self.top.clone();
        self.obs.top_refined(0, u32::MAX, &trace);

        let sigs = self.signatures();
        let mut path: Vec<Level> = Vec::new();
        while let Some((cell, target)) = choose(&self.top, &self.bot, self.cfg.heuristic) {
            if !self.charge() {
                break;
            }
            let level = path.len() as u32;
            let top_before = self.top.mark();
            let bot_before = self.bot.mark();
            self.obs.decision(level, target, target);
            self.top
                .individualize(target)
                .expect("target in non-singleton cell");
            let mut trace = Trace::new();
            refine_top(
                &mut self.top,
                self.g,
                &mut self.ts,
                &[cell],
                &mut trace,
                sigs,
            );
            let top_after = self.top.mark();
            self.obs.top_refined(level + 1, target, &trace);
            // the leftmost bottom mirrors the top exactly
            self.bot.individualize(target).expect("bottom mirrors top");
            let mut mirror = Trace::new();
            refine_top(
                &mut self.bot,
                self.g,
                &mut self.bs,
                &[cell],
                &mut mirror,
                false,
            );
            debug_assert_eq!(self.top, self.bot);
            path.push(Level {
                cell,
                target,
                top_before,
                bot_before,
                top_after,
                trace,
            });
        }
        if self.aborted {
            return Ok(());
        }

        for (li, level) in path.iter().enumerate().rev() {
            self.top.undo_to(level.top_after);
            self.bot.undo_to(level.bot_before);
            let candidates = self.bot.cell(level.cell).to_vec();
            let mut tried = vec![level.target];
            for v in candidates {
                if v == level.target {
                    continue;
                }
                if tried.iter().any(|&w| self.orbits.same(v, w)) {
                    self.stats.orbit_prunes += 1;
                    continue;
                }
                tried.push(v);
                match self.explore_coset(level, li as u32, v)? {
                    Coset::Found(p) => self.accept(p),
                    Coset::Exhausted => {}
                    Coset::Aborted => return Ok(()),
                }
            }
            let orbit_size = self.orbits.orbit_size(level.target);
            self.stats.group_order *= orbit_size;
            self.levels.push(LevelRecord {
                target: level.target,
                cell: level.cell,
                orbit_size,
            });
        }
        Ok(())
    }

    fn accept(&mut self, p: Permutation) {
        self.orbits.merge_permutation(&p);
        self.generators.push(p);
    }

    /// Searches the subtree where the level's target maps to `image`, stopping
    /// at the first automorphism.
    fn explore_coset(&mut self, level: &Level, li: u32, image: u32) -> Result<Coset, SearchError> {
        let base = Base {
            top: level.top_before,
            bot: level.bot_before,
        };
        let result = self.explore_from(level, li, image, base);
        self.top.undo_to(level.top_after);
        self.bot.undo_to(level.bot_before);
        result
    }

    fn explore_from(
        &mut self,
        level: &Level,
        li: u32,
        image: u32,
        base: Base,
    ) -> Result<Coset, SearchError> {
        if !self.charge() {
            return Ok(Coset::Aborted);
        }
        self.obs.decision(li, level.target, image);
        self.bot.individualize(image).expect("image in bottom cell");
        let mut stack: Vec<Frame> = Vec::new();
        match self.evaluate(li + 1, &level.trace, None, base)? {
            Node::Found(p) => return Ok(Coset::Found(p)),
            Node::Conflict | Node::BadLeaf => return Ok(Coset::Exhausted),
            Node::Inner(a) => self.push_frame(&mut stack, li + 1, a),
        }
        loop {
            let Some(frame) = stack.last_mut() else {
                return Ok(Coset::Exhausted);
            };
            if frame.next == frame.images.len() {
                let f = stack.pop().unwrap();
                self.top.undo_to(f.top_before);
                self.bot.undo_to(f.bot_before);
                continue;
            }
            let v = frame.images[frame.next];
            frame.next += 1;
            let frame = stack.last().unwrap();
            self.top.undo_to(frame.top_after);
            self.bot.undo_to(frame.bot_before);
            if !self.charge() {
                return Ok(Coset::Aborted);
            }
            let target = self.top.elements()[self.bot.cell_of(v) as usize];
            self.obs.decision(frame.level, target, v);
            self.bot.individualize(v).expect("image in bottom cell");
            let child = frame.level + 1;
            match self.evaluate(child, &frame.trace, frame.anticipated, base)? {
                Node::Found(p) => return Ok(Coset::Found(p)),
                Node::Conflict | Node::BadLeaf => {}
                Node::Inner(a) => self.push_frame(&mut stack, child, a),
            }
        }
    }

    /// Chooses a target at the current node, refines the top once for it and
    /// pushes a frame listing the candidate images.
    fn push_frame(&mut self, stack: &mut Vec<Frame>, level: u32, anticipated: Option<u32>) {
        let top_before = self.top.mark();
        let bot_before = self.bot.mark();
        let (cell, target) =
            choose(&self.top, &self.bot, self.cfg.heuristic).expect("inner node is not discrete");
        let bottom_cell = self.bot.cell(cell);
        // images outside the top cell first
        let mut images: Vec<u32> = bottom_cell
            .iter()
            .copied()
            .filter(|&v| self.top.cell_of(v) != cell)
            .collect();
        images.extend(
            bottom_cell
                .iter()
                .copied()
                .filter(|&v| self.top.cell_of(v) == cell),
        );

        self.top
            .individualize(target)
            .expect("target in non-singleton cell");
        let mut trace = Trace::new();
        let sigs = self.signatures();
        refine_top(
            &mut self.top,
            self.g,
            &mut self.ts,
            &[cell],
            &mut trace,
            sigs,
        );
        self.obs.top_refined(level + 1, target, &trace);
        stack.push(Frame {
            level,
            images,
            next: 0,
            top_before,
            top_after: self.top.mark(),
            bot_before,
            trace,
            anticipated,
        });
    }

    /// Refines the freshly individualized bottom against `trace` and decides
    /// what the new node is.
    fn evaluate(
        &mut self,
        level: u32,
        trace: &Trace,
        parent_anticipated: Option<u32>,
        base: Base,
    ) -> Result<Node, SearchError> {
        let enhanced = self.cfg.mode == Mode::Enhanced;
        let checks = Checks {
            baseline: !enhanced,
            enhanced: enhanced || self.track,
            stop_on_enhanced: enhanced,
        };
        let out = replay_bottom(&mut self.bot, self.g, &mut self.bs, trace, checks);
        let mut anticipated = parent_anticipated;
        if self.track && anticipated.is_none() && out.enhanced.is_some() {
            anticipated = Some(level);
            self.roots += 1;
        }
        let conflict = if enhanced { out.enhanced } else { out.baseline };
        if let Some(c) = conflict {
            self.record_conflict(level, anticipated);
            self.obs.conflict(level, c);
            return Ok(Node::Conflict);
        }

        let kind = if self.top.is_discrete() {
            LeafKind::Discrete
        } else if self.is_matching(base) {
            LeafKind::Matching
        } else {
            return Ok(Node::Inner(anticipated));
        };
        match kind {
            LeafKind::Discrete => self.stats.discrete_leaves += 1,
            LeafKind::Matching => self.stats.matching_leaves += 1,
        }
        let pairs = self.extract(base);
        let alpha = Permutation::from_moved_unchecked(self.g.n(), pairs);
        let accepted = if enhanced && !self.cfg.verify_leaves {
            true
        } else {
            let ok = self.g.preserves(alpha.moved_pairs(), |v| alpha.image(v));
            if enhanced && !ok {
                return Err(SearchError::TheoremViolation { level, alpha });
            }
            ok
        };
        self.obs.leaf(level, kind, &alpha, accepted);
        if accepted {
            Ok(Node::Found(alpha))
        } else {
            // a leaf without an automorphism is a conflict found late
            self.stats.bad_leaves += 1;
            self.record_conflict(level, anticipated);
            Ok(Node::BadLeaf)
        }
    }

    fn record_conflict(&mut self, level: u32, anticipated: Option<u32>) {
        self.stats.conflicts += 1;
        if self.track {
            // enhanced refinement prunes every conflicting path, so some
            // ancestor (or the node itself) is always flagged
            debug_assert!(anticipated.is_some());
            let l = anticipated.unwrap_or(level);
            *self.histogram.entry(level - l).or_default() += 1;
        }
    }

    /// Every non-singleton top cell holds the same vertices as its bottom
    /// cell. Only vertices touched since the coset root can differ.
    fn is_matching(&self, base: Base) -> bool {
        let (top, bot) = (&self.top, &self.bot);
        top.changed_since(base.top)
            .iter()
            .chain(bot.changed_since(base.bot))
            .all(|&v| {
                let c = top.cell_of(v);
                top.cell_len(c) == 1 || bot.cell_of(v) == c
            })
    }

    /// Moved points of the permutation sending each top singleton to the
    /// bottom singleton at the same position and fixing everything else.
    fn extract(&mut self, base: Base) -> Vec<(u32, u32)> {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let (top, bot) = (&self.top, &self.bot);
        let mut pairs = Vec::new();
        for &x in top
            .changed_since(base.top)
            .iter()
            .chain(bot.changed_since(base.bot))
        {
            for p in [top.position(x), bot.position(x)] {
                let a = top.elements()[p as usize];
                let b = bot.elements()[p as usize];
                if a != b
                    && top.cell_len(top.cell_of(a)) == 1
                    && self.stamp[a as usize] != self.epoch
                {
                    self.stamp[a as usize] = self.epoch;
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_aut, generated_group_order, orbits_of};

    fn graph(n: usize, edges: &[(u32, u32)]) -> ColoredGraph {
        ColoredGraph::new(vec![0; n], edges).unwrap()
    }

    fn complete(n: u32) -> ColoredGraph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        graph(n as usize, &e)
    }

    fn check_against_oracle(g: &ColoredGraph) {
        let bf = brute_force_aut(g).unwrap();
        for mode in [Mode::Baseline, Mode::Enhanced] {
            let r = search(g, &SearchConfig::with_mode(mode)).unwrap();
            assert!(r.stats.complete);
            for p in &r.generators {
                assert!(g.is_automorphism(p).unwrap(), "{p} is not an automorphism");
            }
            assert_eq!(r.stats.group_order, bf.summary.order, "{mode}");
            assert_eq!(
                generated_group_order(g.n(), &r.generators).unwrap(),
                bf.summary.order
            );
            assert_eq!(orbits_of(g.n(), &r.generators), bf.summary.orbits);
        }
    }

    #[test]
    fn triangle_is_symmetric() {
        let r = search(&complete(3), &SearchConfig::default()).unwrap();
        assert_eq!(r.stats.group_order, BigUint::from(6u32));
        assert_eq!(
            generated_group_order(3, &r.generators).unwrap(),
            BigUint::from(6u32)
        );
    }

    #[test]
    fn path_has_one_reflection() {
        let r = search(&graph(3, &[(0, 1), (1, 2)]), &SearchConfig::default()).unwrap();
        assert_eq!(r.generators.len(), 1);
        assert_eq!(r.generators[0].to_string(), "(0 2)");
        assert_eq!(r.stats.group_order, BigUint::from(2u32));
    }

    #[test]
    fn small_graphs_match_oracle() {
        check_against_oracle(&complete(5));
        check_against_oracle(&graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]));
        check_against_oracle(&graph(4, &[(0, 1), (2, 3)]));
        check_against_oracle(&graph(5, &[]));
        check_against_oracle(&ColoredGraph::new(vec![0, 1, 0, 1], &[(0, 1), (2, 3)]).unwrap());
        check_against_oracle(&graph(0, &[]));
        check_against_oracle(&graph(1, &[]));
    }

    #[test]
    fn target_selection() {
        let p = Opp::from_cells(3, &[vec![0], vec![1, 2]], &[vec![0], vec![1, 2]]).unwrap();
        for h in [
            Heuristic::First,
            Heuristic::Largest,
            Heuristic::SmallestNonsingleton,
        ] {
            assert_eq!(select_target(&p, h).unwrap(), (1, 1));
        }
        let unit = Opp::identical(OrderedPartition::unit(5));
        assert_eq!(select_target(&unit, Heuristic::First).unwrap(), (0, 0));
        let d = Opp::identical(OrderedPartition::from_cells(2, &[vec![1], vec![0]]).unwrap());
        assert!(select_target(&d, Heuristic::First).is_err());

        let q = Opp::identical(
            OrderedPartition::from_cells(7, &[vec![0, 1], vec![2], vec![3, 4, 5, 6]]).unwrap(),
        );
        assert_eq!(select_target(&q, Heuristic::Largest).unwrap(), (3, 3));
        assert_eq!(
            select_target(&q, Heuristic::SmallestNonsingleton).unwrap(),
            (0, 0)
        );
    }

    #[test]
    fn budget_marks_incomplete() {
        let cfg = SearchConfig {
            max_nodes: 3,
            ..SearchConfig::default()
        };
        let r = search(&complete(6), &cfg).unwrap();
        assert!(!r.stats.complete);
        assert!(r.stats.nodes <= 3);
    }

    #[test]
    fn orbit_pruning_on_triangle() {
        #[derive(Default)]
        struct Decisions(Vec<(u32, u32, u32)>);
        impl SearchObserver for Decisions {
            fn decision(&mut self, level: u32, t: u32, v: u32) {
                self.0.push((level, t, v));
            }
        }
        let mut d = Decisions::default();
        let r = search_observed(&complete(3), &SearchConfig::default(), &mut d).unwrap();
        // root level: 0 -> 0 on the leftmost path, then 0 -> 1 finds a
        // generator that puts 2 in the orbit of 0
        let root: Vec<_> = d.0.iter().filter(|x| x.0 == 0).collect();
        assert_eq!(root, vec![&(0, 0, 0), &(0, 0, 1)]);
        assert!(r.stats.orbit_prunes >= 1);
    }
}
