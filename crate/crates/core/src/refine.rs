//! Equitable refinement of single partitions and of partition pairs.
//!
//! The top partition is refined with a FIFO worklist of refining cells and
//! the run is recorded as a [`Trace`]. The bottom partition is then refined
//! by replaying the top's refining cells, offset by offset, and compared
//! against the trace:
//!
//! * baseline mode compares the i-th bottom split with the i-th top split,
//!   and only when the bottom actually splits;
//! * enhanced mode requires every replay step to produce exactly the split
//!   events of the corresponding top step, and every new bottom cell to have
//!   the same edge counts into the current cells as its top counterpart.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::ColoredGraph;
use crate::partition::{Opp, OrderedPartition};

/// One fragment produced by a split: where it starts, its size, and the
/// number of neighbors each of its vertices has in the refining cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    pub start: u32,
    pub len: u32,
    pub key: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEvent {
    pub parent: u32,
    pub fragments: Vec<Fragment>,
}

/// Edge counts from one cell into every current cell, `(cell start, count)`
/// for nonzero counts, ascending by cell.
pub type Signature = Vec<(u32, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub refiner: u32,
    pub refiner_len: u32,
    pub splits: Vec<SplitEvent>,
    signatures: Vec<Signature>,
}

/// Record of one top-partition refinement. Cells are named by start offset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub seeds: Vec<u32>,
    seed_signatures: Vec<Signature>,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn clear(&mut self) {
        self.seeds.clear();
        self.seed_signatures.clear();
        self.steps.clear();
    }

    pub fn split_count(&self) -> usize {
        self.steps.iter().map(|s| s.splits.len()).sum()
    }

    /// Human-readable dump, one line per split event (or per step that
    /// split nothing).
    pub fn render(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for (k, step) in self.steps.iter().enumerate() {
            if step.splits.is_empty() {
                lines.push(format!("step {k}: refine-cell={}", step.refiner));
            }
            for ev in &step.splits {
                let sizes: Vec<String> = ev.fragments.iter().map(|f| f.len.to_string()).collect();
                lines.push(format!(
                    "step {k}: refine-cell={} split parent={} sizes=[{}]",
                    step.refiner,
                    ev.parent,
                    sizes.join(",")
                ));
            }
        }
        lines
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConflictReason {
    SplitMismatch,
    Conformance,
    Size,
}

impl fmt::Display for ConflictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConflictReason::SplitMismatch => "split-mismatch",
            ConflictReason::Conformance => "conformance",
            ConflictReason::Size => "size",
        })
    }
}

/// A refinement conflict: the OPP encodes no automorphism. `step` is the
/// index of the replay step that exposed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conflict {
    pub step: usize,
    pub reason: ConflictReason,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conflict: step {} reason={}", self.step, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum RefineOutcome {
    Refined(Opp),
    Conflict(Conflict),
}

impl RefineOutcome {
    pub fn is_conflict(&self) -> bool {
        matches!(self, RefineOutcome::Conflict(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefineMode {
    Baseline,
    Enhanced,
}

/// Per-partition working memory, sized for `n` vertices.
#[derive(Debug, Clone)]
pub(crate) struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    hits: Vec<u32>,
    touched_cells: Vec<u32>,
    queue: VecDeque<u32>,
    queued: Vec<bool>,
    acc: Vec<u32>,
    acc_cells: Vec<u32>,
    events: Vec<SplitEvent>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Scratch {
            count: vec![0; n],
            touched: Vec::new(),
            hits: vec![0; n],
            touched_cells: Vec::new(),
            queue: VecDeque::new(),
            queued: vec![false; n],
            acc: vec![0; n],
            acc_cells: Vec::new(),
            events: Vec::new(),
        }
    }

    fn enqueue(&mut self, start: u32) {
        if !std::mem::replace(&mut self.queued[start as usize], true) {
            self.queue.push_back(start);
        }
    }
}

/// Splits every cell by neighbor count into cell `r`. Fragments are ordered
/// by ascending count (untouched vertices first), ties keep element order.
/// With `use_queue`, new fragments are scheduled as refining cells.
fn apply_refiner(
    p: &mut OrderedPartition,
    g: &ColoredGraph,
    s: &mut Scratch,
    r: u32,
    use_queue: bool,
    out: &mut Vec<SplitEvent>,
) {
    let r_end = p.cell_end(r);
    let singleton = r_end - r == 1;
    for pos in r..r_end {
        let u = p.elements()[pos as usize];
        for &w in g.neighbors(u) {
            let c = &mut s.count[w as usize];
            if *c == 0 {
                s.touched.push(w);
                let cell = p.cell_of(w);
                if s.hits[cell as usize] == 0 {
                    s.touched_cells.push(cell);
                }
                s.hits[cell as usize] += 1;
            }
            *c += 1;
        }
    }
    // grouped by cell; within a cell, last position first so that moving
    // them to the back keeps their relative order
    s.touched
        .sort_unstable_by_key(|&w| (p.cell_of(w), std::cmp::Reverse(p.position(w))));
    s.touched_cells.sort_unstable();

    let mut idx = 0usize;
    for ci in 0..s.touched_cells.len() {
        let c = s.touched_cells[ci];
        let t = s.hits[c as usize] as usize;
        let group = idx..idx + t;
        idx += t;
        let end = p.cell_end(c);
        let uniform = singleton || {
            let k0 = s.count[s.touched[group.start] as usize];
            s.touched[group.clone()]
                .iter()
                .all(|&w| s.count[w as usize] == k0)
        };
        if t as u32 == end - c && uniform {
            continue;
        }

        // touched vertices to the back of the cell
        let mut b = end;
        for &w in &s.touched[group] {
            b -= 1;
            let pw = p.position(w);
            if pw != b {
                p.swap_positions(pw, b);
            }
        }
        if !uniform {
            let count = &s.count;
            p.sort_range_by_key(b, end, |v| count[v as usize]);
        }

        let mut fragments = Vec::new();
        if b > c {
            fragments.push(Fragment {
                start: c,
                len: b - c,
                key: 0,
            });
        }
        let mut f = b;
        while f < end {
            let key = s.count[p.elements()[f as usize] as usize];
            let mut q = f + 1;
            while q < end && s.count[p.elements()[q as usize] as usize] == key {
                q += 1;
            }
            fragments.push(Fragment {
                start: f,
                len: q - f,
                key,
            });
            f = q;
        }
        let cuts: Vec<u32> = fragments[1..].iter().map(|f| f.start).collect();
        p.split_at(c, &cuts);

        if use_queue {
            let skip = usize::from(s.queued[c as usize]);
            for fr in &fragments[skip..] {
                s.enqueue(fr.start);
            }
        }
        out.push(SplitEvent {
            parent: c,
            fragments,
        });
    }

    for &w in &s.touched {
        s.count[w as usize] = 0;
    }
    for &c in &s.touched_cells {
        s.hits[c as usize] = 0;
    }
    s.touched.clear();
    s.touched_cells.clear();
}

fn signature(p: &OrderedPartition, g: &ColoredGraph, s: &mut Scratch, cell: u32) -> Signature {
    for &u in p.cell(cell) {
        for &w in g.neighbors(u) {
            let c = p.cell_of(w);
            if s.acc[c as usize] == 0 {
                s.acc_cells.push(c);
            }
            s.acc[c as usize] += 1;
        }
    }
    s.acc_cells.sort_unstable();
    let out = s
        .acc_cells
        .iter()
        .map(|&c| (c, std::mem::take(&mut s.acc[c as usize])))
        .collect();
    s.acc_cells.clear();
    out
}

/// New cells whose conformance is checked: every fragment except the first
/// largest of each split.
fn checked_fragments(events: &[SplitEvent]) -> impl Iterator<Item = u32> + '_ {
    events.iter().flat_map(|ev| {
        let largest = ev
            .fragments
            .iter()
            .enumerate()
            .max_by_key(|&(i, f)| (f.len, std::cmp::Reverse(i)))
            .map(|(i, _)| i);
        ev.fragments
            .iter()
            .enumerate()
            .filter(move |&(i, _)| Some(i) != largest)
            .map(|(_, f)| f.start)
    })
}

/// Refines `p` to equitability starting from the given refining cells,
/// recording the run in `trace`. With `signatures`, the trace also stores
/// what enhanced replay needs to check conformance.
pub(crate) fn refine_top(
    p: &mut OrderedPartition,
    g: &ColoredGraph,
    s: &mut Scratch,
    seeds: &[u32],
    trace: &mut Trace,
    signatures: bool,
) {
    trace.clear();
    trace.seeds.extend_from_slice(seeds);
    if signatures {
        for &c in seeds {
            let sig = signature(p, g, s, c);
            trace.seed_signatures.push(sig);
        }
    }
    for &c in seeds {
        s.enqueue(c);
    }
    while let Some(r) = s.queue.pop_front() {
        s.queued[r as usize] = false;
        let refiner_len = p.cell_len(r);
        let mut splits = Vec::new();
        apply_refiner(p, g, s, r, true, &mut splits);
        let sigs = if signatures {
            checked_fragments(&splits)
                .collect::<Vec<_>>()
                .into_iter()
                .map(|f| signature(p, g, s, f))
                .collect()
        } else {
            Vec::new()
        };
        trace.steps.push(TraceStep {
            refiner: r,
            refiner_len,
            splits,
            signatures: sigs,
        });
    }
}

/// Which checks a bottom replay performs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Checks {
    pub baseline: bool,
    pub enhanced: bool,
    /// return as soon as an enhanced check fails
    pub stop_on_enhanced: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct ReplayOutcome {
    pub baseline: Option<Conflict>,
    pub enhanced: Option<Conflict>,
}

/// Refines the bottom partition by replaying `trace`. The bottom must have
/// the shape the top had before the traced refinement. On conflict the
/// bottom is left partially refined; callers roll it back.
pub(crate) fn replay_bottom(
    bot: &mut OrderedPartition,
    g: &ColoredGraph,
    s: &mut Scratch,
    trace: &Trace,
    checks: Checks,
) -> ReplayOutcome {
    let mut out = ReplayOutcome::default();
    if checks.enhanced && trace.seed_signatures.len() == trace.seeds.len() {
        for (&c, top_sig) in trace.seeds.iter().zip(&trace.seed_signatures) {
            if signature(bot, g, s, c) != *top_sig {
                out.enhanced = Some(Conflict {
                    step: 0,
                    reason: ConflictReason::Conformance,
                });
                break;
            }
        }
        if out.enhanced.is_some() && checks.stop_on_enhanced {
            return out;
        }
    }

    // baseline cursor over the top's split events, in order
    let mut top_splits = trace.steps.iter().flat_map(|st| st.splits.iter());
    let mut events = std::mem::take(&mut s.events);
    for (k, ts) in trace.steps.iter().enumerate() {
        let r = ts.refiner;
        if !bot.is_cell_start(r) || bot.cell_len(r) != ts.refiner_len {
            let c = Some(Conflict {
                step: k,
                reason: ConflictReason::SplitMismatch,
            });
            out.enhanced = out.enhanced.or(c);
            if checks.baseline {
                out.baseline = c;
            }
            break;
        }
        events.clear();
        apply_refiner(bot, g, s, r, false, &mut events);

        if checks.enhanced && out.enhanced.is_none() {
            if events != ts.splits {
                out.enhanced = Some(Conflict {
                    step: k,
                    reason: ConflictReason::SplitMismatch,
                });
            } else {
                let fresh: Vec<u32> = checked_fragments(&events).collect();
                for (f, top_sig) in fresh.into_iter().zip(&ts.signatures) {
                    if signature(bot, g, s, f) != *top_sig {
                        out.enhanced = Some(Conflict {
                            step: k,
                            reason: ConflictReason::Conformance,
                        });
                        break;
                    }
                }
            }
            if out.enhanced.is_some() && checks.stop_on_enhanced {
                break;
            }
        }

        if checks.baseline {
            let mismatch = events.iter().any(|ev| match top_splits.next() {
                Some(top) => {
                    top.parent != ev.parent
                        || top.fragments.len() != ev.fragments.len()
                        || top
                            .fragments
                            .iter()
                            .zip(&ev.fragments)
                            .any(|(a, b)| a.start != b.start || a.len != b.len)
                }
                None => true,
            });
            if mismatch {
                out.baseline = Some(Conflict {
                    step: k,
                    reason: ConflictReason::SplitMismatch,
                });
                break;
            }
        }
    }
    if checks.baseline && out.baseline.is_none() && top_splits.next().is_some() {
        out.baseline = Some(Conflict {
            step: trace.steps.len(),
            reason: ConflictReason::Size,
        });
    }
    debug_assert!(
        !checks.enhanced || out.baseline.is_none() || out.enhanced.is_some(),
        "baseline conflict not seen by enhanced checks"
    );
    events.clear();
    s.events = events;
    out
}

/// Coarsest equitable refinement of `pi`, starting from all of its cells.
pub fn refine_one(pi: &OrderedPartition, g: &ColoredGraph, trace: &mut Trace) -> OrderedPartition {
    let mut p = pi.clone();
    let mut s = Scratch::new(p.n());
    let seeds: Vec<u32> = p.cell_starts().collect();
    refine_top(&mut p, g, &mut s, &seeds, trace, false);
    p.clear_history();
    p
}

/// Conventional pair refinement: conflicts are noticed only when a bottom
/// split disagrees with the top's.
pub fn refine_baseline(p: &Opp, g: &ColoredGraph) -> RefineOutcome {
    refine_pair(p, g, RefineMode::Baseline, None).0
}

/// Pair refinement with per-step split comparison and conformance checks.
pub fn refine_enhanced(p: &Opp, g: &ColoredGraph) -> RefineOutcome {
    refine_pair(p, g, RefineMode::Enhanced, None).0
}

/// Refines an OPP in the given mode and returns the top's trace. `seeds`
/// are the initial refining cells (start offsets); `None` means every cell.
/// Seeding only the cells changed since the last equitable state gives the
/// same result as seeding all of them.
pub fn refine_pair(
    p: &Opp,
    g: &ColoredGraph,
    mode: RefineMode,
    seeds: Option<&[u32]>,
) -> (RefineOutcome, Trace) {
    let mut trace = Trace::new();
    if !p.is_isomorphic() || p.n() != g.n() {
        let c = Conflict {
            step: 0,
            reason: ConflictReason::Size,
        };
        return (RefineOutcome::Conflict(c), trace);
    }
    let mut top = p.top.clone();
    let mut bot = p.bottom.clone();
    let mut s = Scratch::new(p.n());
    let seeds: Vec<u32> = match seeds {
        Some(s) => s
            .iter()
            .copied()
            .filter(|&c| top.is_cell_start(c))
            .collect(),
        None => top.cell_starts().collect(),
    };
    let enhanced = mode == RefineMode::Enhanced;
    refine_top(&mut top, g, &mut s, &seeds, &mut trace, enhanced);
    let checks = Checks {
        baseline: !enhanced,
        enhanced,
        stop_on_enhanced: true,
    };
    let out = replay_bottom(&mut bot, g, &mut s, &trace, checks);
    let conflict = if enhanced { out.enhanced } else { out.baseline };
    if let Some(c) = conflict {
        return (RefineOutcome::Conflict(c), trace);
    }
    top.clear_history();
    bot.clear_history();
    (RefineOutcome::Refined(Opp { top, bottom: bot }), trace)
}
