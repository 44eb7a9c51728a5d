//! Ordered partitions and ordered partition pairs (OPPs).
//!
//! A cell is identified by the offset of its first element in the
//! `element` array. Splitting a cell keeps the first fragment at the parent's
//! offset, so offsets stay valid while a partition is refined, and two
//! partitions with the same cell sizes in the same order use the same offsets.
//!
//! Every mutation is logged so that [`OrderedPartition::undo_to`] restores the
//! exact earlier state, element order included. The search relies on this to
//! backtrack without copying partitions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy)]
enum Undo {
    Swap(u32, u32),
    /// element[start..start+len] was overwritten; old contents in `saved[at..]`
    Restore {
        start: u32,
        len: u32,
        at: u32,
    },
    /// cell [start, end) was split; later fragment offsets in `saved[at..at+count]`
    Split {
        start: u32,
        end: u32,
        at: u32,
        count: u32,
    },
}

/// A position in a partition's history, see [`OrderedPartition::mark`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark {
    undo: usize,
    saved: usize,
    changed: usize,
}

#[derive(Debug, Clone)]
pub struct OrderedPartition {
    element: Vec<u32>,
    position: Vec<u32>,
    cell_of: Vec<u32>,
    // indexed by cell start; meaningful only at starts
    cell_end: Vec<u32>,
    cells: usize,
    nonsingleton: BTreeSet<u32>,
    undo: Vec<Undo>,
    saved: Vec<u32>,
    // vertices whose position or cell changed, in order
    changed: Vec<u32>,
}

impl PartialEq for OrderedPartition {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element && self.cell_of == other.cell_of
    }
}

impl Eq for OrderedPartition {}

impl OrderedPartition {
    pub fn unit(n: usize) -> Self {
        let mut p = OrderedPartition {
            element: (0..n as u32).collect(),
            position: (0..n as u32).collect(),
            cell_of: vec![0; n],
            cell_end: vec![0; n],
            cells: usize::from(n > 0),
            nonsingleton: BTreeSet::new(),
            undo: Vec::new(),
            saved: Vec::new(),
            changed: Vec::new(),
        };
        if n > 0 {
            p.cell_end[0] = n as u32;
        }
        if n > 1 {
            p.nonsingleton.insert(0);
        }
        p
    }

    /// Builds a partition from explicit cells, in order.
    pub fn from_cells(n: usize, cells: &[Vec<u32>]) -> Result<Self> {
        let mut p = OrderedPartition::unit(n);
        let mut seen = vec![false; n];
        let mut pos = 0usize;
        let mut starts = Vec::new();
        for cell in cells {
            if cell.is_empty() {
                return Err(Error::InvalidPartition("empty cell".into()));
            }
            starts.push(pos as u32);
            for &v in cell {
                if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} out of range or repeated"
                    )));
                }
                p.element[pos] = v;
                p.position[v as usize] = pos as u32;
                pos += 1;
            }
        }
        if pos != n {
            return Err(Error::InvalidPartition(format!(
                "cells cover {pos} of {n} vertices"
            )));
        }
        p.nonsingleton.clear();
        for (i, &s) in starts.iter().enumerate() {
            let e = starts.get(i + 1).copied().unwrap_or(n as u32);
            p.cell_end[s as usize] = e;
            for q in s..e {
                p.cell_of[p.element[q as usize] as usize] = s;
            }
            if e - s > 1 {
                p.nonsingleton.insert(s);
            }
        }
        p.cells = starts.len();
        Ok(p)
    }

    /// One cell per color, ascending color id, vertices ascending within.
    pub fn by_color(g: &ColoredGraph) -> Self {
        let mut cells = vec![Vec::new(); g.k()];
        for v in 0..g.n() as u32 {
            cells[g.color(v) as usize].push(v);
        }
        OrderedPartition::from_cells(g.n(), &cells).expect("colors are dense")
    }

    pub fn n(&self) -> usize {
        self.element.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    pub fn is_unit(&self) -> bool {
        self.cells == 1
    }

    /// Vertices in position order.
    pub fn elements(&self) -> &[u32] {
        &self.element
    }

    pub fn position(&self, v: u32) -> u32 {
        self.position[v as usize]
    }

    /// Start offset of the cell holding `v`.
    pub fn cell_of(&self, v: u32) -> u32 {
        self.cell_of[v as usize]
    }

    pub fn cell_end(&self, start: u32) -> u32 {
        self.cell_end[start as usize]
    }

    pub fn cell_len(&self, start: u32) -> u32 {
        self.cell_end[start as usize] - start
    }

    pub fn is_cell_start(&self, pos: u32) -> bool {
        (pos as usize) < self.n() && self.cell_of[self.element[pos as usize] as usize] == pos
    }

    pub fn cell(&self, start: u32) -> &[u32] {
        &self.element[start as usize..self.cell_end[start as usize] as usize]
    }

    /// Cell start offsets, left to right.
    pub fn cell_starts(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.n() as u32;
        let mut s = 0u32;
        std::iter::from_fn(move || {
            (s < n).then(|| {
                let start = s;
                s = self.cell_end[s as usize];
                start
            })
        })
    }

    pub fn cells(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.cell_starts().map(|s| self.cell(s))
    }

    /// Starts of cells with at least two elements, left to right.
    pub fn nonsingleton_starts(&self) -> impl Iterator<Item = u32> + '_ {
        self.nonsingleton.iter().copied()
    }

    /// Cells as owned vectors, for display and tests.
    pub fn to_cells(&self) -> Vec<Vec<u32>> {
        self.cells().map(|c| c.to_vec()).collect()
    }

    /// Same number of cells with the same sizes in the same order.
    pub fn same_shape(&self, other: &OrderedPartition) -> bool {
        self.n() == other.n()
            && self.cells == other.cells
            && self
                .cell_starts()
                .all(|s| other.is_cell_start(s) && other.cell_len(s) == self.cell_len(s))
    }

    pub fn mark(&self) -> Mark {
        Mark {
            undo: self.undo.len(),
            saved: self.saved.len(),
            changed: self.changed.len(),
        }
    }

    /// Vertices moved or relabeled since `mark` (may repeat).
    pub(crate) fn changed_since(&self, mark: Mark) -> &[u32] {
        &self.changed[mark.changed..]
    }

    /// Drops undo history; the current state becomes the base state.
    pub fn clear_history(&mut self) {
        self.undo.clear();
        self.saved.clear();
        self.changed.clear();
    }

    pub fn undo_to(&mut self, mark: Mark) {
        while self.undo.len() > mark.undo {
            match self.undo.pop().unwrap() {
                Undo::Swap(a, b) => self.raw_swap(a, b),
                Undo::Restore { start, len, at } => {
                    let (s, at) = (start as usize, at as usize);
                    for i in 0..len as usize {
                        let v = self.saved[at + i];
                        self.element[s + i] = v;
                        self.position[v as usize] = (s + i) as u32;
                    }
                }
                Undo::Split {
                    start,
                    end,
                    at,
                    count,
                } => {
                    let frags = at as usize..(at + count) as usize;
                    if self.cell_len(start) > 1 {
                        self.nonsingleton.remove(&start);
                    }
                    for i in frags {
                        let f = self.saved[i];
                        if self.cell_len(f) > 1 {
                            self.nonsingleton.remove(&f);
                        }
                        for q in f..self.cell_end[f as usize] {
                            self.cell_of[self.element[q as usize] as usize] = start;
                        }
                    }
                    self.cell_end[start as usize] = end;
                    if end - start > 1 {
                        self.nonsingleton.insert(start);
                    }
                    self.cells -= count as usize;
                }
            }
        }
        self.saved.truncate(mark.saved);
        self.changed.truncate(mark.changed);
    }

    fn raw_swap(&mut self, a: u32, b: u32) {
        let (va, vb) = (self.element[a as usize], self.element[b as usize]);
        self.element[a as usize] = vb;
        self.element[b as usize] = va;
        self.position[vb as usize] = a;
        self.position[va as usize] = b;
    }

    /// Swaps the elements at two positions of the same cell.
    pub(crate) fn swap_positions(&mut self, a: u32, b: u32) {
        if a == b {
            return;
        }
        self.raw_swap(a, b);
        self.undo.push(Undo::Swap(a, b));
        self.changed.push(self.element[a as usize]);
        self.changed.push(self.element[b as usize]);
    }

    /// Stable-sorts `element[start..end]` by `key`; the range must lie inside
    /// one cell.
    pub(crate) fn sort_range_by_key(&mut self, start: u32, end: u32, key: impl Fn(u32) -> u32) {
        let (s, e) = (start as usize, end as usize);
        if self.element[s..e]
            .windows(2)
            .all(|w| key(w[0]) <= key(w[1]))
        {
            return;
        }
        let at = self.saved.len() as u32;
        self.saved.extend_from_slice(&self.element[s..e]);
        self.undo.push(Undo::Restore {
            start,
            len: end - start,
            at,
        });
        self.element[s..e].sort_by_key(|&v| key(v));
        for i in s..e {
            let v = self.element[i];
            self.position[v as usize] = i as u32;
            self.changed.push(v);
        }
    }

    /// Splits the cell at `start` at the given interior offsets (ascending).
    pub(crate) fn split_at(&mut self, start: u32, cuts: &[u32]) {
        if cuts.is_empty() {
            return;
        }
        let end = self.cell_end[start as usize];
        debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(start < cuts[0] && *cuts.last().unwrap() < end);
        if end - start > 1 {
            self.nonsingleton.remove(&start);
        }
        let at = self.saved.len() as u32;
        self.saved.extend_from_slice(cuts);
        self.undo.push(Undo::Split {
            start,
            end,
            at,
            count: cuts.len() as u32,
        });
        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(start);
        bounds.extend_from_slice(cuts);
        bounds.push(end);
        for w in bounds.windows(2) {
            let (f, fe) = (w[0], w[1]);
            self.cell_end[f as usize] = fe;
            if fe - f > 1 {
                self.nonsingleton.insert(f);
            }
            if f != start {
                for q in f..fe {
                    let v = self.element[q as usize];
                    self.cell_of[v as usize] = f;
                    self.changed.push(v);
                }
            }
        }
        self.cells += cuts.len();
    }

    /// Moves `v` to the front of its cell and makes it a singleton cell
    /// placed immediately before the remainder.
    pub fn individualize(&mut self, v: u32) -> Result<u32> {
        if v as usize >= self.n() {
            return Err(Error::Precondition(format!("vertex {v} out of range")));
        }
        let start = self.cell_of[v as usize];
        if self.cell_len(start) < 2 {
            return Err(Error::Precondition(format!(
                "vertex {v} is already a singleton cell"
            )));
        }
        self.swap_positions(self.position[v as usize], start);
        self.split_at(start, &[start + 1]);
        Ok(start)
    }
}

/// An ordered partition pair: the permutations mapping each top cell onto the
/// bottom cell at the same index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Opp {
    pub top: OrderedPartition,
    pub bottom: OrderedPartition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OppClass {
    NonIsomorphic,
    Isomorphic,
    Matching,
    Discrete,
    Unit,
}

impl Opp {
    pub fn new(top: OrderedPartition, bottom: OrderedPartition) -> Result<Self> {
        if top.n() != bottom.n() {
            return Err(Error::SizeMismatch {
                expected: top.n(),
                found: bottom.n(),
            });
        }
        Ok(Opp { top, bottom })
    }

    /// Top and bottom both equal to `pi`.
    pub fn identical(pi: OrderedPartition) -> Self {
        Opp {
            bottom: pi.clone(),
            top: pi,
        }
    }

    pub fn from_cells(n: usize, top: &[Vec<u32>], bottom: &[Vec<u32>]) -> Result<Self> {
        Opp::new(
            OrderedPartition::from_cells(n, top)?,
            OrderedPartition::from_cells(n, bottom)?,
        )
    }

    pub fn n(&self) -> usize {
        self.top.n()
    }

    pub fn is_isomorphic(&self) -> bool {
        self.top.same_shape(&self.bottom)
    }
}

/// Most specific class of an OPP.
pub fn classify(p: &Opp) -> OppClass {
    if !p.is_isomorphic() {
        return OppClass::NonIsomorphic;
    }
    if p.top.is_discrete() {
        return OppClass::Discrete;
    }
    if p.top.is_unit() {
        return OppClass::Unit;
    }
    let matching = p
        .top
        .nonsingleton_starts()
        .all(|s| p.top.cell(s).iter().all(|&v| p.bottom.cell_of(v) == s));
    if matching {
        OppClass::Matching
    } else {
        OppClass::Isomorphic
    }
}

/// Default bound for [`opp_permutations`].
pub const ENUMERATION_BOUND: usize = 10;

/// Every bijection mapping each top cell onto its bottom cell, sorted.
/// Intended as a test oracle; refuses `n > bound`.
pub fn opp_permutations(p: &Opp, bound: usize) -> Result<Vec<Permutation>> {
    let n = p.n();
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if !p.is_isomorphic() {
        return Ok(Vec::new());
    }
    let cells: Vec<(Vec<u32>, Vec<u32>)> = p
        .top
        .cell_starts()
        .map(|s| (p.top.cell(s).to_vec(), p.bottom.cell(s).to_vec()))
        .collect();
    let mut images = vec![0u32; n];
    let mut out = Vec::new();
    enumerate_cells(&cells, 0, &mut images, &mut out);
    out.sort();
    Ok(out)
}

fn enumerate_cells(
    cells: &[(Vec<u32>, Vec<u32>)],
    i: usize,
    images: &mut Vec<u32>,
    out: &mut Vec<Permutation>,
) {
    let Some((top, bottom)) = cells.get(i) else {
        out.push(Permutation::from_images(images).expect("cellwise bijection"));
        return;
    };
    let mut order = bottom.clone();
    permute_all(&mut order, 0, &mut |arr| {
        for (&v, &w) in top.iter().zip(arr.iter()) {
            images[v as usize] = w;
        }
        enumerate_cells(cells, i + 1, images, out);
    });
}

fn permute_all(arr: &mut Vec<u32>, k: usize, f: &mut dyn FnMut(&[u32])) {
    if k == arr.len() {
        f(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute_all(arr, k + 1, f);
        arr.swap(k, i);
    }
}

/// Every vertex of a cell has the same number of neighbors in every cell.
pub fn is_equitable(pi: &OrderedPartition, g: &ColoredGraph) -> bool {
    let signature = |v: u32| {
        let mut s: Vec<u32> = g.neighbors(v).iter().map(|&w| pi.cell_of(w)).collect();
        s.sort_unstable();
        s
    };
    pi.cells().all(|cell| {
        let first = signature(cell[0]);
        cell[1..].iter().all(|&v| signature(v) == first)
    })
}

/// Maps `target` (top) to `image` (bottom): each becomes a singleton cell in
/// front of the remainder of its cell.
pub fn individualize(p: &Opp, target: u32, image: u32) -> Result<Opp> {
    if target as usize >= p.n() || image as usize >= p.n() {
        return Err(Error::Precondition("vertex out of range".into()));
    }
    let cell = p.top.cell_of(target);
    if p.top.cell_len(cell) < 2 {
        return Err(Error::Precondition(format!(
            "target {target} is not in a non-singleton top cell"
        )));
    }
    if !p.bottom.is_cell_start(cell)
        || p.bottom.cell_of(image) != cell
        || p.bottom.cell_len(cell) != p.top.cell_len(cell)
    {
        return Err(Error::Precondition(format!(
            "image {image} is not in the bottom cell corresponding to {target}"
        )));
    }
    let mut out = p.clone();
    out.top.individualize(target)?;
    out.bottom.individualize(image)?;
    out.top.clear_history();
    out.bottom.clear_history();
    Ok(out)
}
