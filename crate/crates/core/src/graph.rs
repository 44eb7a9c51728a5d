//! Vertex-colored simple undirected graphs and the native text format.
//!
//! The native format is whitespace delimited:
//!
//! ```text
//! n m k
//! c_0 c_1 ... c_{n-1}
//! u v        (m lines, 0 <= u, v < n)
//! ```

use std::fmt::Write as _;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::perm::Permutation;

/// An immutable colored graph in compressed adjacency form.
///
/// Neighbor lists are strictly ascending, so edge queries are binary searches
/// and refinement walks adjacency in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    offsets: Vec<usize>,
    adjacency: Vec<u32>,
    colors: Vec<u32>,
    num_colors: usize,
}

impl ColoredGraph {
    /// Builds a graph, rejecting self-loops, duplicate edges, out-of-range
    /// endpoints and color sets with gaps.
    pub fn new(colors: Vec<u32>, edges: &[(u32, u32)]) -> Result<Self> {
        let n = colors.len();
        let num_colors = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut used = vec![false; num_colors];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::InvalidGraph(format!("color {c} is never used")));
        }
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidGraph(format!("edge {u} {v} out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on {u}")));
            }
        }
        let g = Self::from_edges_unchecked(colors, num_colors, edges);
        for v in 0..n {
            if g.neighbors(v as u32).windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(g)
    }

    /// Builds adjacency without validation; callers guarantee a simple graph
    /// with dense colors.
    pub(crate) fn from_edges_unchecked(
        colors: Vec<u32>,
        num_colors: usize,
        edges: &[(u32, u32)],
    ) -> Self {
        let n = colors.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adjacency = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            adjacency[fill[u as usize]] = v;
            fill[u as usize] += 1;
            adjacency[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        ColoredGraph {
            offsets,
            adjacency,
            colors,
            num_colors,
        }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.adjacency.len() / 2
    }

    /// Number of colors; colors are `0..k`.
    pub fn k(&self) -> usize {
        self.num_colors
    }

    pub fn color(&self, v: u32) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    /// Writes the graph in the native format.
    pub fn to_native(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.n(), self.m(), self.k());
        let colors: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        out.push_str(&colors.join(" "));
        out.push('\n');
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    fn check_size(&self, p: &Permutation) -> Result<()> {
        if p.n() != self.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: p.n(),
            });
        }
        Ok(())
    }

    /// The permuted graph `G^α`: edge `(α(u), α(v))` for every edge `(u, v)`,
    /// and vertex `α(v)` takes the color of `v`.
    pub fn apply_permutation(&self, alpha: &Permutation) -> Result<ColoredGraph> {
        self.check_size(alpha)?;
        let images = alpha.images();
        let mut colors = vec![0u32; self.n()];
        for (v, &w) in images.iter().enumerate() {
            colors[w as usize] = self.colors[v];
        }
        let edges: Vec<(u32, u32)> = self
            .edges()
            .map(|(u, v)| (images[u as usize], images[v as usize]))
            .collect();
        Ok(Self::from_edges_unchecked(colors, self.num_colors, &edges))
    }

    /// True iff `alpha` preserves colors and the edge relation.
    ///
    /// Only moved points are inspected: an edge with both endpoints fixed is
    /// trivially preserved, and checking `α(N(v)) = N(α(v))` for each moved `v`
    /// covers every other edge and non-edge.
    pub fn is_automorphism(&self, alpha: &Permutation) -> Result<bool> {
        self.check_size(alpha)?;
        Ok(self.preserves(alpha.moved_pairs(), |v| alpha.image(v)))
    }

    pub(crate) fn preserves(&self, moved: &[(u32, u32)], image: impl Fn(u32) -> u32) -> bool {
        moved.iter().all(|&(v, w)| {
            self.colors[v as usize] == self.colors[w as usize]
                && self.degree(v) == self.degree(w)
                && self
                    .neighbors(v)
                    .iter()
                    .all(|&x| self.has_edge(w, image(x)))
        })
    }
}

type ByteSplit<'a> = std::slice::Split<'a, u8, fn(&u8) -> bool>;

/// Splits input into `(line number, token)` pairs, 1-based lines.
pub(crate) struct Tokens<'a> {
    lines: std::iter::Enumerate<ByteSplit<'a>>,
    current: Option<(usize, ByteSplit<'a>)>,
    pub(crate) last_line: usize,
}

impl<'a> Tokens<'a> {
    pub(crate) fn new(text: &'a [u8]) -> Self {
        let newline: fn(&u8) -> bool = |b| *b == b'\n';
        Tokens {
            lines: text.split(newline).enumerate(),
            current: None,
            last_line: 1,
        }
    }

    /// Advances to the next line and returns its raw bytes.
    pub(crate) fn next_line(&mut self) -> Option<(usize, &'a [u8])> {
        self.current = None;
        self.lines.next().map(|(i, l)| (i + 1, l))
    }

    pub(crate) fn next_token(&mut self) -> Option<(usize, &'a [u8])> {
        loop {
            if let Some((line, words)) = &mut self.current {
                if let Some(tok) = words.find(|w| !w.is_empty()) {
                    self.last_line = *line;
                    return Some((*line, tok));
                }
            }
            let (line, bytes) = self.next_line()?;
            let ws: fn(&u8) -> bool = |b| b.is_ascii_whitespace();
            self.current = Some((line, bytes.split(ws)));
        }
    }
}

pub(crate) fn token_str(tok: &[u8]) -> String {
    String::from_utf8_lossy(tok).into_owned()
}

fn parse_u64(line: usize, tok: &[u8]) -> std::result::Result<u64, ParseError> {
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| ParseError::new(line, ParseErrorKind::InvalidToken(token_str(tok))))
}

/// Parses the native graph format.
pub fn parse_graph(text: &[u8]) -> std::result::Result<ColoredGraph, ParseError> {
    let mut tokens = Tokens::new(text);
    let mut header = [0u64; 3];
    for slot in header.iter_mut() {
        let (line, tok) = tokens.next_token().ok_or_else(|| {
            ParseError::new(
                tokens.last_line,
                ParseErrorKind::MalformedHeader("expected `n m k`".into()),
            )
        })?;
        *slot = parse_u64(line, tok).map_err(|_| {
            ParseError::new(
                line,
                ParseErrorKind::MalformedHeader(format!("bad number {:?}", token_str(tok))),
            )
        })?;
    }
    let [n, m, k] = header;
    if n > u32::MAX as u64 {
        return Err(ParseError::new(
            1,
            ParseErrorKind::MalformedHeader(format!("vertex count {n} too large")),
        ));
    }
    if (n == 0) != (k == 0) || k > n {
        return Err(ParseError::new(
            1,
            ParseErrorKind::MalformedHeader(format!("{k} colors for {n} vertices")),
        ));
    }
    let (n, k) = (n as usize, k as usize);

    let mut colors = Vec::new();
    let mut used = vec![false; k];
    for _ in 0..n {
        let (line, tok) = tokens.next_token().ok_or_else(|| {
            ParseError::new(tokens.last_line, ParseErrorKind::UnexpectedEof("colors"))
        })?;
        let c = parse_u64(line, tok)?;
        if c >= k as u64 {
            return Err(ParseError::new(
                line,
                ParseErrorKind::ColorOutOfRange { color: c, k },
            ));
        }
        used[c as usize] = true;
        colors.push(c as u32);
    }
    if let Some(c) = used.iter().position(|u| !u) {
        return Err(ParseError::new(
            tokens.last_line,
            ParseErrorKind::MissingColor(c),
        ));
    }

    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for _ in 0..m {
        let mut ends = [0u64; 2];
        let mut edge_line = 0;
        for end in ends.iter_mut() {
            let (line, tok) = tokens.next_token().ok_or_else(|| {
                ParseError::new(tokens.last_line, ParseErrorKind::UnexpectedEof("edges"))
            })?;
            edge_line = line;
            let v = parse_u64(line, tok)?;
            if v >= n as u64 {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::VertexOutOfRange { vertex: v, n },
                ));
            }
            *end = v;
        }
        let [u, v] = ends;
        if u == v {
            return Err(ParseError::new(edge_line, ParseErrorKind::SelfLoop(u)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(
                edge_line,
                ParseErrorKind::DuplicateEdge(u, v),
            ));
        }
        edges.push((u as u32, v as u32));
    }
    if let Some((line, tok)) = tokens.next_token() {
        return Err(ParseError::new(
            line,
            ParseErrorKind::TrailingData(token_str(tok)),
        ));
    }
    Ok(ColoredGraph::from_edges_unchecked(colors, k, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> ColoredGraph {
        ColoredGraph::new(vec![0; 3], &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = parse_graph(b"3 3 1\n0 0 0\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!((g.n(), g.m(), g.k()), (3, 3, 1));
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn parses_two_colors() {
        let g = parse_graph(b"2 1 2\n0 1\n0 1\n").unwrap();
        assert_eq!(g.colors(), &[0, 1]);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases: &[(&[u8], usize)] = &[
            (b"3 x 1\n", 1),
            (b"3 1 1\n0 0 0\n1 1\n", 3),
            (b"3 2 1\n0 0 0\n0 1\n1 0\n", 4),
            (b"3 1 1\n0 0 0\n\n0 5\n", 4),
            (b"3 1 2\n0 0 0\n0 1\n", 2),
            (b"3 1 1\n0 0 3\n0 1\n", 2),
            (b"3 1 1\n0 0 0\n0 1\n2 1\n", 4),
            (b"3 2 1\n0 0 0\n0 1\n", 3),
        ];
        for (text, line) in cases {
            let err = parse_graph(text).unwrap_err();
            assert_eq!(
                err.line,
                *line,
                "{err} for {:?}",
                String::from_utf8_lossy(text)
            );
        }
    }

    #[test]
    fn error_kinds() {
        let e = parse_graph(b"3 1 1\n0 0 0\n1 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::SelfLoop(1));
        let e = parse_graph(b"3 2 1\n0 0 0\n0 1\n1 0\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateEdge(1, 0));
        let e = parse_graph(b"3 1 2\n0 0 0\n0 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingColor(1));
    }

    #[test]
    fn empty_graph() {
        let g = parse_graph(b"0 0 0\n\n").unwrap();
        assert_eq!(g.n(), 0);
    }

    #[test]
    fn permuting_a_path() {
        let g = path3();
        let flip = Permutation::from_cycles(3, &[vec![0, 2]]).unwrap();
        assert_eq!(g.apply_permutation(&flip).unwrap(), g);
        assert!(g.is_automorphism(&flip).unwrap());
        let swap = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let h = g.apply_permutation(&swap).unwrap();
        assert_ne!(h, g);
        assert!(h.has_edge(1, 0) && h.has_edge(0, 2) && !h.has_edge(1, 2));
        assert!(!g.is_automorphism(&swap).unwrap());
        assert!(g.is_automorphism(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn complete_graph_fixed_by_everything() {
        let k3 = ColoredGraph::new(vec![0; 3], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let rot = Permutation::from_images(&[1, 2, 0]).unwrap();
        assert_eq!(k3.apply_permutation(&rot).unwrap(), k3);
    }

    #[test]
    fn constructor_validates() {
        assert!(ColoredGraph::new(vec![0, 2], &[]).is_err());
        assert!(ColoredGraph::new(vec![0, 0], &[(0, 0)]).is_err());
        assert!(ColoredGraph::new(vec![0, 0], &[(0, 1), (1, 0)]).is_err());
        assert!(ColoredGraph::new(vec![0, 0], &[(0, 2)]).is_err());
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = ColoredGraph> {
        (1..=max_n)
            .prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (
                    proptest::collection::vec(0u32..3, n),
                    proptest::collection::vec(any::<bool>(), pairs),
                )
            })
            .prop_map(|(raw, bits)| {
                let n = raw.len();
                // remap colors densely in order of first use
                let mut map = std::collections::HashMap::new();
                let colors: Vec<u32> = raw
                    .iter()
                    .map(|c| {
                        let next = map.len() as u32;
                        *map.entry(*c).or_insert(next)
                    })
                    .collect();
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n as u32 {
                    for v in u + 1..n as u32 {
                        if bits[i] {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                ColoredGraph::new(colors, &edges).unwrap()
            })
    }

    fn arb_graph_and_perms() -> impl Strategy<Value = (ColoredGraph, Vec<u32>, Vec<u32>)> {
        arb_graph(7).prop_flat_map(|g| {
            let ids: Vec<u32> = (0..g.n() as u32).collect();
            (
                Just(g),
                Just(ids.clone()).prop_shuffle(),
                Just(ids).prop_shuffle(),
            )
        })
    }

    proptest! {
        #[test]
        fn native_roundtrip(g in arb_graph(9)) {
            let back = parse_graph(g.to_native().as_bytes()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn invariants_hold(g in arb_graph(9)) {
            let mut total = 0;
            for v in 0..g.n() as u32 {
                let nb = g.neighbors(v);
                prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
                for &w in nb {
                    prop_assert!(g.has_edge(w, v));
                }
                total += nb.len();
            }
            prop_assert_eq!(total, 2 * g.m());
        }

        #[test]
        fn automorphism_iff_fixed((g, a, b) in arb_graph_and_perms()) {
            let a = Permutation::from_images(&a).unwrap();
            let b = Permutation::from_images(&b).unwrap();
            let ga = g.apply_permutation(&a).unwrap();
            prop_assert_eq!(g.is_automorphism(&a).unwrap(), ga == g);
            prop_assert_eq!(
                ga.apply_permutation(&b).unwrap(),
                g.apply_permutation(&b.compose(&a).unwrap()).unwrap()
            );
            prop_assert_eq!(g.apply_permutation(&Permutation::identity(g.n())).unwrap(), g);
        }
    }
}
