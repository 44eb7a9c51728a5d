//! DIMACS CNF input and the literal/clause graph used for SAT symmetry
//! detection.
//!
//! Vertex layout: variable `i` (1-based) owns vertices `2(i-1)` (positive
//! literal) and `2(i-1)+1` (negative literal), all color 0. Each clause that
//! is not binary gets one vertex of color 1, appended in clause order and
//! joined to its literals. A binary clause becomes a single literal-literal
//! edge. Complementary literals are always joined.

use crate::error::{ParseError, ParseErrorKind};
use crate::graph::{token_str, ColoredGraph};

/// Upper bound on the vertex count [`parse_cnf_to_graph`] will allocate.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    /// Clauses as signed DIMACS literals, without the terminating 0.
    pub clauses: Vec<Vec<i64>>,
}

pub fn literal_vertex(lit: i64) -> u32 {
    let var = lit.unsigned_abs() as u32 - 1;
    2 * var + u32::from(lit < 0)
}

/// Parses DIMACS CNF (`c` comments, `p cnf V C`, zero-terminated clauses that
/// may span lines, optional `%` end marker).
pub fn parse_cnf(text: &[u8]) -> Result<Cnf, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 1;

    for (i, raw) in text.split(|b| *b == b'\n').enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_ascii();
        if trimmed.is_empty() || trimmed[0] == b'c' {
            continue;
        }
        last_line = line;
        if trimmed[0] == b'%' {
            break;
        }
        if trimmed[0] == b'p' {
            if header.is_some() {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::MalformedHeader("second problem line".into()),
                ));
            }
            header = Some(parse_header(line, trimmed)?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::new(
                line,
                ParseErrorKind::MalformedHeader("clause before `p cnf` line".into()),
            ));
        };
        for tok in trimmed
            .split(|b| b.is_ascii_whitespace())
            .filter(|t| !t.is_empty())
        {
            let lit = std::str::from_utf8(tok)
                .ok()
                .and_then(|s| s.parse::<i64>().ok())
                .ok_or_else(|| {
                    ParseError::new(line, ParseErrorKind::InvalidToken(token_str(tok)))
                })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() > num_vars as u64 {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::VariableOutOfRange {
                        var: lit.unsigned_abs(),
                        declared: num_vars,
                    },
                ));
            }
            current.push(lit);
        }
    }
    let Some((num_vars, declared)) = header else {
        return Err(ParseError::new(
            last_line,
            ParseErrorKind::MalformedHeader("missing `p cnf` line".into()),
        ));
    };
    // tolerate a final clause without its terminating 0
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != declared {
        return Err(ParseError::new(
            last_line,
            ParseErrorKind::ClauseCount {
                declared,
                found: clauses.len(),
            },
        ));
    }
    Ok(Cnf { num_vars, clauses })
}

fn parse_header(line: usize, bytes: &[u8]) -> Result<(usize, usize), ParseError> {
    let bad = |msg: &str| ParseError::new(line, ParseErrorKind::MalformedHeader(msg.into()));
    let text = std::str::from_utf8(bytes).map_err(|_| bad("not UTF-8"))?;
    let parts: Vec<&str> = text.split_whitespace().collect();
    match parts.as_slice() {
        ["p", "cnf", v, c] => {
            let v = v.parse::<u32>().map_err(|_| bad("bad variable count"))?;
            let c = c.parse::<u32>().map_err(|_| bad("bad clause count"))?;
            Ok((v as usize, c as usize))
        }
        _ => Err(bad("expected `p cnf <vars> <clauses>`")),
    }
}

/// Builds the literal/clause graph of a formula.
pub fn cnf_to_graph(cnf: &Cnf) -> ColoredGraph {
    let literals = 2 * cnf.num_vars;
    let mut colors = vec![0u32; literals];
    let clause_color = u32::from(literals > 0);
    let mut edges: Vec<(u32, u32)> = (0..cnf.num_vars as u32)
        .map(|v| (2 * v, 2 * v + 1))
        .collect();
    for clause in &cnf.clauses {
        let mut lits: Vec<u32> = clause.iter().map(|&l| literal_vertex(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.len() == 2 {
            edges.push((lits[0], lits[1]));
        } else {
            let c = colors.len() as u32;
            colors.push(clause_color);
            edges.extend(lits.iter().map(|&l| (l, c)));
        }
    }
    for e in edges.iter_mut() {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    let k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    ColoredGraph::from_edges_unchecked(colors, k, &edges)
}

pub fn parse_cnf_to_graph(text: &[u8]) -> Result<ColoredGraph, ParseError> {
    parse_cnf_to_graph_limited(text, DEFAULT_MAX_VERTICES)
}

/// As [`parse_cnf_to_graph`], refusing formulas whose graph would exceed
/// `max_vertices` vertices.
pub fn parse_cnf_to_graph_limited(
    text: &[u8],
    max_vertices: usize,
) -> Result<ColoredGraph, ParseError> {
    let cnf = parse_cnf(text)?;
    let vertices = 2 * cnf.num_vars as u64 + cnf.clauses.len() as u64;
    if vertices > max_vertices as u64 {
        return Err(ParseError::new(
            1,
            ParseErrorKind::TooLarge {
                vertices,
                limit: max_vertices,
            },
        ));
    }
    Ok(cnf_to_graph(&cnf))
}
