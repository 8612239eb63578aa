//! Text formats: graph6 and a plain edge list with a vertex-count header.
//!
//! graph6 follows the usual 6-bit ASCII encoding: the order `N(n)` is
//! followed by the upper triangle of the adjacency matrix, column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), packed big-endian into 6-bit groups
//! offset by 63 and zero padded.
//!
//! The edge list starts with a line holding `n`, followed by one `u v` pair per
//! line. Blank lines are ignored.

use std::str::FromStr;

use crate::error::{Error, ParseErrorKind, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edge-list" | "edges" => Ok(Format::EdgeList),
            other => Err(Error::InvalidParameters(format!("unknown graph format {other:?}"))),
        }
    }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Guesses the format of `text`. A first non-blank line made only of digits
/// cannot be graph6 (digits lie below byte 63), so it marks an edge list.
pub fn detect_format(text: &str) -> Format {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    match first {
        Some(l) if l.bytes().all(|b| b.is_ascii_digit()) => Format::EdgeList,
        _ => Format::Graph6,
    }
}

/// Parses exactly one graph from `text`.
pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => {
            let mut graphs = graph6_lines(text);
            let Some((line_no, line)) = graphs.next() else {
                return Err(parse_err(1, 1, ParseErrorKind::Empty));
            };
            if let Some((extra, _)) = graphs.next() {
                return Err(parse_err(extra, 1, ParseErrorKind::TrailingData));
            }
            decode_graph6(line, line_no)
        }
    }
}

/// Parses every graph6 line in `text`.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    graph6_lines(text)
        .map(|(line_no, line)| decode_graph6(line, line_no))
        .collect()
}

pub fn serialise(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::EdgeList => to_edge_list(g),
    }
}

fn parse_err(line: usize, column: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, column, kind }
}

fn graph6_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim_end_matches('\r');
        let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
        (!line.trim().is_empty()).then_some((i + 1, line.trim_end()))
    })
}

fn decode_graph6(line: &str, line_no: usize) -> Result<Graph> {
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(line_no, i + 1, ParseErrorKind::InvalidByte { byte: b }));
        }
    }
    let (n, mut pos) = decode_order(bytes).ok_or_else(|| {
        parse_err(line_no, bytes.len().max(1), ParseErrorKind::Truncated)
    })?;

    let slots = (n as u128) * (n as u128).saturating_sub(1) / 2;
    let needed = slots.div_ceil(6);
    let have = (bytes.len() - pos) as u128;
    if have < needed {
        return Err(parse_err(line_no, bytes.len() + 1, ParseErrorKind::Truncated));
    }
    if have > needed {
        return Err(parse_err(line_no, pos + needed as usize + 1, ParseErrorKind::TrailingData));
    }
    let n = n as usize;

    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                current = bytes[pos] - 63;
                pos += 1;
            }
            if current & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

fn decode_order(bytes: &[u8]) -> Option<(u64, usize)> {
    let value = |chunk: &[u8]| chunk.iter().fold(0u64, |acc, &b| (acc << 6) | u64::from(b - 63));
    match bytes {
        [] => None,
        [126, 126, rest @ ..] => (rest.len() >= 6).then(|| (value(&rest[..6]), 8)),
        [126, rest @ ..] => (rest.len() >= 3).then(|| (value(&rest[..3]), 4)),
        [b, ..] => Some((u64::from(b - 63), 1)),
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    let push_bits = |out: &mut Vec<u8>, value: u64, groups: u32| {
        for k in (0..groups).rev() {
            out.push(((value >> (6 * k)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_bits(&mut out, n as u64, 3);
    } else {
        out.extend([126, 126]);
        push_bits(&mut out, n as u64, 6);
    }

    let mut current = 0u8;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            current <<= 1;
            if g.has_edge(i, j) {
                current |= 1;
            }
            bit += 1;
            if bit.is_multiple_of(6) {
                out.push(current + 63);
                current = 0;
            }
        }
    }
    if !bit.is_multiple_of(6) {
        current <<= 6 - bit % 6;
        out.push(current + 63);
    }
    // Every byte is in 63..=126.
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let Some((header_line, header)) = lines.next() else {
        return Err(parse_err(1, 1, ParseErrorKind::Empty));
    };
    let n: usize = header.trim().parse().map_err(|_| {
        parse_err(header_line, first_token_column(header), ParseErrorKind::MalformedHeader)
    })?;

    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in lines {
        let tokens = tokens_with_columns(line);
        if tokens.len() != 2 {
            return Err(parse_err(line_no, first_token_column(line), ParseErrorKind::MalformedEdge));
        }
        let mut ends = [0usize; 2];
        for (k, &(col, tok)) in tokens.iter().enumerate() {
            let v: usize = tok
                .parse()
                .map_err(|_| parse_err(line_no, col, ParseErrorKind::MalformedEdge))?;
            if v >= n {
                return Err(parse_err(
                    line_no,
                    col,
                    ParseErrorKind::VertexOutOfRange { vertex: v, n },
                ));
            }
            ends[k] = v;
        }
        let [u, v] = ends;
        if u == v {
            return Err(parse_err(line_no, tokens[0].0, ParseErrorKind::SelfLoop { vertex: u }));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(parse_err(
                line_no,
                tokens[0].0,
                ParseErrorKind::DuplicateEdge { u: key.0, v: key.1 },
            ));
        }
        edges.push(key);
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn first_token_column(line: &str) -> usize {
    line.find(|c: char| !c.is_whitespace()).map_or(1, |i| i + 1)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(e: Error) -> (usize, usize, ParseErrorKind) {
        match e {
            Error::Parse { line, column, kind } => (line, column, kind),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_star() {
        let g = parse_graph("4\n0 1\n0 2\n0 3", Format::EdgeList).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.degrees(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn graph6_k4() {
        let g = parse_graph("C~", Format::Graph6).unwrap();
        assert_eq!((g.order(), g.size()), (4, 6));
        assert_eq!(to_graph6(&g), "C~");
    }

    #[test]
    fn graph6_known_vectors() {
        // edges 0-2, 0-4, 1-3, 3-4
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(parse_graph("DQc\n", Format::Graph6).unwrap(), g);
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(parse_graph("?", Format::Graph6).unwrap(), Graph::empty(0));
        assert_eq!(parse_graph(">>graph6<<A_", Format::Graph6).unwrap().size(), 1);
    }

    #[test]
    fn graph6_large_order_prefix() {
        let g = Graph::from_edges(100, [(0, 99), (5, 6)]).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph(&s, Format::Graph6).unwrap(), g);
    }

    #[test]
    fn self_loop_reported_with_position() {
        let (line, col, k) = kind(parse_graph("2\n0 0", Format::EdgeList).unwrap_err());
        assert_eq!((line, col), (2, 1));
        assert_eq!(k, ParseErrorKind::SelfLoop { vertex: 0 });
    }

    #[test]
    fn edge_list_errors() {
        let (l, _, k) = kind(parse_graph("x\n0 1", Format::EdgeList).unwrap_err());
        assert_eq!((l, k), (1, ParseErrorKind::MalformedHeader));
        let (l, c, k) = kind(parse_graph("3\n0 1\n1  3", Format::EdgeList).unwrap_err());
        assert_eq!((l, c, k), (3, 4, ParseErrorKind::VertexOutOfRange { vertex: 3, n: 3 }));
        let (l, _, k) = kind(parse_graph("3\n0 1\n1 0", Format::EdgeList).unwrap_err());
        assert_eq!((l, k), (3, ParseErrorKind::DuplicateEdge { u: 0, v: 1 }));
        let (l, _, k) = kind(parse_graph("3\n0 1 2", Format::EdgeList).unwrap_err());
        assert_eq!((l, k), (2, ParseErrorKind::MalformedEdge));
        let (_, _, k) = kind(parse_graph("  \n", Format::EdgeList).unwrap_err());
        assert_eq!(k, ParseErrorKind::Empty);
    }

    #[test]
    fn graph6_errors() {
        let (_, c, k) = kind(parse_graph("C~~", Format::Graph6).unwrap_err());
        assert_eq!((c, k), (3, ParseErrorKind::TrailingData));
        let (_, _, k) = kind(parse_graph("D", Format::Graph6).unwrap_err());
        assert_eq!(k, ParseErrorKind::Truncated);
        let (_, c, k) = kind(parse_graph("C 1", Format::Graph6).unwrap_err());
        assert_eq!((c, k), (2, ParseErrorKind::InvalidByte { byte: b' ' }));
        let (l, _, k) = kind(parse_graph("C~\nC~", Format::Graph6).unwrap_err());
        assert_eq!((l, k), (2, ParseErrorKind::TrailingData));
    }

    #[test]
    fn multi_line_and_detection() {
        let gs = parse_graph6_lines("C~\n\nDQc\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(detect_format("4\n0 1\n"), Format::EdgeList);
        assert_eq!(detect_format("C~\n"), Format::Graph6);
    }
}
