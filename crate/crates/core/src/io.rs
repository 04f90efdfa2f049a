//! graph6 and edge-list text formats.
//!
//! graph6 follows the standard encoding: the order in the short (one byte) or
//! medium (`~` plus three bytes) form, then the upper triangle of the adjacency
//! matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six
//! bits per byte with 63 added to each byte. The long form (n >= 2^18) is not
//! supported.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MEDIUM_LIMIT: usize = (1 << 18) - 1;

fn g6_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 line. A trailing newline and the optional `>>graph6<<`
/// header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (base, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_err(
            base + pos,
            format!("byte 0x{:02x} is outside the printable range 63..=126", body[pos]),
        ));
    }
    let (n, header_len) = match body {
        [] => return Err(g6_err(base, "empty input")),
        [126, 126, ..] => return Err(g6_err(base, "long-form orders are not supported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_err(base + body.len(), "truncated medium-form order"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
            (n, 4)
        }
        [b, ..] => (usize::from(*b - 63), 1),
    };
    if n == 0 {
        return Err(g6_err(base, "graphs must have at least one vertex"));
    }
    let pairs = n * (n - 1) / 2;
    let need = pairs.div_ceil(6);
    let payload = &body[header_len..];
    if payload.len() < need {
        return Err(g6_err(
            base + body.len(),
            format!("expected {need} data bytes for {n} vertices, found {}", payload.len()),
        ));
    }
    if payload.len() > need {
        return Err(g6_err(base + header_len + need, "trailing bytes after the adjacency data"));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = payload[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.insert_edge(u, v);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph in graph6 (no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= MEDIUM_LIMIT, "order {n} needs the unsupported long form");
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses the edge-list format: the vertex count, then whitespace-separated
/// pairs `u v`. Text after `#` on a line is ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut tokens = text.lines().enumerate().flat_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        content.split_whitespace().map(move |t| (i + 1, t))
    });
    let err = |line, reason: String| Error::EdgeList { line, reason };
    let (first_line, first) = tokens.next().ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: usize = first
        .parse()
        .map_err(|_| err(first_line, format!("vertex count {first:?} is not a number")))?;
    if n == 0 {
        return Err(err(first_line, "graphs must have at least one vertex".into()));
    }
    let mut g = Graph::empty(n)?;
    let parse_vertex = |line: usize, tok: &str| -> Result<usize> {
        let v: usize = tok
            .parse()
            .map_err(|_| err(line, format!("vertex {tok:?} is not a number")))?;
        if v >= n {
            return Err(err(line, format!("vertex {v} is out of range 0..{n}")));
        }
        Ok(v)
    };
    while let Some((line_u, tok_u)) = tokens.next() {
        let u = parse_vertex(line_u, tok_u)?;
        let (line_v, tok_v) = tokens
            .next()
            .ok_or_else(|| err(line_u, format!("vertex {u} has no partner")))?;
        let v = parse_vertex(line_v, tok_v)?;
        if u == v {
            return Err(err(line_v, format!("loop at vertex {u}")));
        }
        g.insert_edge(u, v);
    }
    Ok(g)
}

/// Writes the edge-list format, one edge per line with `u < v`.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, k2};

    // Reference encoder written directly from the format rules: list the
    // upper-triangle bits column by column, pad to a multiple of six, add 63.
    fn hand_encode(n: usize, edges: &[(usize, usize)]) -> String {
        let mut bits = Vec::new();
        for v in 1..n {
            for u in 0..v {
                bits.push(edges.contains(&(u, v)) || edges.contains(&(v, u)));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        s.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let val = chunk.iter().fold(0u8, |a, &b| (a << 1) | u8::from(b));
            s.push((val + 63) as char);
        }
        s
    }

    #[test]
    fn known_strings() {
        // K_4: six set bits -> 63 + 63 = '~'
        assert_eq!(hand_encode(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), complete_graph(4).unwrap());
        // K_2: bits 100000 = 32 -> '_'
        assert_eq!(hand_encode(2, &[(0, 1)]), "A_");
        assert_eq!(parse_graph6("A_").unwrap(), k2());
        assert_eq!(emit_graph6(&k2()), "A_");
        let e5 = parse_graph6("D??").unwrap();
        assert_eq!((e5.order(), e5.edge_count()), (5, 0));
        assert_eq!(emit_graph6(&Graph::empty(1).unwrap()), "@");
        // C_5: bits 1010011001 -> 101001 100100 -> "hc"
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(hand_encode(5, &c5.edges()), "Dhc");
        assert_eq!(emit_graph6(&c5), "Dhc");
    }

    #[test]
    fn medium_form_round_trip() {
        let g = cycle_graph(70).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), k2());
    }

    #[test]
    fn graph6_errors_name_offsets() {
        match parse_graph6("C~x") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected trailing-bytes error, got {other:?}"),
        }
        match parse_graph6("D?") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected truncation error, got {other:?}"),
        }
        match parse_graph6("C ~") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected printable-range error, got {other:?}"),
        }
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("?").is_err());
        assert!(parse_graph6("~~??????").is_err());
    }

    #[test]
    fn edge_lists() {
        assert_eq!(parse_edge_list("3\n0 1\n1 2\n2 0").unwrap(), complete_graph(3).unwrap());
        assert_eq!(parse_edge_list("2\n0 1\n0 1").unwrap(), k2());
        match parse_edge_list("4\n0 0") {
            Err(Error::EdgeList { line, reason }) => {
                assert_eq!(line, 2);
                assert!(reason.contains("loop"));
            }
            other => panic!("expected loop error, got {other:?}"),
        }
        assert!(parse_edge_list("3\n0 3").is_err());
        assert!(parse_edge_list("3\n0").is_err());
        assert!(parse_edge_list("# only a comment\n").is_err());
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(parse_edge_list(&emit_edge_list(&c5)).unwrap(), c5);
    }
}
