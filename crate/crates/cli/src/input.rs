//! Graph sources: files (graph6 or edge list) and named built-in graphs.

use std::path::Path;

use clap::ValueEnum;
use pairstab::graph::{complete_bipartite, complete_graph, cube, cycle_graph, path_graph, petersen};
use pairstab::io::{parse_edge_list, parse_graph6};
use pairstab::{Error, Graph, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// By extension: `.el` is an edge list, anything else graph6.
    Auto,
    G6,
    El,
}

/// Loads a graph from a file path or a built-in name.
///
/// Built-ins: `petersen`, `cube`, `k<m>`, `c<m>`, `p<m>`, `e<m>` (edgeless),
/// `k<a>,<b>`, `<t>*<name>` for `t` disjoint copies, and `g6:<string>`.
pub fn load_graph(source: &str, format: InputFormat) -> Result<Graph> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {source}: {e}")))?;
        let edge_list = match format {
            InputFormat::El => true,
            InputFormat::G6 => false,
            InputFormat::Auto => path.extension().is_some_and(|e| e == "el"),
        };
        return if edge_list {
            parse_edge_list(&text)
        } else {
            single_graph6(&text, source)
        };
    }
    named_graph(source).ok_or_else(|| {
        Error::InvalidArgument(format!("{source:?} is neither a readable file nor a built-in graph name"))
    })?
}

fn single_graph6(text: &str, source: &str) -> Result<Graph> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.trim().trim_start_matches(">>graph6<<"))
        .filter(|l| !l.is_empty())
        .collect();
    match lines.as_slice() {
        [one] => parse_graph6(one),
        [] => Err(Error::InvalidArgument(format!("{source} holds no graph"))),
        _ => Err(Error::InvalidArgument(format!(
            "{source} holds {} graphs; pass a single-graph file (use `scan` for corpora)",
            lines.len()
        ))),
    }
}

fn named_graph(name: &str) -> Option<Result<Graph>> {
    let name = name.trim();
    if let Some(g6) = name.strip_prefix("g6:") {
        return Some(parse_graph6(g6));
    }
    let name = name.to_ascii_lowercase();
    if let Some((t, rest)) = name.split_once('*') {
        let t: usize = t.parse().ok()?;
        return Some(named_graph(rest)?.and_then(|g| g.copies(t)));
    }
    match name.as_str() {
        "petersen" => return Some(Ok(petersen())),
        "cube" => return Some(Ok(cube())),
        _ => {}
    }
    if name.is_empty() || !name.is_ascii() {
        return None;
    }
    let (head, tail) = name.split_at(1);
    if let Some((a, b)) = tail.split_once(',') {
        if head == "k" {
            return Some(complete_bipartite(a.parse().ok()?, b.parse().ok()?));
        }
        return None;
    }
    let m: usize = tail.parse().ok()?;
    Some(match head {
        "k" => complete_graph(m),
        "c" => cycle_graph(m),
        "p" => path_graph(m),
        "e" => Graph::empty(m),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(load_graph("k4", InputFormat::Auto).unwrap().edge_count(), 6);
        assert_eq!(load_graph("C6", InputFormat::Auto).unwrap().order(), 6);
        assert_eq!(load_graph("k3,3", InputFormat::Auto).unwrap().edge_count(), 9);
        assert_eq!(load_graph("2*k4", InputFormat::Auto).unwrap().order(), 8);
        assert_eq!(load_graph("e3", InputFormat::Auto).unwrap().edge_count(), 0);
        assert_eq!(load_graph("g6:Bw", InputFormat::Auto).unwrap().edge_count(), 3);
        assert!(load_graph("nonsense", InputFormat::Auto).is_err());
        assert!(load_graph("x5", InputFormat::Auto).is_err());
    }
}
