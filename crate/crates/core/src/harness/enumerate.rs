//! Generation of small graphs up to isomorphism.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{circulant, Graph};
use crate::search::{canonical_form, is_vertex_transitive};

/// Adds a vertex joined to the vertices in the bit set `mask`.
fn extend(g: &Graph, mask: u64) -> Graph {
    let n = g.order();
    let edges = g
        .edges()
        .into_iter()
        .chain((0..n).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n)));
    Graph::from_edges(n + 1, edges).expect("extension of a valid graph")
}

/// Canonical representatives of every graph of order `n + 1` obtained from
/// `parents` by adding a vertex and accepted by `keep`, sorted.
fn augment(
    parents: &[Graph],
    keep: &(dyn Fn(&Graph) -> bool + Sync),
    budget: u64,
    deadline: Option<Instant>,
) -> Result<Vec<Graph>> {
    use rayon::prelude::*;
    let per_parent: Vec<Result<Vec<Graph>>> = parents
        .par_iter()
        .map(|g| {
            if deadline.is_some_and(|d| Instant::now() > d) {
                return Err(Error::BudgetExceeded { budget });
            }
            let n = g.order();
            let mut out = Vec::new();
            for mask in 0..(1u64 << n) {
                let h = extend(g, mask);
                if keep(&h) {
                    out.push(canonical_form(&h, budget)?);
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = BTreeSet::new();
    for r in per_parent {
        all.extend(r?);
    }
    Ok(all.into_iter().collect())
}

/// Every graph of order `n` up to isomorphism, canonically labeled and
/// sorted. Orders up to 7 are intended (1044 graphs at order 7).
pub fn graphs_of_order(n: usize, budget: u64) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidArgument("graphs need at least one vertex".into()));
    }
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        level = augment(&level, &|_| true, budget, None)?;
    }
    Ok(level)
}

/// Every graph of order `1..=n_max`, ordered by order.
pub fn graphs_up_to(n_max: usize, budget: u64) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut level = vec![Graph::empty(1)?];
    out.extend(level.iter().cloned());
    for _ in 1..n_max {
        level = augment(&level, &|_| true, budget, None)?;
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

/// Bipartite graphs of order `1..=n_max`, grouped by order. Removing a
/// vertex keeps a graph bipartite, so augmenting the bipartite graphs of the
/// previous order reaches all of them. Stops with a resource error once
/// `deadline` has passed.
pub fn bipartite_graphs_up_to(n_max: usize, budget: u64, deadline: Option<Instant>) -> Result<Vec<Vec<Graph>>> {
    let mut levels = vec![vec![Graph::empty(1)?]];
    while levels.len() < n_max {
        let next = augment(levels.last().expect("nonempty"), &|h| h.is_bipartite(), budget, deadline)?;
        levels.push(next);
    }
    Ok(levels)
}

/// A `k`-regular graph of order `n`, if one exists: a circulant.
fn regular_seed(n: usize, k: usize) -> Option<Graph> {
    if k >= n || (n * k) % 2 == 1 {
        return None;
    }
    let mut jumps: Vec<usize> = (1..=k / 2).collect();
    if k % 2 == 1 {
        jumps.push(n / 2);
    }
    if jumps.is_empty() {
        return Graph::empty(n).ok();
    }
    circulant(n, &jumps).ok()
}

/// Every `k`-regular graph of order `n` up to isomorphism, sorted by
/// canonical form. Double-edge switches connect all graphs with a given
/// degree sequence, so a breadth-first search over switch moves starting
/// from one regular graph visits every class.
pub fn regular_graphs(n: usize, k: usize, budget: u64) -> Result<Vec<Graph>> {
    if n >= 2 && 2 * k > n - 1 {
        let complements = regular_graphs(n, n - 1 - k, budget)?;
        let mut out: Vec<Graph> = complements
            .iter()
            .map(|g| canonical_form(&g.complement(), budget))
            .collect::<Result<_>>()?;
        out.sort();
        return Ok(out);
    }
    let Some(seed) = regular_seed(n, k) else {
        return Ok(Vec::new());
    };
    let mut seen: BTreeSet<Graph> = BTreeSet::new();
    let start = canonical_form(&seed, budget)?;
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(g) = frontier.pop() {
        let edges = g.edges();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                for (x, y, z, w) in [(a, c, b, d), (a, d, b, c)] {
                    if g.has_edge(x, y) || g.has_edge(z, w) {
                        continue;
                    }
                    let switched = g
                        .edges()
                        .into_iter()
                        .filter(|&e| e != (a, b) && e != (c, d))
                        .chain([(x, y), (z, w)]);
                    let h = canonical_form(&Graph::from_edges(n, switched)?, budget)?;
                    if seen.insert(h.clone()) {
                        frontier.push(h);
                    }
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Every regular graph of order `n`, all valencies, ordered by valency.
pub fn all_regular_graphs(n: usize, budget: u64) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 0..n {
        out.extend(regular_graphs(n, k, budget)?);
    }
    Ok(out)
}

/// Every vertex-transitive graph of order `n`.
pub fn vertex_transitive_graphs(n: usize, budget: u64) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for g in all_regular_graphs(n, budget)? {
        if is_vertex_transitive(&g, budget)? {
            out.push(g);
        }
    }
    Ok(out)
}
