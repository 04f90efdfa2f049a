//! Individualization–refinement search: automorphism groups of coloured
//! graphs, canonical labelings, and the transitivity predicates built on them.
//!
//! The search tree is deterministic: the target cell at every node is the
//! first smallest non-singleton cell and its members are tried in ascending
//! vertex order.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::VertexPermutation;
use crate::refine::{Coloring, Partition};

struct Searcher<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    budget: u64,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, colors: &'a [usize], budget: u64) -> Self {
        Searcher {
            g,
            colors,
            budget,
            nodes: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    fn root(&mut self) -> Result<(Partition, u64)> {
        self.tick()?;
        let mut p = Partition::from_coloring(self.colors);
        let queue = p.cell_starts();
        let trace = p.refine(self.g, queue);
        Ok((p, trace))
    }

    fn child(&mut self, parent: &Partition, v: usize) -> Result<(Partition, u64)> {
        self.tick()?;
        let mut p = parent.clone();
        let s = p.individualize(v);
        let trace = p.refine(self.g, vec![s]);
        Ok((p, trace))
    }

    fn is_color_automorphism(&self, p: &VertexPermutation) -> bool {
        p.preserves_colors(self.colors) && p.is_automorphism_of(self.g)
    }
}

/// The leftmost path of the search tree.
struct FirstPath {
    nodes: Vec<Partition>,
    traces: Vec<u64>,
    base: Vec<usize>,
    cells: Vec<(usize, Vec<usize>)>,
}

impl FirstPath {
    fn leaf(&self) -> &[usize] {
        self.nodes.last().expect("path has a root").lab()
    }
}

fn first_path(s: &mut Searcher<'_>) -> Result<FirstPath> {
    let (root, t) = s.root()?;
    let mut path = FirstPath {
        nodes: vec![root],
        traces: vec![t],
        base: Vec::new(),
        cells: Vec::new(),
    };
    while let Some(c) = path.nodes.last().expect("nonempty").target_cell() {
        let mut cell = path.nodes.last().expect("nonempty").cell(c).to_vec();
        cell.sort_unstable();
        let v = cell[0];
        let (child, t) = s.child(path.nodes.last().expect("nonempty"), v)?;
        path.base.push(v);
        path.cells.push((c, cell));
        path.nodes.push(child);
        path.traces.push(t);
    }
    Ok(path)
}

/// Looks below `node` (at `depth` on the first path's scale) for a leaf
/// equivalent to the first leaf and returns the automorphism mapping one to the other.
fn find_equivalent(
    s: &mut Searcher<'_>,
    path: &FirstPath,
    node: &Partition,
    depth: usize,
) -> Result<Option<VertexPermutation>> {
    match node.target_cell() {
        None => {
            if depth + 1 != path.nodes.len() {
                return Ok(None);
            }
            let mut image = vec![0; node.order()];
            for (&a, &b) in path.leaf().iter().zip(node.lab()) {
                image[a] = b;
            }
            let gamma = VertexPermutation::from_vec_unchecked(image);
            Ok(s.is_color_automorphism(&gamma).then_some(gamma))
        }
        Some(c) => {
            let Some((first_c, first_cell)) = path.cells.get(depth) else {
                return Ok(None);
            };
            if c != *first_c || node.cell(c).len() != first_cell.len() {
                return Ok(None);
            }
            let mut cell = node.cell(c).to_vec();
            cell.sort_unstable();
            for v in cell {
                let (child, t) = s.child(node, v)?;
                if t != path.traces[depth + 1] {
                    continue;
                }
                if let Some(gamma) = find_equivalent(s, path, &child, depth + 1)? {
                    return Ok(Some(gamma));
                }
            }
            Ok(None)
        }
    }
}

fn orbit_marks(n: usize, start: usize, gens: &[VertexPermutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

fn group_search(s: &mut Searcher<'_>) -> Result<PermGroup> {
    let n = s.g.order();
    let path = first_path(s)?;
    let mut gens: Vec<VertexPermutation> = Vec::new();
    for level in (0..path.base.len()).rev() {
        let b = path.base[level];
        let mut orbit = orbit_marks(n, b, &gens);
        for &v in &path.cells[level].1 {
            if orbit[v] {
                continue;
            }
            let (child, t) = s.child(&path.nodes[level], v)?;
            if t != path.traces[level + 1] {
                continue;
            }
            if let Some(gamma) = find_equivalent(s, &path, &child, level + 1)? {
                debug_assert!(base_prefix_fixed(&gamma, &path.base[..level]));
                gens.push(gamma);
                orbit = orbit_marks(n, b, &gens);
            }
        }
    }
    if let Some(bad) = gens.iter().find(|g| !s.is_color_automorphism(g)) {
        return Err(Error::Invariant(format!("search produced a non-automorphism {bad:?}")));
    }
    Ok(PermGroup::from_bsgs(n, path.base, gens))
}

fn base_prefix_fixed(g: &VertexPermutation, prefix: &[usize]) -> bool {
    prefix.iter().all(|&b| g.apply(b) == b)
}

/// The group of automorphisms of `g` that preserve every colour of `fixed`.
/// Exceeding `budget` search nodes is an error, never a partial answer.
pub fn automorphism_group(g: &Graph, fixed: &Coloring, budget: u64) -> Result<PermGroup> {
    fixed.check(g)?;
    let mut s = Searcher::new(g, fixed.colors(), budget);
    group_search(&mut s)
}

/// The full automorphism group of `g`.
pub fn full_automorphism_group(g: &Graph, budget: u64) -> Result<PermGroup> {
    automorphism_group(g, &Coloring::uniform(g.order()), budget)
}

/// A canonical relabeling of a coloured graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLabeling {
    /// The relabeled graph.
    pub graph: Graph,
    /// Vertex `v` of the input becomes `labeling.apply(v)`.
    pub labeling: VertexPermutation,
    /// Colour of each canonical vertex.
    pub colors: Vec<usize>,
}

struct Best {
    traces: Vec<u64>,
    graph: Graph,
    lab: Vec<usize>,
}

fn prefix_cmp(traces: &[u64], best: &[u64]) -> Ordering {
    let k = traces.len().min(best.len());
    traces[..k].cmp(&best[..k])
}

fn canonical_visit(
    s: &mut Searcher<'_>,
    node: &Partition,
    traces: &mut Vec<u64>,
    group: &PermGroup,
    best: &mut Option<Best>,
) -> Result<()> {
    if let Some(b) = best {
        if prefix_cmp(traces, &b.traces) == Ordering::Less {
            return Ok(());
        }
    }
    match node.target_cell() {
        None => {
            let mut image = vec![0; node.order()];
            for (i, &v) in node.lab().iter().enumerate() {
                image[v] = i;
            }
            let graph = s.g.relabel(&image);
            let better = match best {
                None => true,
                Some(b) => (traces.as_slice(), &graph) > (b.traces.as_slice(), &b.graph),
            };
            if better {
                *best = Some(Best {
                    traces: traces.clone(),
                    graph,
                    lab: node.lab().to_vec(),
                });
            }
            Ok(())
        }
        Some(c) => {
            let mut cell = node.cell(c).to_vec();
            cell.sort_unstable();
            let orbit_of: Vec<usize> = orbit_labels(group);
            let mut done: Vec<usize> = Vec::new();
            for v in cell {
                if done.contains(&orbit_of[v]) {
                    continue;
                }
                done.push(orbit_of[v]);
                let (child, t) = s.child(node, v)?;
                let sub = if group.is_trivial() {
                    PermGroup::trivial(group.degree())
                } else {
                    group.stabilizer(&[v])?
                };
                traces.push(t);
                let r = canonical_visit(s, &child, traces, &sub, best);
                traces.pop();
                r?;
            }
            Ok(())
        }
    }
}

fn orbit_labels(group: &PermGroup) -> Vec<usize> {
    let mut label = vec![0; group.degree()];
    for orbit in group.orbits() {
        for &v in &orbit {
            label[v] = orbit[0];
        }
    }
    label
}

/// Canonical labeling of a coloured graph: two coloured graphs are isomorphic
/// (by a colour-preserving map) iff their canonical graphs and canonical
/// colour sequences coincide.
pub fn canonical_labeling(g: &Graph, coloring: &Coloring, budget: u64) -> Result<CanonicalLabeling> {
    coloring.check(g)?;
    let mut s = Searcher::new(g, coloring.colors(), budget);
    let group = group_search(&mut s)?;
    let (root, t) = s.root()?;
    let mut best = None;
    let mut traces = vec![t];
    canonical_visit(&mut s, &root, &mut traces, &group, &mut best)?;
    let best = best.expect("the search tree has at least one leaf");
    let mut image = vec![0; g.order()];
    for (i, &v) in best.lab.iter().enumerate() {
        image[v] = i;
    }
    let colors = best.lab.iter().map(|&v| coloring.color(v)).collect();
    Ok(CanonicalLabeling {
        graph: best.graph,
        labeling: VertexPermutation::from_vec_unchecked(image),
        colors,
    })
}

/// Canonically labeled copy of `g`.
pub fn canonical_form(g: &Graph, budget: u64) -> Result<Graph> {
    Ok(canonical_labeling(g, &Coloring::uniform(g.order()), budget)?.graph)
}

/// Isomorphism test by canonical forms.
pub fn are_isomorphic(g: &Graph, h: &Graph, budget: u64) -> Result<bool> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g, budget)? == canonical_form(h, budget)?)
}

/// One orbit of Aut(g) on vertices.
pub fn is_vertex_transitive(g: &Graph, budget: u64) -> Result<bool> {
    Ok(full_automorphism_group(g, budget)?.orbits().len() == 1)
}

/// Aut(g) has at most one orbit on arcs (ordered pairs of adjacent vertices).
/// An edgeless graph has no arcs and counts as arc-transitive.
pub fn is_arc_transitive(g: &Graph, budget: u64) -> Result<bool> {
    let group = full_automorphism_group(g, budget)?;
    Ok(arc_orbit_count(g, &group) <= 1)
}

/// Number of orbits of `group` on the arcs of `g`.
pub fn arc_orbit_count(g: &Graph, group: &PermGroup) -> usize {
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .flat_map(|(u, v)| [(u, v), (v, u)])
        .collect();
    let mut sorted = arcs.clone();
    sorted.sort_unstable();
    let index = |a: (usize, usize)| sorted.binary_search(&a).expect("automorphisms map arcs to arcs");
    let mut parent: Vec<usize> = (0..sorted.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gen in group.strong_generators() {
        for (i, &(u, v)) in sorted.iter().enumerate() {
            let j = index((gen.apply(u), gen.apply(v)));
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..sorted.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_NODE_BUDGET as B;
    use crate::graph::{complete_bipartite, complete_graph, cube, cycle_graph, path_graph, petersen};
    use num_bigint::BigUint;

    fn order(g: &Graph) -> BigUint {
        full_automorphism_group(g, B).unwrap().order().clone()
    }

    #[test]
    fn named_orders() {
        assert_eq!(order(&complete_graph(5).unwrap()), BigUint::from(120u32));
        assert_eq!(order(&cycle_graph(7).unwrap()), BigUint::from(14u32));
        assert_eq!(order(&petersen()), BigUint::from(120u32));
        assert_eq!(order(&cube()), BigUint::from(48u32));
        assert_eq!(order(&complete_bipartite(3, 3).unwrap()), BigUint::from(72u32));
        assert_eq!(order(&path_graph(4).unwrap()), BigUint::from(2u32));
        assert_eq!(order(&Graph::empty(6).unwrap()), BigUint::from(720u32));
        assert_eq!(order(&Graph::empty(1).unwrap()), BigUint::from(1u32));
    }

    #[test]
    fn group_chain_verifies() {
        let g = full_automorphism_group(&petersen(), B).unwrap();
        assert!(g.verify_chain());
        let rebuilt = PermGroup::from_generators(10, g.generators().to_vec()).unwrap();
        assert_eq!(rebuilt.order(), g.order());
        for e in g.strong_generators() {
            assert!(e.is_automorphism_of(&petersen()));
        }
    }

    #[test]
    fn coloured_search_respects_colours() {
        let c6 = cycle_graph(6).unwrap();
        let colors = Coloring::new(vec![0, 1, 0, 1, 0, 1]);
        let g = automorphism_group(&c6, &colors, B).unwrap();
        assert_eq!(g.order(), &BigUint::from(6u32));
        assert!(g.strong_generators().iter().all(|p| p.preserves_colors(colors.colors())));
    }

    #[test]
    fn budget_is_enforced() {
        match full_automorphism_group(&petersen(), 3) {
            Err(Error::BudgetExceeded { budget }) => assert_eq!(budget, 3),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn canonical_forms() {
        let hexagon = cycle_graph(6).unwrap();
        let prism_of_triangle = crate::product::canonical_double_cover(&complete_graph(3).unwrap(), 64)
            .unwrap()
            .into_graph();
        assert_eq!(canonical_form(&hexagon, B).unwrap(), canonical_form(&prism_of_triangle, B).unwrap());
        let two_triangles = complete_graph(3).unwrap().copies(2).unwrap();
        assert_ne!(canonical_form(&hexagon, B).unwrap(), canonical_form(&two_triangles, B).unwrap());
    }

    #[test]
    fn canonical_labeling_maps_graph() {
        let g = path_graph(5).unwrap();
        let c = canonical_labeling(&g, &Coloring::uniform(5), B).unwrap();
        assert_eq!(g.relabel(c.labeling.images()), c.graph);
    }

    #[test]
    fn transitivity() {
        let c7 = cycle_graph(7).unwrap();
        assert!(is_vertex_transitive(&c7, B).unwrap());
        assert!(is_arc_transitive(&c7, B).unwrap());
        assert!(!is_vertex_transitive(&path_graph(3).unwrap(), B).unwrap());
        let mut almost = complete_graph(4).unwrap().adjacency_matrix();
        almost[0][1] = false;
        almost[1][0] = false;
        assert!(!is_vertex_transitive(&Graph::from_matrix(&almost).unwrap(), B).unwrap());
        assert!(is_arc_transitive(&petersen(), B).unwrap());
        // the triangular prism is vertex- but not arc-transitive
        let prism = circulant_prism();
        assert!(is_vertex_transitive(&prism, B).unwrap());
        assert!(!is_arc_transitive(&prism, B).unwrap());
        assert!(is_arc_transitive(&Graph::empty(3).unwrap(), B).unwrap());
    }

    fn circulant_prism() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
    }
}
