//! Coprimality of graphs under the direct product.
//!
//! Two graphs are coprime when they have no common direct factor of order
//! greater than one. Factors are allowed to carry loops (so `K_m` is the
//! product of a looped single vertex and itself, and `K_m × K_2` is not
//! coprime to `K_m`). The decision combines two cheap sufficient conditions
//! with a bounded exhaustive factor search.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::emit_graph6;
use crate::refine::Coloring;
use crate::search::canonical_labeling;

/// A graph that may carry a loop at any vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopedGraph {
    graph: Graph,
    loops: Vec<bool>,
}

impl LoopedGraph {
    pub fn new(graph: Graph, loops: Vec<bool>) -> Result<LoopedGraph> {
        if loops.len() != graph.order() {
            return Err(Error::InvalidArgument(format!(
                "{} loop flags for {} vertices",
                loops.len(),
                graph.order()
            )));
        }
        Ok(LoopedGraph { graph, loops })
    }

    /// A loopless graph viewed as a looped one.
    pub fn from_graph(graph: Graph) -> LoopedGraph {
        let loops = vec![false; graph.order()];
        LoopedGraph { graph, loops }
    }

    /// The single vertex with a loop, the unit of the direct product.
    pub fn unit() -> LoopedGraph {
        LoopedGraph {
            graph: Graph::empty(1).expect("one vertex"),
            loops: vec![true],
        }
    }

    fn from_matrix(n: usize, m: &[bool]) -> LoopedGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| m[u * n + v]);
        let graph = Graph::from_edges(n, edges).expect("valid matrix");
        LoopedGraph {
            graph,
            loops: (0..n).map(|v| m[v * n + v]).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// The loopless part.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn loops(&self) -> &[bool] {
        &self.loops
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops[u]
        } else {
            self.graph.has_edge(u, v)
        }
    }

    /// The loopless graph, if there are no loops.
    pub fn into_loopless(self) -> Option<Graph> {
        (!self.has_loops()).then_some(self.graph)
    }

    /// Direct product with `(u, x)` at index `u * other.order() + x`.
    pub fn product(&self, other: &LoopedGraph) -> LoopedGraph {
        let (n1, n2) = (self.order(), other.order());
        let n = n1 * n2;
        let mut m = vec![false; n * n];
        for u in 0..n1 {
            for v in 0..n1 {
                if !self.adjacent(u, v) {
                    continue;
                }
                for x in 0..n2 {
                    for y in 0..n2 {
                        if other.adjacent(x, y) {
                            m[(u * n2 + x) * n + v * n2 + y] = true;
                        }
                    }
                }
            }
        }
        LoopedGraph::from_matrix(n, &m)
    }

    /// Canonical form: the canonically relabeled loopless part and the loop
    /// flags in canonical order.
    pub fn canonical_key(&self, budget: u64) -> Result<(Graph, Vec<bool>)> {
        let colors = Coloring::new(self.loops.iter().map(|&l| usize::from(l)).collect());
        let c = canonical_labeling(&self.graph, &colors, budget)?;
        Ok((c.graph, c.colors.iter().map(|&x| x == 1).collect()))
    }

    pub fn is_isomorphic(&self, other: &LoopedGraph, budget: u64) -> Result<bool> {
        if self.order() != other.order() || self.graph.edge_count() != other.graph.edge_count() {
            return Ok(false);
        }
        Ok(self.canonical_key(budget)? == other.canonical_key(budget)?)
    }
}

impl Serialize for LoopedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LoopedGraph", 2)?;
        st.serialize_field("graph6", &emit_graph6(&self.graph))?;
        let loops: Vec<usize> = (0..self.order()).filter(|&v| self.loops[v]).collect();
        st.serialize_field("loops", &loops)?;
        st.end()
    }
}

/// Why two graphs were found coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoprimeReason {
    OrdersCoprime,
    ValenciesCoprime,
    NoCommonFactor,
}

/// Three-valued answer of the coprimality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CoprimalityAnswer {
    Coprime {
        reason: CoprimeReason,
    },
    NotCoprime {
        common_factor: LoopedGraph,
        gamma_cofactor: LoopedGraph,
        sigma_cofactor: LoopedGraph,
    },
    Unknown {
        bound: usize,
        reason: String,
    },
}

impl CoprimalityAnswer {
    pub fn is_coprime(&self) -> bool {
        matches!(self, CoprimalityAnswer::Coprime { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, CoprimalityAnswer::Unknown { .. })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Decides whether `gamma` and `sigma` are coprime, searching common factors
/// of order at most `bound`. `budget` bounds each factor search.
pub fn coprimality(gamma: &Graph, sigma: &Graph, bound: usize, budget: u64) -> Result<CoprimalityAnswer> {
    let (n1, n2) = (gamma.order(), sigma.order());
    let g = gcd(n1, n2);
    if g == 1 {
        return Ok(CoprimalityAnswer::Coprime {
            reason: CoprimeReason::OrdersCoprime,
        });
    }
    // For connected regular graphs every factor is connected and regular,
    // so a common factor has valency dividing both valencies; valency one
    // forces the factor to be K_2, which makes both graphs bipartite.
    if let (Some(k1), Some(k2)) = (gamma.valency(), sigma.valency()) {
        if gcd(k1, k2) == 1
            && gamma.is_connected()
            && sigma.is_connected()
            && (!gamma.is_bipartite() || !sigma.is_bipartite())
        {
            return Ok(CoprimalityAnswer::Coprime {
                reason: CoprimeReason::ValenciesCoprime,
            });
        }
    }

    // Enumerate factors of one graph and test each against the other. An
    // edgeless graph is divisible by everything of suitable order, so the
    // enumeration runs on a graph with edges whenever there is one.
    let swap = if gamma.edge_count() == 0 || sigma.edge_count() == 0 {
        gamma.edge_count() == 0 && sigma.edge_count() > 0
    } else {
        n2 < n1
    };
    let (src, other) = if swap { (sigma, gamma) } else { (gamma, sigma) };

    let mut truncated: Vec<String> = Vec::new();
    for d in (2..=g).filter(|d| g % d == 0) {
        if d > bound {
            truncated.push(format!("common factors of order {d} exceed the bound"));
            continue;
        }
        let factors = match factorizations(src, d, budget) {
            Ok(f) => f,
            Err(Error::BudgetExceeded { .. }) => {
                truncated.push(format!("factor search of order {d} exceeded the node budget"));
                continue;
            }
            Err(e) => return Err(e),
        };
        for (src_cofactor, delta) in factors {
            match cofactor_for(other, &delta, budget) {
                Ok(Some(other_cofactor)) => {
                    let (gamma_cofactor, sigma_cofactor) = if swap {
                        (other_cofactor, src_cofactor)
                    } else {
                        (src_cofactor, other_cofactor)
                    };
                    let witness = CoprimalityAnswer::NotCoprime {
                        common_factor: delta,
                        gamma_cofactor,
                        sigma_cofactor,
                    };
                    verify_witness(gamma, sigma, &witness, budget)?;
                    return Ok(witness);
                }
                Ok(None) => {}
                Err(Error::BudgetExceeded { .. }) => {
                    truncated.push(format!("cofactor search of order {d} exceeded the node budget"));
                }
                Err(e) => return Err(e),
            }
        }
    }
    if truncated.is_empty() {
        Ok(CoprimalityAnswer::Coprime {
            reason: CoprimeReason::NoCommonFactor,
        })
    } else {
        Ok(CoprimalityAnswer::Unknown {
            bound,
            reason: truncated.join("; "),
        })
    }
}

/// Checks a `NotCoprime` witness by canonical forms; other answers pass.
pub fn verify_witness(gamma: &Graph, sigma: &Graph, answer: &CoprimalityAnswer, budget: u64) -> Result<()> {
    if let CoprimalityAnswer::NotCoprime {
        common_factor,
        gamma_cofactor,
        sigma_cofactor,
    } = answer
    {
        let ok = common_factor.order() > 1
            && gamma_cofactor
                .product(common_factor)
                .is_isomorphic(&LoopedGraph::from_graph(gamma.clone()), budget)?
            && sigma_cofactor
                .product(common_factor)
                .is_isomorphic(&LoopedGraph::from_graph(sigma.clone()), budget)?;
        if !ok {
            return Err(Error::Invariant("common-factor witness does not reproduce the inputs".into()));
        }
    }
    Ok(())
}

/// All ways of writing `g` as `A × D` with `|D| = d`, up to isomorphism of `D`.
/// Returns `(A, D)` pairs. An edgeless `g` is `E × D` for every `D` of order
/// `d`; for it only the edgeless `D` is listed.
pub fn factorizations(g: &Graph, d: usize, budget: u64) -> Result<Vec<(LoopedGraph, LoopedGraph)>> {
    let n = g.order();
    if d == 0 || n % d != 0 {
        return Ok(Vec::new());
    }
    let mut search = GridSearch::new(g, n / d, d, None, budget);
    let mut out = Vec::new();
    let mut seen: BTreeSet<(Graph, Vec<bool>)> = BTreeSet::new();
    search.run(&mut |a, dm| {
        let delta = LoopedGraph::from_matrix(d, dm);
        let key = delta.canonical_key(budget)?;
        if seen.insert(key) {
            out.push((LoopedGraph::from_matrix(n / d, a), delta));
        }
        Ok(false)
    })?;
    Ok(out)
}

/// A looped `A` with `g ≅ A × delta`, if one exists.
pub fn cofactor_for(g: &Graph, delta: &LoopedGraph, budget: u64) -> Result<Option<LoopedGraph>> {
    let (n, d) = (g.order(), delta.order());
    if n % d != 0 {
        return Ok(None);
    }
    // 2|E(g)| equals the product of the closed-neighbourhood totals of the factors.
    let closed_total: usize = (0..d).map(|c| closed_degree(delta, c)).sum();
    if closed_total == 0 {
        return Ok((g.edge_count() == 0).then(|| LoopedGraph::from_graph(Graph::empty(n / d).expect("n/d >= 1"))));
    }
    if (2 * g.edge_count()) % closed_total != 0 {
        return Ok(None);
    }
    let dm: Vec<bool> = (0..d * d).map(|i| delta.adjacent(i / d, i % d)).collect();
    let mut search = GridSearch::new(g, n / d, d, Some(dm), budget);
    let mut found = None;
    search.run(&mut |a, _| {
        found = Some(LoopedGraph::from_matrix(n / d, a));
        Ok(true)
    })?;
    Ok(found)
}

fn closed_degree(g: &LoopedGraph, v: usize) -> usize {
    g.graph.degree(v) + usize::from(g.loops[v])
}

/// Backtracking placement of the vertices of `g` on an `a × d` grid such that
/// `g[p][q] = A[row p][row q] ∧ D[col p][col q]` for unknown looped matrices
/// `A`, `D` (or a fixed `D`). Entries are three-valued while searching;
/// entries never forced to one are zero in the result.
struct GridSearch<'a> {
    g: &'a Graph,
    a: usize,
    d: usize,
    fixed_d: bool,
    order: Vec<usize>,
    cell: Vec<Option<(usize, usize)>>,
    occupied: Vec<bool>,
    amat: Vec<Option<bool>>,
    dmat: Vec<Option<bool>>,
    rows_open: usize,
    cols_open: usize,
    nodes: u64,
    budget: u64,
}

type Sink<'s> = dyn FnMut(&[bool], &[bool]) -> Result<bool> + 's;

impl<'a> GridSearch<'a> {
    fn new(g: &'a Graph, a: usize, d: usize, fixed: Option<Vec<bool>>, budget: u64) -> Self {
        let n = g.order();
        // breadth-first order so that each new vertex meets placed neighbours
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut i = order.len();
            order.push(s);
            while i < order.len() {
                let x = order[i];
                for y in g.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        order.push(y);
                    }
                }
                i += 1;
            }
        }
        let fixed_d = fixed.is_some();
        let dmat = match fixed {
            Some(m) => m.into_iter().map(Some).collect(),
            None => vec![None; d * d],
        };
        GridSearch {
            g,
            a,
            d,
            fixed_d,
            order,
            cell: vec![None; n],
            occupied: vec![false; a * d],
            amat: vec![None; a * a],
            dmat,
            rows_open: 0,
            cols_open: 0,
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self, sink: &mut Sink<'_>) -> Result<()> {
        self.step(0, sink).map(|_| ())
    }

    /// Returns `Ok(true)` when the sink asked to stop.
    fn step(&mut self, k: usize, sink: &mut Sink<'_>) -> Result<bool> {
        if k == self.order.len() {
            let a: Vec<bool> = self.amat.iter().map(|x| x.unwrap_or(false)).collect();
            let d: Vec<bool> = self.dmat.iter().map(|x| x.unwrap_or(false)).collect();
            return sink(&a, &d);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let p = self.order[k];
        let row_limit = (self.rows_open + 1).min(self.a);
        let col_limit = if self.fixed_d {
            self.d
        } else {
            (self.cols_open + 1).min(self.d)
        };
        for r in 0..row_limit {
            for c in 0..col_limit {
                if self.occupied[r * self.d + c] {
                    continue;
                }
                let saved_a = self.amat.clone();
                let saved_d = self.dmat.clone();
                let (ro, co) = (self.rows_open, self.cols_open);
                self.cell[p] = Some((r, c));
                self.occupied[r * self.d + c] = true;
                self.rows_open = self.rows_open.max(r + 1);
                self.cols_open = self.cols_open.max(c + 1);
                let stop = if self.place(k) { self.step(k + 1, sink)? } else { false };
                self.cell[p] = None;
                self.occupied[r * self.d + c] = false;
                self.rows_open = ro;
                self.cols_open = co;
                self.amat = saved_a;
                self.dmat = saved_d;
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn set(m: &mut [Option<bool>], size: usize, i: usize, j: usize, value: bool) -> bool {
        match m[i * size + j] {
            Some(v) => v == value,
            None => {
                m[i * size + j] = Some(value);
                m[j * size + i] = Some(value);
                true
            }
        }
    }

    /// Applies the constraints between `order[k]` and every placed vertex.
    fn place(&mut self, k: usize) -> bool {
        let p = self.order[k];
        let (r, c) = self.cell[p].expect("placed");
        for &q in &self.order[..=k] {
            let (rq, cq) = self.cell[q].expect("placed");
            let want = p != q && self.g.has_edge(p, q);
            if want {
                if !Self::set(&mut self.amat, self.a, r, rq, true) || !Self::set(&mut self.dmat, self.d, c, cq, true) {
                    return false;
                }
            } else if self.dmat[c * self.d + cq] == Some(true) && !Self::set(&mut self.amat, self.a, r, rq, false) {
                return false;
            } else if self.amat[r * self.a + rq] == Some(true) && !Self::set(&mut self.dmat, self.d, c, cq, false) {
                return false;
            }
        }
        // forced ones may clash with earlier non-adjacent pairs
        for (i, &u) in self.order[..=k].iter().enumerate() {
            let (ru, cu) = self.cell[u].expect("placed");
            for &v in &self.order[..=i] {
                if u != v && self.g.has_edge(u, v) {
                    continue;
                }
                let (rv, cv) = self.cell[v].expect("placed");
                if self.amat[ru * self.a + rv] == Some(true) && self.dmat[cu * self.d + cv] == Some(true) {
                    return false;
                }
            }
        }
        true
    }
}
