//! Finite simple undirected graphs stored as adjacency bit rows.
//!
//! Vertices are the dense integers `0..n`. Every constructor checks the
//! representation invariants (symmetric rows, empty diagonal, `n >= 1`).

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};

/// A finite simple undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    words: usize,
    // row v occupies bits[v * words .. (v + 1) * words]
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidArgument("a graph needs at least one vertex".into()));
        }
        let words = bits::words_for(n);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {{{u}, {v}}} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        debug_assert!(g.is_valid());
        Ok(g)
    }

    /// Builds a graph from a symmetric boolean matrix with an empty diagonal.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Graph> {
        let n = matrix.len();
        let mut edges = Vec::new();
        for (u, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument("adjacency matrix is not square".into()));
            }
            for (v, &set) in row.iter().enumerate() {
                if set != matrix[v][u] {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency matrix is not symmetric at ({u}, {v})"
                    )));
                }
                if set && u <= v {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let w = self.words;
        bits::set(&mut self.bits[u * w..(u + 1) * w], v);
        bits::set(&mut self.bits[v * w..(v + 1) * w], u);
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::get(self.row(u), v)
    }

    /// The neighbourhood of `v` as a bit row.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.has_edge(u, v)).collect())
            .collect()
    }

    /// Checks the representation invariants.
    pub fn is_valid(&self) -> bool {
        self.n >= 1
            && (0..self.n).all(|u| {
                !self.has_edge(u, u) && self.neighbors(u).all(|v| v < self.n && self.has_edge(v, u))
            })
    }

    /// The isomorphic copy in which vertex `v` is renamed `image[v]`.
    pub fn relabel(&self, image: &[usize]) -> Graph {
        assert_eq!(image.len(), self.n, "relabelling has the wrong length");
        let mut g = Graph::empty(self.n).expect("order is positive");
        for (u, v) in self.edges() {
            g.insert_edge(image[u], image[v]);
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n + other.n, edges).expect("union of valid graphs")
    }

    /// `copies` disjoint copies of this graph.
    pub fn copies(&self, copies: usize) -> Result<Graph> {
        if copies == 0 {
            return Err(Error::InvalidArgument("need at least one copy".into()));
        }
        let mut g = self.clone();
        for _ in 1..copies {
            g = g.disjoint_union(self);
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let edges = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::from_edges(n, edges).expect("complement of a valid graph")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut parts = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut part = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        part.push(v);
                        queue.push_back(v);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// A proper two-colouring if the graph has no odd cycle. Each component's
    /// smallest vertex is placed on side A.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side: Vec<Option<Side>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(Side::A);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("queued vertices are coloured");
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(su.other());
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Bipartition {
            side: side.into_iter().map(|s| s.expect("every vertex visited")).collect(),
        })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// The common degree, if every vertex has the same degree.
    pub fn valency(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn is_regular(&self) -> bool {
        self.valency().is_some()
    }

    /// Two distinct vertices `u < v` with identical neighbourhoods, if any.
    pub fn thick_witness(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| self.row(a).cmp(self.row(b)).then(a.cmp(&b)));
        order
            .windows(2)
            .find(|w| self.row(w[0]) == self.row(w[1]))
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    /// True when no two vertices share a neighbourhood.
    pub fn is_r_thin(&self) -> bool {
        self.thick_witness().is_none()
    }

    /// True when every vertex lies on some odd cycle, i.e. every component is
    /// non-bipartite.
    pub fn has_odd_cycle_through_every_vertex(&self) -> bool {
        self.components().iter().all(|part| !self.induced(part).is_bipartite())
    }

    /// The subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len().max(1)).expect("positive order");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&crate::io::emit_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        crate::io::parse_graph6(&text).map_err(serde::de::Error::custom)
    }
}

/// One side of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A proper two-colouring of a graph's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    /// Validates `side` against `g`: every edge must join an A-vertex to a B-vertex.
    pub fn new(g: &Graph, side: Vec<Side>) -> Result<Bipartition> {
        if side.len() != g.order() {
            return Err(Error::InvalidArgument(format!(
                "bipartition has {} labels for {} vertices",
                side.len(),
                g.order()
            )));
        }
        if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| side[u] == side[v]) {
            return Err(Error::InvalidArgument(format!(
                "edge {{{u}, {v}}} lies inside one side"
            )));
        }
        Ok(Bipartition { side })
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn part(&self, which: Side) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v] == which).collect()
    }

    pub fn both_nonempty(&self) -> bool {
        self.side.contains(&Side::A) && self.side.contains(&Side::B)
    }
}

/// The complete graph `K_m`, `m >= 1`.
pub fn complete_graph(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidArgument("complete_graph needs m >= 1".into()));
    }
    Graph::from_edges(m, (0..m).flat_map(|u| ((u + 1)..m).map(move |v| (u, v))))
}

/// The cycle `C_m` with edges `{i, i+1 mod m}`, `m >= 3`.
pub fn cycle_graph(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::InvalidArgument("cycle_graph needs m >= 3".into()));
    }
    Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// `K_2`.
pub fn k2() -> Graph {
    complete_graph(2).expect("K_2")
}

/// The path on `m >= 1` vertices.
pub fn path_graph(m: usize) -> Result<Graph> {
    Graph::from_edges(m, (1..m).map(|i| (i - 1, i)))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// The circulant graph on `Z_n` with the given connection set (closed under negation implicitly).
pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
    let mut edges = Vec::new();
    for &j in jumps {
        if j == 0 || j % n == 0 {
            return Err(Error::InvalidArgument(format!("jump {j} is zero modulo {n}")));
        }
        edges.extend((0..n).map(|i| (i, (i + j) % n)));
    }
    Graph::from_edges(n, edges)
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("Petersen graph")
}

/// The 3-cube `Q_3`.
pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v);
    Graph::from_edges(8, edges).expect("cube")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constructors() {
        assert_eq!(complete_graph(3).unwrap(), cycle_graph(3).unwrap());
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4.valency(), Some(2));
        assert_eq!(k2(), complete_graph(2).unwrap());
        assert!(cycle_graph(2).is_err());
        assert!(complete_graph(0).is_err());
        assert_eq!(petersen().valency(), Some(3));
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(cube().valency(), Some(3));
        assert!(cube().is_bipartite());
    }

    #[test]
    fn edge_list_constructor_rejects_loops_and_ranges() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let g = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn connectivity() {
        assert!(cycle_graph(5).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        let two = cycle_graph(4).unwrap().copies(2).unwrap();
        assert_eq!(two.components().len(), 2);
        assert!(!Graph::empty(2).unwrap().is_connected());
    }

    #[test]
    fn bipartitions() {
        let b = cycle_graph(6).unwrap().bipartition().unwrap();
        assert_eq!(b.part(Side::A).len(), 3);
        assert_eq!(b.part(Side::B).len(), 3);
        assert!(cycle_graph(5).unwrap().bipartition().is_none());
        let b = k2().bipartition().unwrap();
        assert_eq!(b.part(Side::A), vec![0]);
        assert_eq!(b.part(Side::B), vec![1]);
        // edgeless graphs are bipartite by the no-odd-cycle convention
        assert!(Graph::empty(3).unwrap().is_bipartite());
        assert!(Bipartition::new(&k2(), vec![Side::A, Side::A]).is_err());
    }

    #[test]
    fn valency_and_regularity() {
        assert_eq!(complete_graph(4).unwrap().valency(), Some(3));
        assert_eq!(cycle_graph(7).unwrap().valency(), Some(2));
        assert_eq!(path_graph(3).unwrap().valency(), None);
        assert!(!path_graph(3).unwrap().is_regular());
    }

    #[test]
    fn r_thinness() {
        let c4 = cycle_graph(4).unwrap();
        let (u, v) = c4.thick_witness().unwrap();
        assert_eq!(c4.row(u), c4.row(v));
        assert_eq!((v + 4 - u) % 4, 2, "witness must be an antipodal pair");
        assert!(cycle_graph(5).unwrap().is_r_thin());
        for m in 2..8 {
            assert!(complete_graph(m).unwrap().is_r_thin());
        }
    }

    #[test]
    fn odd_cycles_through_every_vertex() {
        assert!(cycle_graph(5).unwrap().has_odd_cycle_through_every_vertex());
        assert!(!cycle_graph(6).unwrap().has_odd_cycle_through_every_vertex());
        let mixed = cycle_graph(3).unwrap().disjoint_union(&cycle_graph(4).unwrap());
        assert!(!mixed.has_odd_cycle_through_every_vertex());
    }

    #[test]
    fn relabel_and_complement() {
        let p = path_graph(3).unwrap();
        let q = p.relabel(&[1, 0, 2]);
        assert_eq!(q.degrees(), vec![2, 1, 1]);
        assert_eq!(cycle_graph(5).unwrap().complement().valency(), Some(2));
        assert!(Graph::empty(4).unwrap().complement() == complete_graph(4).unwrap());
    }
}
