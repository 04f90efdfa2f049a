//! Direct products and canonical double covers.
//!
//! The vertex `(u, x)` of `Γ × Σ` is stored at index `u * n2 + x`, where `n2`
//! is the order of the second factor. Witnesses and reports refer to product
//! vertices by their coordinates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{k2, Graph};

/// Textual form of the fixed product indexing, recorded in sidecar files.
pub const INDEXING: &str = "(u,x) -> u*n2 + x";

/// A direct product together with the orders of its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    graph: Graph,
    n1: usize,
    n2: usize,
}

impl ProductGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn first_order(&self) -> usize {
        self.n1
    }

    pub fn second_order(&self) -> usize {
        self.n2
    }

    #[inline]
    pub fn index(&self, u: usize, x: usize) -> usize {
        debug_assert!(u < self.n1 && x < self.n2);
        u * self.n2 + x
    }

    #[inline]
    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index / self.n2, index % self.n2)
    }

    /// The vertices `V(Γ) × {i}`, in increasing order.
    pub fn fiber(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.n2 {
            return Err(Error::InvalidArgument(format!(
                "fiber index {i} is outside 0..{}",
                self.n2
            )));
        }
        Ok((0..self.n1).map(|u| self.index(u, i)).collect())
    }

    /// Sidecar metadata describing the indexing.
    pub fn sidecar(&self) -> ProductSidecar {
        ProductSidecar {
            n1: self.n1,
            n2: self.n2,
            indexing: INDEXING.to_string(),
        }
    }
}

/// JSON sidecar written next to an emitted product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductSidecar {
    pub n1: usize,
    pub n2: usize,
    pub indexing: String,
}

/// `Γ × Σ`: `(u,x) ~ (v,y)` iff `u ~ v` in Γ and `x ~ y` in Σ.
pub fn direct_product(gamma: &Graph, sigma: &Graph, vertex_cap: usize) -> Result<ProductGraph> {
    let (n1, n2) = (gamma.order(), sigma.order());
    let requested = n1
        .checked_mul(n2)
        .ok_or(Error::VertexCap { requested: usize::MAX, cap: vertex_cap })?;
    if requested > vertex_cap {
        return Err(Error::VertexCap { requested, cap: vertex_cap });
    }
    let mut graph = Graph::empty(requested)?;
    let sigma_edges = sigma.edges();
    for (u, v) in gamma.edges() {
        for &(x, y) in &sigma_edges {
            graph.insert_edge(u * n2 + x, v * n2 + y);
            graph.insert_edge(u * n2 + y, v * n2 + x);
        }
    }
    debug_assert!(graph.is_valid());
    Ok(ProductGraph { graph, n1, n2 })
}

/// `Γ × K_2`.
pub fn canonical_double_cover(g: &Graph, vertex_cap: usize) -> Result<ProductGraph> {
    direct_product(g, &k2(), vertex_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, petersen};

    const CAP: usize = crate::config::DEFAULT_VERTEX_CAP;

    #[test]
    fn k2_times_k2_is_two_edges() {
        let p = direct_product(&k2(), &k2(), CAP).unwrap();
        assert_eq!(p.graph().order(), 4);
        assert_eq!(p.graph().edge_count(), 2);
        assert_eq!(p.graph().components().len(), 2);
    }

    #[test]
    fn triangle_double_cover_is_a_hexagon() {
        let p = canonical_double_cover(&complete_graph(3).unwrap(), CAP).unwrap();
        let g = p.graph();
        assert_eq!(g.order(), 6);
        assert_eq!(g.valency(), Some(2));
        assert!(g.is_connected());
    }

    #[test]
    fn square_double_cover_splits() {
        let p = canonical_double_cover(&cycle_graph(4).unwrap(), CAP).unwrap();
        let comps = p.graph().components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 4));
        assert_eq!(p.graph().valency(), Some(2));
    }

    #[test]
    fn petersen_double_cover() {
        let p = canonical_double_cover(&petersen(), CAP).unwrap();
        let g = p.graph();
        assert_eq!(g.order(), 20);
        assert_eq!(g.valency(), Some(3));
        assert!(g.is_connected());
        assert!(g.is_bipartite());
    }

    #[test]
    fn fibers() {
        let p = canonical_double_cover(&complete_graph(3).unwrap(), CAP).unwrap();
        assert_eq!(p.fiber(0).unwrap(), vec![0, 2, 4]);
        assert_eq!(p.fiber(1).unwrap(), vec![1, 3, 5]);
        assert!(p.fiber(2).is_err());
        assert_eq!(p.coords(5), (2, 1));
    }

    #[test]
    fn cap_is_enforced() {
        let c = cycle_graph(10).unwrap();
        match direct_product(&c, &c, 99) {
            Err(Error::VertexCap { requested, cap }) => assert_eq!((requested, cap), (100, 99)),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn edge_count_and_degree_laws() {
        let g = crate::graph::path_graph(4).unwrap();
        let s = complete_graph(4).unwrap();
        let p = direct_product(&g, &s, CAP).unwrap();
        assert_eq!(p.graph().edge_count(), 2 * g.edge_count() * s.edge_count());
        for u in 0..4 {
            for x in 0..4 {
                assert_eq!(p.graph().degree(p.index(u, x)), g.degree(u) * s.degree(x));
            }
        }
    }
}
