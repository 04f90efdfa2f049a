//! Two-fold automorphisms and Σ-automorphisms: types, searches, and the
//! constructions relating them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, Side};
use crate::perm::VertexPermutation;
use crate::product::{canonical_double_cover, direct_product, ProductGraph};
use crate::refine::Coloring;
use crate::search::{automorphism_group, full_automorphism_group};
use crate::Limits;

/// A pair `(α, β)` of permutations of V(Γ) with `{u,v} ∈ E ⟺ {u^α, v^β} ∈ E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwoFoldAutomorphism {
    alpha: VertexPermutation,
    beta: VertexPermutation,
}

fn two_fold_holds(g: &Graph, alpha: &VertexPermutation, beta: &VertexPermutation) -> bool {
    let n = g.order();
    alpha.degree() == n
        && beta.degree() == n
        && (0..n).all(|u| (0..n).all(|v| g.has_edge(u, v) == g.has_edge(alpha.apply(u), beta.apply(v))))
}

impl TwoFoldAutomorphism {
    /// Checks the defining condition on `g`.
    pub fn new(g: &Graph, alpha: VertexPermutation, beta: VertexPermutation) -> Result<Self> {
        if !two_fold_holds(g, &alpha, &beta) {
            return Err(Error::InvalidArgument(format!(
                "({alpha}) and ({beta}) do not form a two-fold automorphism"
            )));
        }
        Ok(TwoFoldAutomorphism { alpha, beta })
    }

    /// The pair `(γ, γ)` for an automorphism `γ`.
    pub fn diagonal(g: &Graph, gamma: VertexPermutation) -> Result<Self> {
        TwoFoldAutomorphism::new(g, gamma.clone(), gamma)
    }

    pub fn alpha(&self) -> &VertexPermutation {
        &self.alpha
    }

    pub fn beta(&self) -> &VertexPermutation {
        &self.beta
    }

    pub fn is_nontrivial(&self) -> bool {
        self.alpha != self.beta
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        two_fold_holds(g, &self.alpha, &self.beta)
    }
}

/// The derived two-fold automorphisms of a pair of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureOps {
    /// `(β, α)`
    pub swap: TwoFoldAutomorphism,
    /// `(α⁻¹, β⁻¹)`
    pub inverse: TwoFoldAutomorphism,
    /// `(αγ, βδ)` for the second pair `(γ, δ)`
    pub composition: TwoFoldAutomorphism,
}

/// Swap, inverse (of the first pair) and composition, each re-verified on `g`.
pub fn two_fold_closure_ops(g: &Graph, t1: &TwoFoldAutomorphism, t2: &TwoFoldAutomorphism) -> Result<ClosureOps> {
    if !t1.is_valid_for(g) || !t2.is_valid_for(g) {
        return Err(Error::Precondition("both pairs must be two-fold automorphisms of the graph".into()));
    }
    let derived = |a: VertexPermutation, b: VertexPermutation| {
        TwoFoldAutomorphism::new(g, a, b).map_err(|e| Error::Invariant(format!("closure failed: {e}")))
    };
    Ok(ClosureOps {
        swap: derived(t1.beta.clone(), t1.alpha.clone())?,
        inverse: derived(t1.alpha.inverse(), t1.beta.inverse())?,
        composition: derived(t1.alpha.then(&t2.alpha), t1.beta.then(&t2.beta))?,
    })
}

/// A tuple `(α_i)` indexed by V(Σ) such that every edge `{i, j}` of Σ gives a
/// two-fold automorphism `(α_i, α_j)` of Γ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SigmaAutomorphism {
    perms: Vec<VertexPermutation>,
}

fn sigma_holds(gamma: &Graph, sigma: &Graph, perms: &[VertexPermutation]) -> bool {
    perms.len() == sigma.order()
        && perms.iter().all(|p| p.degree() == gamma.order())
        && sigma
            .edges()
            .iter()
            .all(|&(i, j)| two_fold_holds(gamma, &perms[i], &perms[j]))
}

impl SigmaAutomorphism {
    pub fn new(gamma: &Graph, sigma: &Graph, perms: Vec<VertexPermutation>) -> Result<Self> {
        if !sigma_holds(gamma, sigma, &perms) {
            return Err(Error::InvalidArgument("the tuple violates the edge condition along Σ".into()));
        }
        Ok(SigmaAutomorphism { perms })
    }

    pub fn perms(&self) -> &[VertexPermutation] {
        &self.perms
    }

    pub fn is_valid_for(&self, gamma: &Graph, sigma: &Graph) -> bool {
        sigma_holds(gamma, sigma, &self.perms)
    }

    /// All entries equal.
    pub fn is_diagonal(&self) -> bool {
        self.perms.windows(2).all(|w| w[0] == w[1])
    }

    /// Reads `(α_i)` off an automorphism of `Γ × Σ` that maps every fiber
    /// `V(Γ) × {i}` to itself.
    pub fn from_product_automorphism(
        gamma: &Graph,
        sigma: &Graph,
        product: &ProductGraph,
        p: &VertexPermutation,
    ) -> Result<Self> {
        let (n1, n2) = (product.first_order(), product.second_order());
        if n1 != gamma.order() || n2 != sigma.order() || p.degree() != n1 * n2 {
            return Err(Error::InvalidArgument("permutation does not act on this product".into()));
        }
        let mut perms = Vec::with_capacity(n2);
        for i in 0..n2 {
            let mut image = Vec::with_capacity(n1);
            for u in 0..n1 {
                let (v, j) = product.coords(p.apply(product.index(u, i)));
                if j != i {
                    return Err(Error::Precondition(format!(
                        "permutation moves ({u},{i}) to another fiber"
                    )));
                }
                image.push(v);
            }
            perms.push(VertexPermutation::new(image)?);
        }
        SigmaAutomorphism::new(gamma, sigma, perms)
    }

    /// The fiber-preserving permutation `(u, i) ↦ (u^{α_i}, i)` of the product.
    pub fn to_product_permutation(&self) -> VertexPermutation {
        let n2 = self.perms.len();
        let n1 = self.perms.first().map_or(0, VertexPermutation::degree);
        let mut image = vec![0; n1 * n2];
        for (i, p) in self.perms.iter().enumerate() {
            for u in 0..n1 {
                image[u * n2 + i] = p.apply(u) * n2 + i;
            }
        }
        VertexPermutation::from_vec_unchecked(image)
    }
}

/// A nontrivial two-fold automorphism of `gamma`, if there is one.
///
/// The layers of the canonical double cover are coloured apart; every
/// layer-preserving automorphism `(u,0) ↦ (u^α,0), (u,1) ↦ (u^β,1)` is a
/// two-fold automorphism and conversely. The first generator of that group
/// with `α ≠ β` is returned; when all generators are diagonal the whole group
/// is, and the group order then equals `|Aut Γ|`.
pub fn find_two_fold(gamma: &Graph, limits: &Limits) -> Result<Option<TwoFoldAutomorphism>> {
    let cover = canonical_double_cover(gamma, limits.vertex_cap)?;
    let layers = Coloring::new((0..cover.graph().order()).map(|i| i % 2).collect());
    let group = automorphism_group(cover.graph(), &layers, limits.node_budget)?;
    let mut witness = None;
    for gen in group.strong_generators() {
        let sa = SigmaAutomorphism::from_product_automorphism(gamma, &crate::graph::k2(), &cover, gen)?;
        if sa.to_product_permutation() != *gen {
            return Err(Error::Invariant("layer decomposition does not round-trip".into()));
        }
        if !sa.is_diagonal() {
            witness = Some(TwoFoldAutomorphism::new(gamma, sa.perms[0].clone(), sa.perms[1].clone())?);
            break;
        }
    }
    let aut = full_automorphism_group(gamma, limits.node_budget)?;
    if (group.order() > aut.order()) != witness.is_some() {
        return Err(Error::Invariant(format!(
            "layer-preserving group of order {} against |Aut| = {} disagrees with the witness search",
            group.order(),
            aut.order()
        )));
    }
    Ok(witness)
}

/// A non-diagonal Σ-automorphism of `gamma`, if there is one.
///
/// Each fiber of `Γ × Σ` gets its own colour; colour-preserving automorphisms
/// are exactly the Σ-automorphisms. Entries at Σ-vertices without edges are
/// unconstrained and are set equal to the entry of the first Σ-vertex that
/// has an edge (or the identity if Σ has no edges), so diagonality is decided
/// on the constrained entries only.
pub fn find_sigma_automorphism(gamma: &Graph, sigma: &Graph, limits: &Limits) -> Result<Option<SigmaAutomorphism>> {
    let product = direct_product(gamma, sigma, limits.vertex_cap)?;
    let n2 = sigma.order();
    let fibers = Coloring::new((0..product.graph().order()).map(|i| i % n2).collect());
    let group = automorphism_group(product.graph(), &fibers, limits.node_budget)?;
    let reference = (0..n2).find(|&i| sigma.degree(i) > 0);
    for gen in group.strong_generators() {
        let raw = SigmaAutomorphism::from_product_automorphism(gamma, sigma, &product, gen)?;
        if raw.to_product_permutation() != *gen {
            return Err(Error::Invariant("fiber decomposition does not round-trip".into()));
        }
        let fill = match reference {
            Some(r) => raw.perms[r].clone(),
            None => VertexPermutation::identity(gamma.order()),
        };
        let perms: Vec<VertexPermutation> = (0..n2)
            .map(|i| if sigma.degree(i) > 0 { raw.perms[i].clone() } else { fill.clone() })
            .collect();
        let sa = SigmaAutomorphism::new(gamma, sigma, perms)
            .map_err(|e| Error::Invariant(format!("decomposed witness failed re-verification: {e}")))?;
        if !sa.is_diagonal() {
            return Ok(Some(sa));
        }
    }
    Ok(None)
}

fn check_bipartition(sigma: &Graph, bip: &Bipartition) -> Result<()> {
    if bip.sides().len() != sigma.order() {
        return Err(Error::InvalidArgument("bipartition has the wrong length".into()));
    }
    if sigma.edges().iter().any(|&(i, j)| bip.side(i) == bip.side(j)) {
        return Err(Error::InvalidArgument("an edge of Σ lies inside one side".into()));
    }
    if !bip.both_nonempty() {
        return Err(Error::InvalidArgument("both sides of the bipartition must be nonempty".into()));
    }
    Ok(())
}

/// `α_i = α` on side A and `α_i = β` on side B.
pub fn lift_two_fold_to_sigma(
    gamma: &Graph,
    sigma: &Graph,
    tfa: &TwoFoldAutomorphism,
    bip: &Bipartition,
) -> Result<SigmaAutomorphism> {
    check_bipartition(sigma, bip)?;
    if !tfa.is_valid_for(gamma) {
        return Err(Error::Precondition("not a two-fold automorphism of Γ".into()));
    }
    let perms = bip
        .sides()
        .iter()
        .map(|s| match s {
            Side::A => tfa.alpha.clone(),
            Side::B => tfa.beta.clone(),
        })
        .collect();
    SigmaAutomorphism::new(gamma, sigma, perms).map_err(|e| Error::Invariant(format!("lift failed: {e}")))
}

/// `(α_i, α_j)` for an edge `{i, j}` of Σ with `α_i ≠ α_j`.
pub fn extract_two_fold_from_sigma(
    gamma: &Graph,
    sigma: &Graph,
    sa: &SigmaAutomorphism,
    i: usize,
    j: usize,
) -> Result<TwoFoldAutomorphism> {
    if i >= sigma.order() || j >= sigma.order() || !sigma.has_edge(i, j) {
        return Err(Error::Precondition(format!("{{{i}, {j}}} is not an edge of Σ")));
    }
    if sa.perms[i] == sa.perms[j] {
        return Err(Error::Precondition(format!("entries {i} and {j} coincide")));
    }
    TwoFoldAutomorphism::new(gamma, sa.perms[i].clone(), sa.perms[j].clone())
        .map_err(|e| Error::Invariant(format!("extracted pair failed re-verification: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, k2, petersen};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn square_has_a_two_fold() {
        let c4 = cycle_graph(4).unwrap();
        let t = find_two_fold(&c4, &limits()).unwrap().expect("C_4 is unstable");
        assert!(t.is_nontrivial() && t.is_valid_for(&c4));
        // vertices 0 and 2 have the same neighbours
        let swap = VertexPermutation::transposition(4, 0, 2);
        assert!(TwoFoldAutomorphism::new(&c4, VertexPermutation::identity(4), swap).is_ok());
    }

    #[test]
    fn pentagon_and_petersen_have_none() {
        assert!(find_two_fold(&cycle_graph(5).unwrap(), &limits()).unwrap().is_none());
        assert!(find_two_fold(&petersen(), &limits()).unwrap().is_none());
    }

    #[test]
    fn sigma_search() {
        let c5 = cycle_graph(5).unwrap();
        let c6 = cycle_graph(6).unwrap();
        assert!(find_sigma_automorphism(&c5, &c6, &limits()).unwrap().is_none());
        let c4 = cycle_graph(4).unwrap();
        let sa = find_sigma_automorphism(&c4, &k2(), &limits()).unwrap().unwrap();
        assert!(sa.is_valid_for(&c4, &k2()) && !sa.is_diagonal());
    }

    #[test]
    fn isolated_sigma_vertices_copy_the_reference() {
        let k3 = complete_graph(3).unwrap();
        let sigma = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(find_sigma_automorphism(&k3, &sigma, &limits()).unwrap().is_none());
        assert!(find_sigma_automorphism(&k3, &Graph::empty(2).unwrap(), &limits()).unwrap().is_none());
    }

    #[test]
    fn lift_and_extract_round_trip() {
        let c4 = cycle_graph(4).unwrap();
        let c6 = cycle_graph(6).unwrap();
        let t = find_two_fold(&c4, &limits()).unwrap().unwrap();
        let bip = c6.bipartition().unwrap();
        let sa = lift_two_fold_to_sigma(&c4, &c6, &t, &bip).unwrap();
        assert!(!sa.is_diagonal());
        let back = extract_two_fold_from_sigma(&c4, &c6, &sa, 0, 1).unwrap();
        assert_eq!(back, t);
        assert!(extract_two_fold_from_sigma(&c4, &c6, &sa, 0, 2).is_err());
        let id = VertexPermutation::identity(4);
        let trivial = TwoFoldAutomorphism::diagonal(&c4, id.clone()).unwrap();
        let diag = lift_two_fold_to_sigma(&c4, &c6, &trivial, &bip).unwrap();
        assert!(diag.is_diagonal());
        assert!(extract_two_fold_from_sigma(&c4, &c6, &diag, 0, 1).is_err());
    }

    #[test]
    fn lift_rejects_bad_bipartitions() {
        let c4 = cycle_graph(4).unwrap();
        let c6 = cycle_graph(6).unwrap();
        let t = find_two_fold(&c4, &limits()).unwrap().unwrap();
        let all_a = Bipartition::new(&Graph::empty(6).unwrap(), vec![Side::A; 6]).unwrap();
        assert!(lift_two_fold_to_sigma(&c4, &c6, &t, &all_a).is_err());
    }

    #[test]
    fn closure() {
        let c4 = cycle_graph(4).unwrap();
        let t = find_two_fold(&c4, &limits()).unwrap().unwrap();
        let one = TwoFoldAutomorphism::diagonal(&c4, VertexPermutation::identity(4)).unwrap();
        let ops = two_fold_closure_ops(&c4, &t, &one).unwrap();
        assert_eq!(ops.composition, t);
        let again = two_fold_closure_ops(&c4, &ops.swap, &one).unwrap();
        assert_eq!(again.swap, t);
        let undo = two_fold_closure_ops(&c4, &ops.inverse, &t).unwrap();
        assert!(undo.composition.alpha().is_identity() && undo.composition.beta().is_identity());
    }

    #[test]
    fn product_round_trip() {
        let c4 = cycle_graph(4).unwrap();
        let k3 = complete_graph(3).unwrap();
        let p = direct_product(&c4, &k3, 4096).unwrap();
        let r = VertexPermutation::new(vec![1, 2, 3, 0]).unwrap();
        let sa = SigmaAutomorphism::new(&c4, &k3, vec![r.clone(), r.clone(), r]).unwrap();
        let perm = sa.to_product_permutation();
        assert!(perm.is_automorphism_of(p.graph()));
        assert_eq!(SigmaAutomorphism::from_product_automorphism(&c4, &k3, &p, &perm).unwrap(), sa);
    }
}
