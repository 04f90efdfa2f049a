//! Stability of graphs and graph pairs under the direct product.
//!
//! A pair `(Γ, Σ)` is stable when `Aut(Γ × Σ) ≅ Aut(Γ) × Aut(Σ)`. The natural
//! action of `Aut(Γ) × Aut(Σ)` on `Γ × Σ` is faithful, so it is always a
//! subgroup of `Aut(Γ × Σ)`, and the isomorphism holds exactly when the
//! orders agree. Stability is therefore decided by comparing exact orders.

pub mod coprime;
mod witness;

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{k2, Graph};
use crate::product::direct_product;
use crate::search::full_automorphism_group;
use crate::Limits;

pub use coprime::{coprimality, CoprimalityAnswer, CoprimeReason, LoopedGraph};
pub use witness::{
    extract_two_fold_from_sigma, find_sigma_automorphism, find_two_fold, lift_two_fold_to_sigma,
    two_fold_closure_ops, ClosureOps, SigmaAutomorphism, TwoFoldAutomorphism,
};

/// `(|Aut Γ|, |Aut Σ|, |Aut(Γ × Σ)|)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderTriple {
    pub gamma: BigUint,
    pub sigma: BigUint,
    pub product: BigUint,
}

impl OrderTriple {
    pub fn is_stable(&self) -> bool {
        self.product == &self.gamma * &self.sigma
    }
}

impl Serialize for OrderTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrderTriple", 3)?;
        st.serialize_field("gamma", &self.gamma.to_string())?;
        st.serialize_field("sigma", &self.sigma.to_string())?;
        st.serialize_field("product", &self.product.to_string())?;
        st.end()
    }
}

/// Compares `|Aut(Γ × Σ)|` with `|Aut Γ|·|Aut Σ|`.
pub fn is_stable_pair(gamma: &Graph, sigma: &Graph, limits: &Limits) -> Result<(bool, OrderTriple)> {
    let product = direct_product(gamma, sigma, limits.vertex_cap)?;
    let orders = OrderTriple {
        gamma: full_automorphism_group(gamma, limits.node_budget)?.order().clone(),
        sigma: full_automorphism_group(sigma, limits.node_budget)?.order().clone(),
        product: full_automorphism_group(product.graph(), limits.node_budget)?.order().clone(),
    };
    if orders.product < &orders.gamma * &orders.sigma {
        return Err(Error::Invariant(format!(
            "|Aut(Γ×Σ)| = {} is smaller than |Aut Γ|·|Aut Σ| = {}",
            orders.product,
            &orders.gamma * &orders.sigma
        )));
    }
    Ok((orders.is_stable(), orders))
}

/// Stability of `(Γ, K_2)`.
pub fn is_stable_graph(gamma: &Graph, limits: &Limits) -> Result<(bool, OrderTriple)> {
    is_stable_pair(gamma, &k2(), limits)
}

/// The kind of a stability verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Stable,
    TriviallyUnstable,
    NontriviallyUnstable,
    /// Unstable, every other hypothesis holds, and coprimality is undecided within the bound.
    UnstableUnclassified,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Stable => "stable",
            VerdictKind::TriviallyUnstable => "trivially_unstable",
            VerdictKind::NontriviallyUnstable => "nontrivially_unstable",
            VerdictKind::UnstableUnclassified => "unstable_unclassified",
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failed hypothesis of nontrivial instability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    GammaDisconnected,
    SigmaDisconnected,
    GammaRThick,
    SigmaRThick,
    NotCoprime,
    BothBipartite,
}

/// Outcome of classifying a pair, with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub kind: VerdictKind,
    pub orders: OrderTriple,
    /// Nonempty exactly for trivially unstable pairs.
    pub violations: Vec<Violation>,
    /// Computed for unstable pairs only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coprimality: Option<CoprimalityAnswer>,
    /// A non-diagonal Σ-automorphism, looked for when the pair is nontrivially unstable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SigmaAutomorphism>,
}

/// Stable, trivially unstable or nontrivially unstable.
pub fn classify_pair(gamma: &Graph, sigma: &Graph, limits: &Limits) -> Result<StabilityVerdict> {
    let (stable, orders) = is_stable_pair(gamma, sigma, limits)?;
    if stable {
        return Ok(StabilityVerdict {
            kind: VerdictKind::Stable,
            orders,
            violations: Vec::new(),
            coprimality: None,
            witness: None,
        });
    }
    let mut violations = Vec::new();
    if !gamma.is_connected() {
        violations.push(Violation::GammaDisconnected);
    }
    if !sigma.is_connected() {
        violations.push(Violation::SigmaDisconnected);
    }
    if !gamma.is_r_thin() {
        violations.push(Violation::GammaRThick);
    }
    if !sigma.is_r_thin() {
        violations.push(Violation::SigmaRThick);
    }
    let cop = coprimality(gamma, sigma, limits.coprime_bound, limits.node_budget)?;
    if matches!(cop, CoprimalityAnswer::NotCoprime { .. }) {
        violations.push(Violation::NotCoprime);
    }
    if gamma.is_bipartite() && sigma.is_bipartite() {
        violations.push(Violation::BothBipartite);
    }
    let (kind, witness) = if !violations.is_empty() {
        (VerdictKind::TriviallyUnstable, None)
    } else if cop.is_unknown() {
        (VerdictKind::UnstableUnclassified, None)
    } else {
        let witness = find_sigma_automorphism(gamma, sigma, limits)?;
        (VerdictKind::NontriviallyUnstable, witness)
    };
    Ok(StabilityVerdict {
        kind,
        orders,
        violations,
        coprimality: Some(cop),
        witness,
    })
}

/// `classify_pair(Γ, K_2)`.
pub fn classify_graph(gamma: &Graph, limits: &Limits) -> Result<StabilityVerdict> {
    classify_pair(gamma, &k2(), limits)
}
