//! Checks of the stability theorems on individual instances. A check whose
//! hypotheses fail is skipped, never failed.

use serde::Serialize;

use crate::error::Result;
use crate::harness::enumerate::{all_regular_graphs, vertex_transitive_graphs};
use crate::graph::{complete_graph, cycle_graph, Graph};
use crate::search::{full_automorphism_group, is_vertex_transitive};
use crate::stability::{classify_graph, classify_pair, StabilityVerdict, VerdictKind};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

/// Result of one check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub outcome: Outcome,
    pub details: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<StabilityVerdict>,
}

impl CheckReport {
    fn skipped(check: &str, why: impl Into<String>) -> CheckReport {
        CheckReport {
            check: check.into(),
            outcome: Outcome::Skipped,
            details: why.into(),
            verdicts: Vec::new(),
        }
    }

    fn decided(check: &str, pass: bool, details: String, verdicts: Vec<StabilityVerdict>) -> CheckReport {
        CheckReport {
            check: check.into(),
            outcome: if pass { Outcome::Pass } else { Outcome::Fail },
            details,
            verdicts,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Both regular with coprime valencies.
fn coprime_valencies(gamma: &Graph, sigma: &Graph) -> Option<String> {
    match (gamma.valency(), sigma.valency()) {
        (Some(a), Some(b)) if gcd(a, b) == 1 => None,
        (Some(a), Some(b)) => Some(format!("valencies {a} and {b} are not coprime")),
        (None, _) => Some("Γ is not regular".into()),
        (_, None) => Some("Σ is not regular".into()),
    }
}

const THEOREM_A: &str = "theorem_1a";
const THEOREM_B: &str = "theorem_1b";
const PROP_KM: &str = "prop_km";
const PROP_CM: &str = "prop_cm";

/// For regular Γ, Σ of coprime valencies with Σ connected, R-thin, bipartite
/// and vertex-transitive: `(Γ, Σ)` is nontrivially unstable iff Γ is.
pub fn verify_theorem_1a(gamma: &Graph, sigma: &Graph, limits: &Limits) -> Result<CheckReport> {
    if let Some(why) = coprime_valencies(gamma, sigma) {
        return Ok(CheckReport::skipped(THEOREM_A, why));
    }
    if !sigma.is_connected() || !sigma.is_r_thin() || !sigma.is_bipartite() {
        return Ok(CheckReport::skipped(THEOREM_A, "Σ must be connected, R-thin and bipartite"));
    }
    if !is_vertex_transitive(sigma, limits.node_budget)? {
        return Ok(CheckReport::skipped(THEOREM_A, "Σ is not vertex-transitive"));
    }
    let pair = classify_pair(gamma, sigma, limits)?;
    let single = classify_graph(gamma, limits)?;
    let undecided = [pair.kind, single.kind].contains(&VerdictKind::UnstableUnclassified);
    let lhs = pair.kind == VerdictKind::NontriviallyUnstable;
    let rhs = single.kind == VerdictKind::NontriviallyUnstable;
    let details = format!("pair {}, graph {}", pair.kind, single.kind);
    Ok(CheckReport::decided(
        THEOREM_A,
        !undecided && lhs == rhs,
        details,
        vec![pair, single],
    ))
}

/// For regular Γ, Σ of coprime valencies with Σ vertex-transitive and
/// disconnected, R-thick or non-bipartite: `(Γ, Σ)` is not nontrivially unstable.
pub fn verify_theorem_1b(gamma: &Graph, sigma: &Graph, limits: &Limits) -> Result<CheckReport> {
    if let Some(why) = coprime_valencies(gamma, sigma) {
        return Ok(CheckReport::skipped(THEOREM_B, why));
    }
    if sigma.is_connected() && sigma.is_r_thin() && sigma.is_bipartite() {
        return Ok(CheckReport::skipped(
            THEOREM_B,
            "Σ must be disconnected, R-thick or non-bipartite",
        ));
    }
    if !is_vertex_transitive(sigma, limits.node_budget)? {
        return Ok(CheckReport::skipped(THEOREM_B, "Σ is not vertex-transitive"));
    }
    let pair = classify_pair(gamma, sigma, limits)?;
    let pass = !matches!(
        pair.kind,
        VerdictKind::NontriviallyUnstable | VerdictKind::UnstableUnclassified
    );
    Ok(CheckReport::decided(THEOREM_B, pass, format!("pair {}", pair.kind), vec![pair]))
}

/// Aut(Γ) ≠ 1 and Γ regular of valency coprime to `m − 1`, `m ≥ 3`:
/// connected R-thin Γ gives a stable `(Γ, K_m)`; disconnected or R-thick Γ a
/// trivially unstable one.
pub fn verify_prop_km(gamma: &Graph, m: usize, limits: &Limits) -> Result<CheckReport> {
    if m < 3 {
        return Ok(CheckReport::skipped(PROP_KM, "m must be at least 3"));
    }
    match gamma.valency() {
        Some(k) if gcd(k, m - 1) == 1 => {}
        Some(k) => return Ok(CheckReport::skipped(PROP_KM, format!("valency {k} is not coprime to {}", m - 1))),
        None => return Ok(CheckReport::skipped(PROP_KM, "Γ is not regular")),
    }
    if full_automorphism_group(gamma, limits.node_budget)?.is_trivial() {
        return Ok(CheckReport::skipped(PROP_KM, "Aut(Γ) is trivial"));
    }
    let expected = if gamma.is_connected() && gamma.is_r_thin() {
        VerdictKind::Stable
    } else {
        VerdictKind::TriviallyUnstable
    };
    let v = classify_pair(gamma, &complete_graph(m)?, limits)?;
    let details = format!("expected {expected}, got {}", v.kind);
    Ok(CheckReport::decided(PROP_KM, v.kind == expected, details, vec![v]))
}

/// Γ connected, R-thin, of odd valency with Aut(Γ) ≠ 1, `m ≥ 3`: `(Γ, C_m)`
/// is stable for odd `m`, trivially unstable for `m = 4`, and of the same
/// kind as Γ for even `m ≥ 6`.
pub fn verify_prop_cm(gamma: &Graph, m: usize, limits: &Limits) -> Result<CheckReport> {
    if m < 3 {
        return Ok(CheckReport::skipped(PROP_CM, "m must be at least 3"));
    }
    if !gamma.is_connected() || !gamma.is_r_thin() {
        return Ok(CheckReport::skipped(PROP_CM, "Γ must be connected and R-thin"));
    }
    match gamma.valency() {
        Some(k) if k % 2 == 1 => {}
        _ => return Ok(CheckReport::skipped(PROP_CM, "Γ must be regular of odd valency")),
    }
    if full_automorphism_group(gamma, limits.node_budget)?.is_trivial() {
        return Ok(CheckReport::skipped(PROP_CM, "Aut(Γ) is trivial"));
    }
    let pair = classify_pair(gamma, &cycle_graph(m)?, limits)?;
    if m % 2 == 1 || m == 4 {
        let expected = if m == 4 {
            VerdictKind::TriviallyUnstable
        } else {
            VerdictKind::Stable
        };
        let details = format!("expected {expected}, got {}", pair.kind);
        return Ok(CheckReport::decided(PROP_CM, pair.kind == expected, details, vec![pair]));
    }
    let single = classify_graph(gamma, limits)?;
    let undecided = [pair.kind, single.kind].contains(&VerdictKind::UnstableUnclassified);
    let details = format!("pair {}, graph {}", pair.kind, single.kind);
    Ok(CheckReport::decided(
        PROP_CM,
        !undecided && pair.kind == single.kind,
        details,
        vec![pair, single],
    ))
}

/// Pass, fail and skip counts of one check run over many instances, with
/// every failing report kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<CheckReport>,
}

impl SuiteSummary {
    pub fn instances(&self) -> usize {
        self.passed + self.failed + self.skipped
    }
}

/// Runs `check` on every case in parallel and tallies in case order.
pub fn run_suite<T: Sync>(
    suite: &str,
    cases: &[T],
    check: impl Fn(&T) -> Result<CheckReport> + Sync + Send,
) -> Result<SuiteSummary> {
    use rayon::prelude::*;
    let reports: Vec<Result<CheckReport>> = cases.par_iter().map(check).collect();
    let mut summary = SuiteSummary {
        suite: suite.into(),
        passed: 0,
        failed: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for r in reports {
        let r = r?;
        match r.outcome {
            Outcome::Pass => summary.passed += 1,
            Outcome::Skipped => summary.skipped += 1,
            Outcome::Fail => {
                summary.failed += 1;
                summary.failures.push(r);
            }
        }
    }
    Ok(summary)
}

const SIGMA_CRITERION: &str = "sigma_automorphism_criterion";

/// Both connected, R-thin, regular of coprime valencies, Σ vertex-transitive,
/// one of them non-bipartite: a non-diagonal Σ-automorphism exists iff the
/// pair is nontrivially unstable.
pub fn verify_sigma_criterion(gamma: &Graph, sigma: &Graph, limits: &Limits) -> Result<CheckReport> {
    if let Some(why) = coprime_valencies(gamma, sigma) {
        return Ok(CheckReport::skipped(SIGMA_CRITERION, why));
    }
    if !gamma.is_connected() || !sigma.is_connected() || !gamma.is_r_thin() || !sigma.is_r_thin() {
        return Ok(CheckReport::skipped(SIGMA_CRITERION, "both must be connected and R-thin"));
    }
    if gamma.is_bipartite() && sigma.is_bipartite() {
        return Ok(CheckReport::skipped(SIGMA_CRITERION, "both are bipartite"));
    }
    if !is_vertex_transitive(sigma, limits.node_budget)? {
        return Ok(CheckReport::skipped(SIGMA_CRITERION, "Σ is not vertex-transitive"));
    }
    let witness = crate::stability::find_sigma_automorphism(gamma, sigma, limits)?;
    let pair = classify_pair(gamma, sigma, limits)?;
    let nontrivial = pair.kind == VerdictKind::NontriviallyUnstable;
    let details = format!("witness {}, pair {}", witness.is_some(), pair.kind);
    Ok(CheckReport::decided(
        SIGMA_CRITERION,
        pair.kind != VerdictKind::UnstableUnclassified && witness.is_some() == nontrivial,
        details,
        vec![pair],
    ))
}

fn regular_up_to(n_max: usize, limits: &Limits) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.extend(all_regular_graphs(n, limits.node_budget)?);
    }
    Ok(out)
}

/// `verify_prop_km` on every regular graph of order at most `n_max` and every `m` in `ms`.
pub fn prop_km_sweep(n_max: usize, ms: &[usize], limits: &Limits) -> Result<SuiteSummary> {
    let graphs = regular_up_to(n_max, limits)?;
    let cases: Vec<(&Graph, usize)> = graphs.iter().flat_map(|g| ms.iter().map(move |&m| (g, m))).collect();
    run_suite(PROP_KM, &cases, |(g, m)| verify_prop_km(g, *m, limits))
}

/// `verify_prop_cm` on every regular graph of order at most `n_max` and every `m` in `ms`.
pub fn prop_cm_sweep(n_max: usize, ms: &[usize], limits: &Limits) -> Result<SuiteSummary> {
    let graphs = regular_up_to(n_max, limits)?;
    let cases: Vec<(&Graph, usize)> = graphs.iter().flat_map(|g| ms.iter().map(move |&m| (g, m))).collect();
    run_suite(PROP_CM, &cases, |(g, m)| verify_prop_cm(g, *m, limits))
}

/// Both theorem checks and the Σ-automorphism criterion over every regular
/// Γ of order at most `gamma_max` and every vertex-transitive Σ of order at
/// most `sigma_max`.
pub fn theorem_sweep(gamma_max: usize, sigma_max: usize, limits: &Limits) -> Result<Vec<SuiteSummary>> {
    let gammas = regular_up_to(gamma_max, limits)?;
    let mut sigmas = Vec::new();
    for n in 1..=sigma_max {
        sigmas.extend(vertex_transitive_graphs(n, limits.node_budget)?);
    }
    let cases: Vec<(&Graph, &Graph)> = gammas.iter().flat_map(|g| sigmas.iter().map(move |s| (g, s))).collect();
    Ok(vec![
        run_suite(THEOREM_A, &cases, |(g, s)| verify_theorem_1a(g, s, limits))?,
        run_suite(THEOREM_B, &cases, |(g, s)| verify_theorem_1b(g, s, limits))?,
        run_suite(SIGMA_CRITERION, &cases, |(g, s)| verify_sigma_criterion(g, s, limits))?,
    ])
}
