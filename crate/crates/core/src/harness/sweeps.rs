//! Exhaustive invariant sweeps over small graphs, plus a relabeling fuzz.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::emit_graph6;
use crate::product::direct_product;
use crate::search::full_automorphism_group;
use crate::stability::{classify_graph, find_sigma_automorphism, find_two_fold, is_stable_graph, is_stable_pair};
use crate::Limits;

use super::enumerate::graphs_up_to;

/// Largest order the sweeps enumerate.
pub const MAX_SWEEP_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    /// Both factors of every swept pair have at most this order.
    pub pair_cap: usize,
    /// Single-graph suites run up to this order.
    pub single_cap: usize,
    pub fuzz_trials: usize,
    pub seed: u64,
}

impl SweepConfig {
    pub fn new(order_cap: usize) -> SweepConfig {
        SweepConfig {
            pair_cap: order_cap,
            single_cap: order_cap,
            fuzz_trials: 1000,
            seed: 0,
        }
    }
}

/// One property checked on `instances` inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCheck {
    pub name: String,
    pub instances: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub checks: Vec<SweepCheck>,
}

impl SweepReport {
    pub fn violation_count(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    pub fn check(&self, name: &str) -> Option<&SweepCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g)
}

/// Runs `f` on every item in parallel and gathers violations in input order.
fn sweep<T: Sync>(name: &str, items: &[T], f: impl Fn(&T) -> Result<Vec<String>> + Sync + Send) -> Result<SweepCheck> {
    let per: Vec<Result<Vec<String>>> = items.par_iter().map(f).collect();
    let mut violations = Vec::new();
    for r in per {
        violations.extend(r?);
    }
    Ok(SweepCheck {
        name: name.into(),
        instances: items.len(),
        violations,
    })
}

/// The bipartite, R-thin, connectivity and degree laws of the direct product.
/// The R-thin law is checked only when neither factor has an isolated vertex:
/// an isolated vertex of one factor times any two vertices of the other gives
/// two vertices with empty neighborhoods.
pub fn product_law_violations(gamma: &Graph, sigma: &Graph, limits: &Limits) -> Result<Vec<String>> {
    let p = direct_product(gamma, sigma, limits.vertex_cap)?;
    let pg = p.graph();
    let tag = format!("({}, {})", g6(gamma), g6(sigma));
    let mut out = Vec::new();
    if pg.is_bipartite() == (!gamma.is_bipartite() && !sigma.is_bipartite()) {
        out.push(format!("{tag}: product bipartiteness"));
    }
    let isolated = gamma.degrees().contains(&0) || sigma.degrees().contains(&0);
    if !isolated && pg.is_r_thin() != (gamma.is_r_thin() && sigma.is_r_thin()) {
        out.push(format!("{tag}: product R-thinness"));
    }
    if gamma.order() >= 2 && sigma.order() >= 2 && gamma.is_connected() && sigma.is_connected() {
        let expected = if gamma.is_bipartite() && sigma.is_bipartite() { 2 } else { 1 };
        let got = pg.components().len();
        if got != expected {
            out.push(format!("{tag}: {got} components, expected {expected}"));
        }
    }
    for u in 0..gamma.order() {
        for x in 0..sigma.order() {
            if pg.degree(p.index(u, x)) != gamma.degree(u) * sigma.degree(x) {
                out.push(format!("{tag}: degree of ({u},{x})"));
            }
        }
    }
    Ok(out)
}

fn pairs(graphs: &[Graph]) -> Vec<(&Graph, &Graph)> {
    graphs.iter().flat_map(|g| graphs.iter().map(move |s| (g, s))).collect()
}

/// Runs the product and stability invariant suites over every graph up to
/// the configured orders, and a seeded relabeling fuzz.
pub fn lemma_sweeps(cfg: &SweepConfig, limits: &Limits) -> Result<SweepReport> {
    let cap = cfg.pair_cap.max(cfg.single_cap);
    if cap > MAX_SWEEP_ORDER || cap == 0 {
        return Err(Error::InvalidArgument(format!(
            "sweep order must be between 1 and {MAX_SWEEP_ORDER}, got {cap}"
        )));
    }
    let all = graphs_up_to(cap, limits.node_budget)?;
    let small: Vec<Graph> = all.iter().filter(|g| g.order() <= cfg.pair_cap).cloned().collect();
    let singles: Vec<Graph> = all.iter().filter(|g| g.order() <= cfg.single_cap).cloned().collect();
    let pair_list = pairs(&small);
    let mut checks = Vec::new();

    checks.push(sweep("product_laws", &pair_list, |(g, s)| product_law_violations(g, s, limits))?);

    checks.push(sweep("order_inequality", &pair_list, |(g, s)| {
        // is_stable_pair refuses to return when the inequality fails
        Ok(match is_stable_pair(g, s, limits) {
            Err(Error::Invariant(msg)) => vec![format!("({}, {}): {msg}", g6(g), g6(s))],
            r => {
                r?;
                Vec::new()
            }
        })
    })?);

    checks.push(sweep("two_fold_soundness", &singles, |g| {
        let Some(w) = find_two_fold(g, limits)? else {
            return Ok(Vec::new());
        };
        let (stable, _) = is_stable_graph(g, limits)?;
        Ok(if stable || !w.is_valid_for(g) {
            vec![format!("{}: witness ({}; {}) on a stable graph", g6(g), w.alpha(), w.beta())]
        } else {
            Vec::new()
        })
    })?);

    // Γ × K_2 is connected exactly when Γ is connected and not bipartite;
    // only then is every automorphism of it layer-preserving or layer-swapping.
    let cover_connected: Vec<Graph> = singles
        .iter()
        .filter(|g| g.is_connected() && !g.is_bipartite())
        .cloned()
        .collect();
    checks.push(sweep("two_fold_equivalence", &cover_connected, |g| {
        let (stable, _) = is_stable_graph(g, limits)?;
        let witness = find_two_fold(g, limits)?;
        Ok(if stable == witness.is_some() {
            vec![format!("{}: stable = {stable}, witness = {}", g6(g), witness.is_some())]
        } else {
            Vec::new()
        })
    })?);

    checks.push(sweep("thick_from_trivial_half", &singles, |g| {
        let Some(w) = find_two_fold(g, limits)? else {
            return Ok(Vec::new());
        };
        let aut = full_automorphism_group(g, limits.node_budget)?;
        let mut out = Vec::new();
        for (first, second) in [(w.alpha(), w.beta()), (w.beta(), w.alpha())] {
            if (first.is_identity() || aut.contains(first)) && g.is_r_thin() {
                out.push(format!("{}: witness ({first}; {second}) on an R-thin graph", g6(g)));
            }
        }
        Ok(out)
    })?);

    checks.push(sweep("nondiagonal_implies_unstable", &pair_list, |(g, s)| {
        if find_sigma_automorphism(g, s, limits)?.is_none() {
            return Ok(Vec::new());
        }
        let (stable, _) = is_stable_pair(g, s, limits)?;
        Ok(if stable {
            vec![format!("({}, {}): non-diagonal witness on a stable pair", g6(g), g6(s))]
        } else {
            Vec::new()
        })
    })?);

    checks.push(sweep("odd_cycles_force_diagonal", &pair_list, |(g, s)| {
        if !g.is_r_thin() || !s.is_connected() || !s.has_odd_cycle_through_every_vertex() {
            return Ok(Vec::new());
        }
        Ok(match find_sigma_automorphism(g, s, limits)? {
            Some(w) => vec![format!("({}, {}): non-diagonal {:?}", g6(g), g6(s), w.perms())],
            None => Vec::new(),
        })
    })?);

    checks.push(relabel_fuzz(&singles, cfg.fuzz_trials, cfg.seed, limits)?);

    Ok(SweepReport {
        config: cfg.clone(),
        checks,
    })
}

/// Classifies random relabelings of random graphs from `graphs` and compares
/// with the unrelabeled verdict.
pub fn relabel_fuzz(graphs: &[Graph], trials: usize, seed: u64, limits: &Limits) -> Result<SweepCheck> {
    if graphs.is_empty() {
        return Ok(SweepCheck {
            name: "relabel_fuzz".into(),
            instances: 0,
            violations: Vec::new(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(usize, Vec<usize>)> = (0..trials)
        .map(|_| {
            let i = rng.random_range(0..graphs.len());
            let mut image: Vec<usize> = (0..graphs[i].order()).collect();
            image.shuffle(&mut rng);
            (i, image)
        })
        .collect();
    sweep("relabel_fuzz", &cases, |(i, image)| {
        let g = &graphs[*i];
        let h = g.relabel(image);
        let a = classify_graph(g, limits)?;
        let b = classify_graph(&h, limits)?;
        Ok(if (a.kind, &a.orders, &a.violations) != (b.kind, &b.orders, &b.violations) {
            vec![format!("{} relabeled by {image:?}: {} against {}", g6(g), a.kind, b.kind)]
        } else {
            Vec::new()
        })
    })
}
