//! Scans of a graph corpus for counterexamples to "(Γ, K_m) is stable for
//! connected R-thin Γ coprime to K_m with Aut(Γ) ≠ 1".

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{complete_graph, Graph};
use crate::io::{emit_graph6, parse_graph6};
use crate::search::full_automorphism_group;
use crate::stability::{classify_pair, coprimality, CoprimalityAnswer, OrderTriple, StabilityVerdict, VerdictKind};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanOutcome {
    Stable,
    Counterexample,
    /// Outside the hypotheses; not a check.
    Filtered,
    /// A resource limit or the deadline stopped the check.
    Undecided,
    ParseError,
}

/// One corpus line paired with one `m`, or one unreadable line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    /// Zero-based position in the corpus, counting only non-empty lines.
    pub index: usize,
    pub graph6: String,
    pub m: Option<usize>,
    pub outcome: ScanOutcome,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<OrderTriple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<StabilityVerdict>,
    /// Wall time in milliseconds; not part of the determinism contract.
    pub timing: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub graphs: usize,
    pub records: usize,
    pub stable: usize,
    pub counterexamples: usize,
    pub filtered: usize,
    pub undecided: usize,
    pub parse_errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub m_min: usize,
    pub m_max: usize,
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub summary: ScanSummary,
    pub counterexamples: Vec<ScanRecord>,
    pub records: Vec<ScanRecord>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.summary.counterexamples == 0
    }
}

/// Corpus lines that hold a graph: blank lines and `>>graph6<<` headers are
/// dropped, and surrounding whitespace trimmed.
pub fn corpus_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.trim().trim_start_matches(">>graph6<<"))
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect()
}

fn record(index: usize, g6: &str, m: Option<usize>, outcome: ScanOutcome, detail: impl Into<String>) -> ScanRecord {
    ScanRecord {
        index,
        graph6: g6.into(),
        m,
        outcome,
        detail: detail.into(),
        orders: None,
        verdict: None,
        timing: 0.0,
    }
}

fn scan_pair(index: usize, line: &str, g: &Graph, m: usize, limits: &Limits) -> Result<ScanRecord> {
    let km = complete_graph(m)?;
    match coprimality(g, &km, limits.coprime_bound, limits.node_budget)? {
        CoprimalityAnswer::Coprime { .. } => {}
        CoprimalityAnswer::NotCoprime { .. } => {
            return Ok(record(index, line, Some(m), ScanOutcome::Filtered, "not coprime to K_m"))
        }
        CoprimalityAnswer::Unknown { .. } => {
            return Ok(record(index, line, Some(m), ScanOutcome::Undecided, "coprimality undecided"))
        }
    }
    let v = classify_pair(g, &km, limits)?;
    let (outcome, detail) = match v.kind {
        VerdictKind::Stable => (ScanOutcome::Stable, "stable".to_owned()),
        kind => (ScanOutcome::Counterexample, format!("pair is {kind}")),
    };
    let mut r = record(index, line, Some(m), outcome, detail);
    r.orders = Some(v.orders.clone());
    if outcome == ScanOutcome::Counterexample {
        r.verdict = Some(v);
    }
    Ok(r)
}

fn scan_line(index: usize, line: &str, ms: &[usize], limits: &Limits, deadline: Option<Instant>) -> Result<Vec<ScanRecord>> {
    let g = match parse_graph6(line) {
        Ok(g) => g,
        Err(e) => return Ok(vec![record(index, line, None, ScanOutcome::ParseError, e.to_string())]),
    };
    let gate = if !g.is_connected() {
        Some("disconnected")
    } else if !g.is_r_thin() {
        Some("R-thick")
    } else {
        match full_automorphism_group(&g, limits.node_budget) {
            Ok(aut) if aut.is_trivial() => Some("trivial automorphism group"),
            Ok(_) => None,
            Err(e) if e.is_resource() => {
                return Ok(ms
                    .iter()
                    .map(|&m| record(index, line, Some(m), ScanOutcome::Undecided, e.to_string()))
                    .collect())
            }
            Err(e) => return Err(e),
        }
    };
    let mut out = Vec::with_capacity(ms.len());
    for &m in ms {
        if let Some(why) = gate {
            out.push(record(index, line, Some(m), ScanOutcome::Filtered, why));
            continue;
        }
        if deadline.is_some_and(|d| Instant::now() > d) {
            out.push(record(index, line, Some(m), ScanOutcome::Undecided, "deadline passed"));
            continue;
        }
        let start = Instant::now();
        let mut r = match scan_pair(index, line, &g, m, limits) {
            Ok(r) => r,
            Err(e) if e.is_resource() => record(index, line, Some(m), ScanOutcome::Undecided, e.to_string()),
            Err(e) => return Err(e),
        };
        r.timing = start.elapsed().as_secs_f64() * 1e3;
        out.push(r);
    }
    Ok(out)
}

/// Checks every corpus graph against `K_m` for `m_min ≤ m ≤ m_max`. Lines
/// are processed in parallel; records come back in corpus order, `m`
/// ascending within a line.
pub fn conjecture_scan(
    lines: &[String],
    m_min: usize,
    m_max: usize,
    limits: &Limits,
    deadline: Option<Instant>,
) -> Result<ScanReport> {
    if m_min < 3 || m_max < m_min {
        return Err(Error::InvalidArgument(format!("need 3 ≤ m_min ≤ m_max, got {m_min}..{m_max}")));
    }
    let ms: Vec<usize> = (m_min..=m_max).collect();
    let per: Vec<Result<Vec<ScanRecord>>> = lines
        .par_iter()
        .enumerate()
        .map(|(i, l)| scan_line(i, l, &ms, limits, deadline))
        .collect();
    let mut records = Vec::new();
    for r in per {
        records.extend(r?);
    }
    let mut summary = ScanSummary {
        graphs: lines.len(),
        records: records.len(),
        ..ScanSummary::default()
    };
    for r in &records {
        match r.outcome {
            ScanOutcome::Stable => summary.stable += 1,
            ScanOutcome::Counterexample => summary.counterexamples += 1,
            ScanOutcome::Filtered => summary.filtered += 1,
            ScanOutcome::Undecided => summary.undecided += 1,
            ScanOutcome::ParseError => summary.parse_errors += 1,
        }
    }
    let counterexamples = records
        .iter()
        .filter(|r| r.outcome == ScanOutcome::Counterexample)
        .cloned()
        .collect();
    Ok(ScanReport {
        config: ScanConfig {
            m_min,
            m_max,
            limits: *limits,
        },
        summary,
        counterexamples,
        records,
    })
}

/// graph6 lines for the connected bipartite graphs of order `2..=n_max`.
pub fn bipartite_corpus(n_max: usize, limits: &Limits, deadline: Option<Instant>) -> Result<Vec<String>> {
    let levels = super::enumerate::bipartite_graphs_up_to(n_max, limits.node_budget, deadline)?;
    Ok(levels
        .iter()
        .flatten()
        .filter(|g| g.order() >= 2 && g.is_connected())
        .map(emit_graph6)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cube, cycle_graph, petersen};

    #[test]
    fn small_scan() {
        let lines: Vec<String> = [petersen(), cube(), cycle_graph(6).unwrap(), complete_graph(4).unwrap()]
            .iter()
            .map(emit_graph6)
            .chain(["not graph6!".to_owned()])
            .collect();
        let r = conjecture_scan(&lines, 3, 5, &Limits::default(), None).unwrap();
        assert!(r.is_clean(), "{:#?}", r.counterexamples);
        assert_eq!(r.summary.records, 4 * 3 + 1);
        assert_eq!(r.summary.parse_errors, 1);
        assert!(r.summary.stable >= 6);
        // the cube (valency 3) and K_3 (valency 2) share no factor
        let cube_k3 = r.records.iter().find(|x| x.index == 1 && x.m == Some(3)).unwrap();
        assert_eq!(cube_k3.outcome, ScanOutcome::Stable);
    }

    #[test]
    fn headers_and_blanks() {
        assert_eq!(corpus_lines(">>graph6<<C~\n\n  Bw \n"), vec!["C~", "Bw"]);
    }

    #[test]
    fn bipartite_corpus_counts() {
        // connected bipartite graphs of orders 2..=6: 1, 1, 3, 5, 17
        let lines = bipartite_corpus(6, &Limits::default(), None).unwrap();
        assert_eq!(lines.len(), 27);
    }
}
