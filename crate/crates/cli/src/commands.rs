use std::time::{Duration, Instant};

use pairstab::harness::scan::{bipartite_corpus, conjecture_scan, corpus_lines, ScanOutcome};
use pairstab::harness::sweeps::{lemma_sweeps, SweepConfig};
use pairstab::harness::verify::{
    prop_cm_sweep, prop_km_sweep, run_suite, theorem_sweep, verify_prop_cm, verify_prop_km, verify_sigma_criterion,
    verify_theorem_1a, verify_theorem_1b, CheckReport, Outcome, SuiteSummary,
};
use pairstab::io::emit_graph6;
use pairstab::search::{arc_orbit_count, full_automorphism_group};
use pairstab::stability::{classify_graph, classify_pair, find_sigma_automorphism, find_two_fold, CoprimalityAnswer, StabilityVerdict};
use pairstab::{direct_product, graph::k2, Error, Graph, Result};
use serde_json::json;

use crate::input::load_graph;
use crate::output::Output;
use crate::{Command, RunConfig, ScanArgs, StabilityArgs, VerifyCommand};

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Output> {
    match command {
        Command::Stability(args) => stability(args, cfg),
        Command::Product { gamma, sigma, output } => product(gamma, sigma, output.as_deref(), cfg),
        Command::Aut { graph } => aut(graph, cfg),
        Command::Witness { graph, sigma } => witness(graph, sigma.as_deref(), cfg),
        Command::Verify { check } => verify(check, cfg),
        Command::Scan(args) => scan(args, cfg),
    }
}

fn load(source: &str, cfg: &RunConfig) -> Result<Graph> {
    load_graph(source, cfg.format_in)
}

fn coprimality_label(c: &Option<CoprimalityAnswer>) -> &'static str {
    match c {
        None => "",
        Some(CoprimalityAnswer::Coprime { .. }) => "coprime",
        Some(CoprimalityAnswer::NotCoprime { .. }) => "not_coprime",
        Some(CoprimalityAnswer::Unknown { .. }) => "unknown",
    }
}

fn violation_list(v: &StabilityVerdict) -> String {
    v.violations
        .iter()
        .map(|x| serde_json::to_value(x).expect("violations serialize").as_str().unwrap_or_default().to_owned())
        .collect::<Vec<_>>()
        .join(";")
}

fn stability(args: &StabilityArgs, cfg: &RunConfig) -> Result<Output> {
    let limits = cfg.limits();
    let (gamma, sigma) = match (&args.graph, &args.pair) {
        (Some(g), _) => (load(g, cfg)?, k2()),
        (None, Some(p)) => (load(&p[0], cfg)?, load(&p[1], cfg)?),
        (None, None) => return Err(Error::InvalidArgument("give --graph or --pair".into())),
    };
    let v = if args.graph.is_some() {
        classify_graph(&gamma, &limits)?
    } else {
        classify_pair(&gamma, &sigma, &limits)?
    };
    let mut text = format!(
        "{}\n|Aut Γ| = {}, |Aut Σ| = {}, |Aut(Γ×Σ)| = {}",
        v.kind, v.orders.gamma, v.orders.sigma, v.orders.product
    );
    if !v.violations.is_empty() {
        text += &format!("\nviolations: {}", violation_list(&v).replace(';', ", "));
    }
    if let Some(w) = &v.witness {
        text += &format!("\nnon-diagonal Σ-automorphism: {:?}", w.perms().iter().map(|p| p.images()).collect::<Vec<_>>());
    }
    let row = vec![
        v.kind.to_string(),
        v.orders.gamma.to_string(),
        v.orders.sigma.to_string(),
        v.orders.product.to_string(),
        violation_list(&v),
        coprimality_label(&v.coprimality).to_owned(),
    ];
    Ok(Output::new(json!({
        "gamma": emit_graph6(&gamma),
        "sigma": emit_graph6(&sigma),
        "verdict": v,
    }))
    .table(
        vec!["kind", "aut_gamma", "aut_sigma", "aut_product", "violations", "coprimality"],
        vec![row],
    )
    .text(text))
}

fn product(gamma: &str, sigma: &str, output: Option<&std::path::Path>, cfg: &RunConfig) -> Result<Output> {
    let (g, s) = (load(gamma, cfg)?, load(sigma, cfg)?);
    let p = direct_product(&g, &s, cfg.vertex_cap)?;
    let g6 = emit_graph6(p.graph());
    let sidecar = p.sidecar();
    let mut written = Vec::new();
    if let Some(path) = output {
        let side_path = {
            let mut os = path.as_os_str().to_owned();
            os.push(".json");
            std::path::PathBuf::from(os)
        };
        let write = |path: &std::path::Path, text: String| {
            std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
        };
        write(path, format!("{g6}\n"))?;
        write(
            &side_path,
            serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n",
        )?;
        written = vec![path.display().to_string(), side_path.display().to_string()];
    }
    let pg = p.graph();
    Ok(Output::new(json!({
        "graph6": g6,
        "order": pg.order(),
        "edges": pg.edge_count(),
        "sidecar": sidecar,
        "written": written,
    }))
    .table(
        vec!["graph6", "order", "edges", "n1", "n2"],
        vec![vec![
            g6.clone(),
            pg.order().to_string(),
            pg.edge_count().to_string(),
            sidecar.n1.to_string(),
            sidecar.n2.to_string(),
        ]],
    )
    .text(format!("{g6}\norder {}, {} edges, indexing {}", pg.order(), pg.edge_count(), sidecar.indexing)))
}

fn aut(source: &str, cfg: &RunConfig) -> Result<Output> {
    let g = load(source, cfg)?;
    let group = full_automorphism_group(&g, cfg.budget)?;
    let orbits = group.orbits();
    let arc_orbits = arc_orbit_count(&g, &group);
    let generators: Vec<&[usize]> = group.generators().iter().map(|p| p.images()).collect();
    let text = format!(
        "order {}, {} generators\n{}",
        group.order(),
        generators.len(),
        group.generators().iter().map(|p| format!("  {p}")).collect::<Vec<_>>().join("\n")
    );
    Ok(Output::new(json!({
        "graph6": emit_graph6(&g),
        "order": group.order().to_string(),
        "degree": group.degree(),
        "base": group.base(),
        "generators": generators,
        "orbits": orbits,
        "vertex_transitive": orbits.len() == 1,
        "arc_orbits": arc_orbits,
    }))
    .table(
        vec!["order", "generators", "orbits", "arc_orbits"],
        vec![vec![
            group.order().to_string(),
            generators.len().to_string(),
            orbits.len().to_string(),
            arc_orbits.to_string(),
        ]],
    )
    .text(text))
}

fn witness(source: &str, sigma: Option<&str>, cfg: &RunConfig) -> Result<Output> {
    let g = load(source, cfg)?;
    let limits = cfg.limits();
    match sigma {
        None => {
            let w = find_two_fold(&g, &limits)?;
            let text = match &w {
                Some(w) => format!("two-fold automorphism\n  α: {}\n  β: {}", w.alpha(), w.beta()),
                None => "no nontrivial two-fold automorphism".into(),
            };
            let row = match &w {
                Some(w) => vec!["two_fold".into(), format!("{:?}", w.alpha().images()), format!("{:?}", w.beta().images())],
                None => vec!["none".into(), String::new(), String::new()],
            };
            Ok(Output::new(json!({ "kind": "two_fold", "witness": w }))
                .table(vec!["kind", "alpha", "beta"], vec![row])
                .text(text))
        }
        Some(s) => {
            let s = load(s, cfg)?;
            let w = find_sigma_automorphism(&g, &s, &limits)?;
            let (text, rows) = match &w {
                Some(w) => (
                    format!(
                        "non-diagonal Σ-automorphism\n{}",
                        w.perms().iter().enumerate().map(|(i, p)| format!("  α_{i}: {p}")).collect::<Vec<_>>().join("\n")
                    ),
                    w.perms().iter().enumerate().map(|(i, p)| vec![i.to_string(), format!("{:?}", p.images())]).collect(),
                ),
                None => ("every Σ-automorphism is diagonal".into(), Vec::new()),
            };
            Ok(Output::new(json!({ "kind": "sigma", "witness": w }))
                .table(vec!["sigma_vertex", "permutation"], rows)
                .text(text))
        }
    }
}

fn check_output(report: CheckReport) -> Output {
    let failed = report.outcome == Outcome::Fail;
    let outcome = serde_json::to_value(report.outcome).expect("outcome serializes");
    let outcome = outcome.as_str().unwrap_or_default().to_owned();
    let text = format!("{} {}: {}", outcome.to_uppercase(), report.check, report.details);
    let row = vec![report.check.clone(), outcome, report.details.clone()];
    Output::new(&report)
        .table(vec!["check", "outcome", "details"], vec![row])
        .text(text)
        .failed_if(failed)
}

fn suites_output(suites: Vec<SuiteSummary>) -> Output {
    let failed = suites.iter().any(|s| s.failed > 0);
    let rows = suites
        .iter()
        .map(|s| vec![s.suite.clone(), s.passed.to_string(), s.failed.to_string(), s.skipped.to_string()])
        .collect();
    let text = suites
        .iter()
        .map(|s| {
            let mut line = format!(
                "{} {}: {} passed, {} failed, {} skipped",
                if s.failed == 0 { "PASS" } else { "FAIL" },
                s.suite,
                s.passed,
                s.failed,
                s.skipped
            );
            for f in &s.failures {
                line += &format!("\n  {}", f.details);
            }
            line
        })
        .collect::<Vec<_>>()
        .join("\n");
    Output::new(&suites)
        .table(vec!["suite", "passed", "failed", "skipped"], rows)
        .text(text)
        .failed_if(failed)
}

fn verify(check: &VerifyCommand, cfg: &RunConfig) -> Result<Output> {
    let limits = cfg.limits();
    match check {
        VerifyCommand::TheoremA { gamma, sigma } => {
            Ok(check_output(verify_theorem_1a(&load(gamma, cfg)?, &load(sigma, cfg)?, &limits)?))
        }
        VerifyCommand::TheoremB { gamma, sigma } => {
            Ok(check_output(verify_theorem_1b(&load(gamma, cfg)?, &load(sigma, cfg)?, &limits)?))
        }
        VerifyCommand::SigmaCriterion { gamma, sigma } => {
            Ok(check_output(verify_sigma_criterion(&load(gamma, cfg)?, &load(sigma, cfg)?, &limits)?))
        }
        VerifyCommand::PropKm { gamma, m, max_order } => match gamma {
            Some(g) => {
                let g = load(g, cfg)?;
                if let [m] = m.as_slice() {
                    return Ok(check_output(verify_prop_km(&g, *m, &limits)?));
                }
                Ok(suites_output(vec![run_suite("prop_km", m, |&m| verify_prop_km(&g, m, &limits))?]))
            }
            None => Ok(suites_output(vec![prop_km_sweep(*max_order, m, &limits)?])),
        },
        VerifyCommand::PropCm { gamma, m, max_order } => match gamma {
            Some(g) => {
                let g = load(g, cfg)?;
                if let [m] = m.as_slice() {
                    return Ok(check_output(verify_prop_cm(&g, *m, &limits)?));
                }
                Ok(suites_output(vec![run_suite("prop_cm", m, |&m| verify_prop_cm(&g, m, &limits))?]))
            }
            None => Ok(suites_output(vec![prop_cm_sweep(*max_order, m, &limits)?])),
        },
        VerifyCommand::Theorems { gamma_max, sigma_max } => {
            Ok(suites_output(theorem_sweep(*gamma_max, *sigma_max, &limits)?))
        }
        VerifyCommand::Sweeps { order_cap, fuzz_trials } => {
            let sweep_cfg = SweepConfig {
                pair_cap: *order_cap,
                single_cap: *order_cap,
                fuzz_trials: *fuzz_trials,
                seed: cfg.seed,
            };
            let report = lemma_sweeps(&sweep_cfg, &limits)?;
            let rows = report
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.instances.to_string(), c.violations.len().to_string()])
                .collect();
            let text = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{} {}: {} instances, {} violations",
                        if c.violations.is_empty() { "PASS" } else { "FAIL" },
                        c.name,
                        c.instances,
                        c.violations.len()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let failed = report.violation_count() > 0;
            Ok(Output::new(&report)
                .table(vec!["check", "instances", "violations"], rows)
                .text(text)
                .failed_if(failed))
        }
    }
}

fn scan(args: &ScanArgs, cfg: &RunConfig) -> Result<Output> {
    let limits = cfg.limits();
    let deadline = args.deadline_secs.map(|s| Instant::now() + Duration::from_secs(s));
    let lines = match (&args.corpus, args.bipartite) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            corpus_lines(&text)
        }
        (None, Some(n)) => bipartite_corpus(n, &limits, deadline)?,
        (None, None) => return Err(Error::InvalidArgument("give a corpus file or --bipartite".into())),
    };
    let report = conjecture_scan(&lines, args.m_min, args.m_max, &limits, deadline)?;
    let label = |o: ScanOutcome| serde_json::to_value(o).expect("outcome serializes").as_str().unwrap_or_default().to_owned();
    let rows = report
        .records
        .iter()
        .map(|r| {
            let orders = r.orders.as_ref();
            vec![
                r.index.to_string(),
                r.graph6.clone(),
                r.m.map(|m| m.to_string()).unwrap_or_default(),
                label(r.outcome),
                orders.map(|o| o.gamma.to_string()).unwrap_or_default(),
                orders.map(|o| o.sigma.to_string()).unwrap_or_default(),
                orders.map(|o| o.product.to_string()).unwrap_or_default(),
                r.detail.clone(),
                format!("{:.3}", r.timing),
            ]
        })
        .collect();
    let s = &report.summary;
    let mut text = format!(
        "{} graphs, {} records: {} stable, {} counterexamples, {} filtered, {} undecided, {} parse errors",
        s.graphs, s.records, s.stable, s.counterexamples, s.filtered, s.undecided, s.parse_errors
    );
    for c in &report.counterexamples {
        text += &format!("\nCOUNTEREXAMPLE {} with m = {}: {}", c.graph6, c.m.unwrap_or(0), c.detail);
    }
    let failed = !report.is_clean();
    Ok(Output::new(&report)
        .table(
            vec!["index", "graph6", "m", "outcome", "aut_gamma", "aut_km", "aut_product", "detail", "timing"],
            rows,
        )
        .text(text)
        .failed_if(failed))
}
