//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed. The process
//! fails when a criterion regresses. Criteria 1 and 8 claim more than holds;
//! their lines read FAIL, and the run instead pins the exact exception class
//! (see the README). Criterion 7 reads FAIL unless its full scope completes,
//! which needs `PAIRSTAB_CENSUS` (a graph6 file of the census) and
//! `PAIRSTAB_ACCEPTANCE_FULL=1`.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use pairstab::graph::{complete_graph, cycle_graph, k2, petersen, Graph};
use pairstab::harness::enumerate::{graphs_up_to, regular_graphs};
use pairstab::harness::scan::{bipartite_corpus, conjecture_scan, corpus_lines};
use pairstab::harness::sweeps::product_law_violations;
use pairstab::harness::verify::{prop_cm_sweep, prop_km_sweep, theorem_sweep, SuiteSummary};
use pairstab::io::emit_graph6;
use pairstab::search::{full_automorphism_group, is_arc_transitive};
use pairstab::stability::{classify_graph, find_two_fold, is_stable_graph, is_stable_pair, VerdictKind};
use pairstab::{direct_product, Limits};
use pairstab_oracle as oracle;
use serde_json::Value;

struct Line {
    pass: bool,
    summary: String,
    /// False when the run itself must fail.
    as_expected: bool,
}

fn line(pass: bool, summary: impl Into<String>) -> Line {
    Line {
        pass,
        summary: summary.into(),
        as_expected: pass,
    }
}

fn factorial(m: u64) -> BigUint {
    (1..=m).map(BigUint::from).product()
}

fn criterion_1(l: &Limits) -> Line {
    let graphs = graphs_up_to(6, l.node_budget).unwrap();
    let mut search_mismatch = Vec::new();
    let mut equivalence_exceptions = Vec::new();
    let mut unexplained = Vec::new();
    for g in &graphs {
        let m = g.adjacency_matrix();
        let witness = find_two_fold(g, l).unwrap().is_some();
        if witness != oracle::has_nontrivial_two_fold(&m) {
            search_mismatch.push(emit_graph6(g));
        }
        let (stable, orders) = is_stable_graph(g, l).unwrap();
        // brute-force product groups stay cheap up to order 4
        if g.order() <= 4 {
            let brute = oracle::automorphism_count(&oracle::direct_product(&m, &k2().adjacency_matrix()));
            if orders.product != BigUint::from(brute) {
                search_mismatch.push(emit_graph6(g));
            }
        }
        if stable == witness {
            equivalence_exceptions.push(emit_graph6(g));
            // the order test is exact; the exception must come from a disconnected cover
            if g.is_connected() && !g.is_bipartite() {
                unexplained.push(emit_graph6(g));
            }
        }
    }
    let pass = graphs.len() == 208 && search_mismatch.is_empty() && equivalence_exceptions.is_empty();
    Line {
        pass,
        summary: format!(
            "{} graphs; two-fold search vs exhaustive pairs: {} mismatches; \
             unstable ⟺ two-fold witness: {} exceptions, all disconnected or bipartite ({})",
            graphs.len(),
            search_mismatch.len(),
            equivalence_exceptions.len(),
            equivalence_exceptions.join(" ")
        ),
        as_expected: graphs.len() == 208 && search_mismatch.is_empty() && unexplained.is_empty(),
    }
}

fn criterion_2(l: &Limits) -> Line {
    let mut bad = Vec::new();
    for m in 1..=7u64 {
        let g = complete_graph(m as usize).unwrap();
        let got = full_automorphism_group(&g, l.node_budget).unwrap().order().clone();
        let brute = BigUint::from(oracle::automorphism_count(&g.adjacency_matrix()));
        if got != factorial(m) || brute != factorial(m) {
            bad.push(format!("K_{m}"));
        }
    }
    for m in 3..=12u64 {
        let g = cycle_graph(m as usize).unwrap();
        let got = full_automorphism_group(&g, l.node_budget).unwrap().order().clone();
        let want = BigUint::from(2 * m);
        let brute_ok = m > 7 || BigUint::from(oracle::automorphism_count(&g.adjacency_matrix())) == want;
        if got != want || !brute_ok {
            bad.push(format!("C_{m}"));
        }
    }
    // Petersen × K_2 is the Desargues graph; its group is Aut(Petersen) × Z_2.
    let pk = direct_product(&petersen(), &k2(), l.vertex_cap).unwrap();
    let pk_order = full_automorphism_group(pk.graph(), l.node_budget).unwrap().order().clone();
    if pk_order != BigUint::from(240u32) {
        bad.push(format!("Petersen×K_2 gave {pk_order}"));
    }
    line(bad.is_empty(), format!("K_m (m ≤ 7), C_m (3 ≤ m ≤ 12), Petersen×K_2 = {pk_order}; mismatches: {bad:?}"))
}

fn criterion_3(l: &Limits) -> Line {
    let mut bad = Vec::new();
    for m in 3..=12usize {
        let (stable, o) = is_stable_graph(&cycle_graph(m).unwrap(), l).unwrap();
        let ok = if m % 2 == 1 {
            stable
        } else {
            !stable && o.product == BigUint::from(8 * m * m)
        };
        if !ok {
            bad.push(m);
        }
    }
    line(bad.is_empty(), format!("(C_m, K_2) for 3 ≤ m ≤ 12; wrong rows: {bad:?}"))
}

fn suite_text(s: &SuiteSummary) -> String {
    format!("{}: {} pass, {} fail, {} skipped", s.suite, s.passed, s.failed, s.skipped)
}

fn criterion_4(l: &Limits) -> Line {
    let s = prop_km_sweep(10, &[3, 4, 5], l).unwrap();
    let mut stable = 0;
    let mut trivially = 0;
    for m in [3usize, 4, 5] {
        for n in 1..=10 {
            for k in 0..n {
                for g in regular_graphs(n, k, l.node_budget).unwrap() {
                    if num_gcd(k, m - 1) != 1 || full_automorphism_group(&g, l.node_budget).unwrap().is_trivial() {
                        continue;
                    }
                    if g.is_connected() && g.is_r_thin() {
                        stable += 1;
                    } else {
                        trivially += 1;
                    }
                }
            }
        }
    }
    let pass = s.failed == 0 && s.passed == stable + trivially && stable > 0 && trivially > 0;
    line(pass, format!("{} ({stable} expected stable, {trivially} expected trivially unstable)", suite_text(&s)))
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn criterion_5(l: &Limits) -> Line {
    let s = prop_cm_sweep(10, &[3, 4, 5, 6, 7, 8], l).unwrap();
    let pass = s.failed == 0 && s.passed > 0;
    line(pass, suite_text(&s))
}

fn criterion_6(l: &Limits) -> Line {
    let suites = theorem_sweep(8, 6, l).unwrap();
    // at least one pair with both sides true must be reached
    let both_true = nontrivially_unstable_reached(l);
    let pass = suites.iter().all(|s| s.failed == 0 && s.passed > 0) && both_true;
    let text: Vec<String> = suites.iter().map(suite_text).collect();
    line(pass, format!("{}; nontrivially unstable Γ present: {both_true}", text.join("; ")))
}

fn nontrivially_unstable_reached(l: &Limits) -> bool {
    regular_graphs(8, 3, l.node_budget)
        .unwrap()
        .iter()
        .any(|g| classify_graph(g, l).unwrap().kind == VerdictKind::NontriviallyUnstable)
}

fn lcf(n: usize, pattern: &[i64], repeats: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let jumps: Vec<i64> = pattern.iter().copied().cycle().take(pattern.len() * repeats).collect();
    for (i, j) in jumps.iter().enumerate() {
        edges.push((i, (i as i64 + j).rem_euclid(n as i64) as usize));
    }
    Graph::from_edges(n, edges).unwrap()
}

fn criterion_7(l: &Limits) -> Line {
    let full = std::env::var("PAIRSTAB_ACCEPTANCE_FULL").is_ok_and(|v| v == "1");
    let census = std::env::var("PAIRSTAB_CENSUS").ok();
    let mut notes = Vec::new();
    let mut clean = true;
    let mut complete = true;

    // arc-transitive graphs available without the census
    let mut arc: Vec<String> = Vec::new();
    for n in 2..=10 {
        for k in 1..n {
            for g in regular_graphs(n, k, l.node_budget).unwrap() {
                if g.is_connected() && is_arc_transitive(&g, l.node_budget).unwrap() {
                    arc.push(emit_graph6(&g));
                }
            }
        }
    }
    for g in [
        lcf(14, &[5, -5], 7),
        lcf(16, &[5, -5], 8),
        lcf(18, &[5, 7, -7, 7, -7, -5], 3),
        lcf(20, &[5, -5, 9, -9], 5),
        lcf(20, &[10, 7, 4, -4, -7, 10, -4, 7, -7, 4], 2),
    ] {
        assert!(is_arc_transitive(&g, l.node_budget).unwrap());
        arc.push(emit_graph6(&g));
    }
    let r = conjecture_scan(&arc, 3, 10, l, None).unwrap();
    clean &= r.is_clean();
    notes.push(format!(
        "{} built-in arc-transitive graphs: {} checked, {} counterexamples",
        arc.len(),
        r.summary.stable + r.summary.counterexamples,
        r.summary.counterexamples
    ));

    match census.filter(|_| full) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).unwrap_or_default();
            let lines: Vec<String> = corpus_lines(&text)
                .into_iter()
                .filter(|s| pairstab::io::parse_graph6(s).map_or(true, |g| g.order() <= 20))
                .collect();
            let r = conjecture_scan(&lines, 3, 10, l, None).unwrap();
            clean &= r.is_clean();
            complete &= !lines.is_empty() && r.summary.undecided == 0 && r.summary.parse_errors == 0;
            notes.push(format!(
                "census ≤ 20: {} graphs, {} counterexamples, {} undecided",
                lines.len(),
                r.summary.counterexamples,
                r.summary.undecided
            ));
        }
        None => {
            complete = false;
            notes.push("census scan not run (needs PAIRSTAB_CENSUS and PAIRSTAB_ACCEPTANCE_FULL=1)".into());
        }
    }

    let target = if full { 14 } else { 10 };
    let deadline = Instant::now() + Duration::from_secs(30 * 60);
    let mut reached = 0;
    for n in 2..=target {
        match bipartite_corpus(n, l, Some(deadline)) {
            Ok(lines) if n == target || full => {
                let fresh: Vec<String> = lines
                    .into_iter()
                    .filter(|s| pairstab::io::parse_graph6(s).is_ok_and(|g| g.order() > reached))
                    .collect();
                let r = conjecture_scan(&fresh, 3, 10, l, Some(deadline)).unwrap();
                clean &= r.is_clean();
                if r.summary.undecided > 0 {
                    complete = false;
                    break;
                }
                reached = n;
            }
            Ok(_) => {}
            Err(_) => break,
        }
    }
    if reached < 14 {
        complete = false;
    }
    notes.push(format!(
        "connected bipartite graphs scanned up to order {reached} of 14 (order 14 alone has over 31 million)"
    ));
    Line {
        pass: clean && complete,
        summary: format!("zero counterexamples found: {clean}; {}", notes.join("; ")),
        as_expected: clean,
    }
}

fn criterion_8(l: &Limits) -> Line {
    let graphs = graphs_up_to(5, l.node_budget).unwrap();
    let mut literal = Vec::new();
    let mut unexplained = Vec::new();
    let mut pairs = 0;
    for g in &graphs {
        for s in &graphs {
            pairs += 1;
            let p = direct_product(g, s, l.vertex_cap).unwrap();
            let pg = p.graph();
            let r_thin_law = pg.is_r_thin() == (g.is_r_thin() && s.is_r_thin());
            if !r_thin_law {
                literal.push(format!("({},{})", emit_graph6(g), emit_graph6(s)));
                let isolated = g.degrees().contains(&0) || s.degrees().contains(&0);
                if !isolated {
                    unexplained.push(format!("({},{})", emit_graph6(g), emit_graph6(s)));
                }
            }
            // bipartite, connectivity and degree laws, which hold exactly
            let others = product_law_violations(g, s, l).unwrap();
            if !others.is_empty() {
                unexplained.extend(others);
            }
        }
    }
    Line {
        pass: literal.is_empty() && unexplained.is_empty(),
        summary: format!(
            "{pairs} pairs; bipartite/connectivity/degree laws and the R-thin law without isolated vertices: {} violations; \
             R-thin law as stated: {} exceptions, each with an isolated vertex in a factor",
            unexplained.len(),
            literal.len()
        ),
        as_expected: unexplained.is_empty(),
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn run_cli(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_pairstab")).args(args).output().unwrap();
    let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
    strip_timing(&mut v);
    v
}

fn criterion_9() -> Line {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.g6");
    let lines: Vec<String> = [petersen(), complete_graph(4).unwrap(), cycle_graph(6).unwrap()]
        .iter()
        .map(emit_graph6)
        .collect();
    std::fs::write(&corpus, lines.join("\n")).unwrap();
    let corpus = corpus.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["stability", "--graph", "petersen"],
        vec!["stability", "--pair", "c6", "k3"],
        vec!["aut", "cube"],
        vec!["product", "c5", "k3"],
        vec!["witness", "c4"],
        vec!["witness", "g6:GJYKcK", "--sigma", "c6"],
        vec!["verify", "prop-km", "--m", "3", "4", "--max-order", "6"],
        vec!["verify", "sweeps", "--order-cap", "4", "--fuzz-trials", "50", "--seed", "7"],
        vec!["--jobs", "4", "scan", corpus, "--m-max", "6"],
        vec!["--jobs", "4", "scan", "--bipartite", "7"],
    ];
    let mut differing = Vec::new();
    for c in &commands {
        let a = run_cli(c);
        let b = run_cli(c);
        if a != b || a.get("result").is_none() {
            differing.push(c.join(" "));
        }
    }
    line(
        differing.is_empty(),
        format!("{} commands run twice, differing: {differing:?}", commands.len()),
    )
}

fn main() {
    let l = Limits::default();
    // pair-level order inequality is asserted inside is_stable_pair; touch it once so a regression aborts early
    is_stable_pair(&cycle_graph(4).unwrap(), &k2(), &l).unwrap();
    let criteria: Vec<(&str, Box<dyn Fn() -> Line>)> = vec![
        ("1", Box::new(|| criterion_1(&l))),
        ("2", Box::new(|| criterion_2(&l))),
        ("3", Box::new(|| criterion_3(&l))),
        ("4", Box::new(|| criterion_4(&l))),
        ("5", Box::new(|| criterion_5(&l))),
        ("6", Box::new(|| criterion_6(&l))),
        ("7", Box::new(|| criterion_7(&l))),
        ("8", Box::new(|| criterion_8(&l))),
        ("9", Box::new(criterion_9)),
    ];
    let mut regressions = Vec::new();
    for (id, run) in &criteria {
        let start = Instant::now();
        let r = run();
        println!(
            "{} criterion {id} ({:.1}s): {}",
            if r.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            r.summary
        );
        if !r.as_expected {
            regressions.push(*id);
        }
    }
    if !regressions.is_empty() {
        eprintln!("regressed criteria: {regressions:?}");
        std::process::exit(1);
    }
}
