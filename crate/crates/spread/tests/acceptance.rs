//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs with `cargo test -p spread --test acceptance`.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use spread::corpus::{connected_graphs, random_connected, random_tree, rng};
use spread::RandomScheduler;
use spread_core::closed_form::{blue_perimeter_of_set, conjecture_probe, grid_sigma, grid_witness_set, sigma_closed_form};
use spread_core::engine::{closure_scheduled, first_forcer_candidate};
use spread_core::gadgets::{certify_gprime, certify_gstar, Certified};
use spread_core::solver::{sigma_exact, ExactSolver};
use spread_core::tree::{extremal_example, pq_partition, property_pnp_search, tree_lower_bound, tree_upper_extremal};
use spread_core::{closure, is_spreading_set, FamilySpec, Graph, Limit, SpreadParams, Status, VertexSet};

/// Allowed absolute difference between compared spreading numbers.
const VALUE_TOLERANCE: usize = 0;
/// Allowed perimeter increase at a single trace step.
const PERIMETER_TOLERANCE: usize = 0;

const SEED: u64 = 0x5eed_2024;

const LIMIT_CLOSED_FORMS: Duration = Duration::from_secs(120);
const LIMIT_TREE_PARTITION: Duration = Duration::from_secs(120);
const LIMIT_TREE_REDUCTION: Duration = Duration::from_secs(300);
const LIMIT_TREE_BOUNDS: Duration = Duration::from_secs(300);
const LIMIT_GRID_VALUES: Duration = Duration::from_secs(600);
const LIMIT_GRID_WITNESSES: Duration = Duration::from_secs(300);
const LIMIT_PERIMETER: Duration = Duration::from_secs(300);
const LIMIT_GADGETS: Duration = Duration::from_secs(900);
const LIMIT_ENGINE: Duration = Duration::from_secs(300);

const QS: [Limit; 4] = [Limit::Finite(1), Limit::Finite(2), Limit::Finite(3), Limit::Infinite];

fn params(p: usize, q: Limit) -> SpreadParams {
    SpreadParams::new(p, q).expect("p >= 1")
}

fn close(a: usize, b: usize, tolerance: usize) -> bool {
    a.abs_diff(b) <= tolerance
}

fn exact(g: &Graph, params: SpreadParams, seen: &mut SpreadingSets) -> usize {
    let r = sigma_exact(g, params, None).expect("desk-scale instance");
    let w = r.witness.expect("exact results carry a witness");
    seen.record(g, params, &w);
    w.len()
}

/// Every spreading set produced by the suite, for the first-forcer check.
#[derive(Default)]
struct SpreadingSets {
    entries: Vec<(Graph, SpreadParams, VertexSet)>,
}

impl SpreadingSets {
    fn record(&mut self, g: &Graph, params: SpreadParams, set: &VertexSet) {
        self.entries.push((g.clone(), params, set.clone()));
    }
}

struct Check {
    failures: Vec<String>,
    cases: usize,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new(), cases: 0 }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

struct Criterion {
    id: usize,
    title: &'static str,
    limit: Duration,
    run: fn(&mut SpreadingSets) -> Check,
}

fn closed_forms(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let mut specs = Vec::new();
    for n in 3..=9 {
        specs.push(FamilySpec::Path(n));
        specs.push(FamilySpec::Cycle(n));
    }
    specs.extend((2..=7).map(FamilySpec::Complete));
    specs.extend((2..=8).map(FamilySpec::Star));
    for r in 1..=7 {
        for s in 1..=r.min(8 - r) {
            specs.push(FamilySpec::CompleteBipartite(r, s));
        }
    }
    let mut covered = 0;
    for spec in &specs {
        let g = spec.build().expect("valid family");
        for p in 1..=5 {
            if let FamilySpec::CompleteBipartite(r, s) = *spec {
                if !(s < p && p <= r) {
                    continue;
                }
            }
            for q in QS {
                let pq = params(p, q);
                let formula = sigma_closed_form(spec, pq).expect("valid family");
                let Some(value) = formula.value else { continue };
                covered += 1;
                let truth = exact(&g, pq, seen);
                c.expect(close(value, truth, VALUE_TOLERANCE), || {
                    format!("{spec:?} {pq}: formula {value}, exact {truth}")
                });
            }
        }
    }
    c.expect(covered > 300, || format!("only {covered} covered instances"));
    c
}

fn tree_partition(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let mut r = rng(SEED ^ 2);
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let t = random_tree(n, &mut r);
        for q in 1..=3 {
            let parts = pq_partition(&t, q).expect("tree").len();
            let truth = exact(&t, SpreadParams::finite(1, q), seen);
            c.expect(close(parts, truth, VALUE_TOLERANCE), || format!("{t:?} q={q}: {parts} parts, F_q {truth}"));
        }
    }
    c
}

fn tree_reduction(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let mut r = rng(SEED ^ 3);
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let t = random_tree(n, &mut r);
        for p in 2..=3 {
            let base = exact(&t, SpreadParams::finite(p, 1), seen);
            for q in [Limit::Finite(1), Limit::Finite(2), Limit::Infinite] {
                let v = exact(&t, params(p, q), seen);
                c.expect(close(v, base, VALUE_TOLERANCE), || format!("{t:?} p={p} q={q}: {v} vs {base}"));
            }
        }
    }
    c
}

fn tree_bounds(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let mut r = rng(SEED ^ 4);
    for _ in 0..200 {
        let n = r.gen_range(5..=12);
        let t = random_tree(n, &mut r);
        for p in 2..=3 {
            let pq = SpreadParams::finite(p, 1);
            let sigma = exact(&t, pq, seen);
            let f = tree_lower_bound(n, p).expect("p >= 2");
            let upper = tree_upper_extremal(&t, pq).expect("n >= 5");
            c.expect(f <= sigma && sigma <= upper.bound, || format!("{t:?} p={p}: {f} <= {sigma} <= {}", upper.bound));
            let extremal_shape = if p == 2 { t.max_degree() == n - 1 } else { t.max_degree() < p };
            c.expect((sigma == upper.bound) == extremal_shape, || format!("{t:?} p={p}: upper bound attainment"));
            c.expect(upper.attained == extremal_shape, || format!("{t:?} p={p}: reported attainment"));
            let cert = property_pnp_search(&t, p).expect("n <= 20");
            c.expect((sigma == f) == cert.is_some(), || format!("{t:?} p={p}: sigma={sigma}, f={f}, certificate {}", cert.is_some()));
        }
    }
    let (t_star, _, _) = extremal_example(11, 3).expect("n > p");
    let t_prime = Graph::from_edges(
        11,
        [(0, 8), (1, 8), (2, 8), (8, 9), (3, 9), (4, 9), (4, 10), (5, 10), (6, 10), (6, 7)],
    )
    .expect("valid edges");
    for (name, t) in [("T*", &t_star), ("T'", &t_prime)] {
        let sigma = exact(t, SpreadParams::finite(3, 1), seen);
        c.expect(sigma == 8, || format!("{name}: sigma {sigma} != 8"));
        let cert = property_pnp_search(t, 3).expect("n <= 20");
        c.expect(cert.as_ref().is_some_and(|c| c.report.holds), || format!("{name}: no certificate"));
    }
    c
}

fn grid_values(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    for (m, n) in [(3, 3), (3, 4), (4, 4)] {
        let g = FamilySpec::Grid(m, n).build().expect("grid");
        for p in [1, 2, 4, 5] {
            for q in [Limit::Finite(1), Limit::Finite(2), Limit::Finite(3), Limit::Finite(4), Limit::Infinite] {
                let pq = params(p, q);
                let formula = grid_sigma(pq, m, n);
                c.expect(formula.status == Status::Formula, || format!("{m}x{n} {pq}: status {}", formula.status));
                let truth = exact(&g, pq, seen);
                c.expect(formula.value.is_some_and(|v| close(v, truth, VALUE_TOLERANCE)), || {
                    format!("{m}x{n} {pq}: formula {:?}, exact {truth}", formula.value)
                });
            }
        }
    }
    let g = FamilySpec::Grid(3, 3).build().expect("grid");
    let s: Vec<usize> = (1..=4).map(|q| exact(&g, SpreadParams::finite(3, q), seen)).collect();
    c.expect(s[2] == 5 && s[0] == 6, || format!("3x3: sigma(3,3)={}, sigma(3,1)={}", s[2], s[0]));
    c.expect(s[0] > s[1] && s[1] == s[2] && s[2] == s[3], || format!("3x3 separation: {s:?}"));
    for (m, n) in [(3, 3), (3, 4), (4, 4)] {
        let probe = conjecture_probe(m, n, None).expect("small grid");
        println!(
            "    evidence: sigma(3,3) = {:?}, sigma(3,4) = {:?} on {m}x{n}",
            probe.sigma_33, probe.sigma_34
        );
    }
    c
}

fn grid_witnesses(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let mut rows = vec![SpreadParams::finite(1, 1), SpreadParams::finite(2, 1)];
    rows.extend([2, 3, 4].map(|q| SpreadParams::finite(2, q)));
    rows.push(SpreadParams::unbounded(2));
    rows.extend([1, 2, 3, 4].map(|q| SpreadParams::finite(4, q)));
    rows.push(SpreadParams::unbounded(4));
    for m in 3..=50 {
        for n in 3..=m {
            let g = FamilySpec::Grid(m, n).build().expect("grid");
            for &pq in &rows {
                let set = match grid_witness_set(pq, m, n) {
                    Ok(set) => set,
                    Err(e) => {
                        c.expect(false, || format!("{m}x{n} {pq}: {e}"));
                        continue;
                    }
                };
                let spreads = is_spreading_set(&g, pq, &set);
                c.expect(spreads, || format!("{m}x{n} {pq}: witness does not spread"));
                let value = grid_sigma(pq, m, n).value;
                c.expect(value == Some(set.len()), || format!("{m}x{n} {pq}: |witness| {} vs {value:?}", set.len()));
                if spreads && m <= 6 {
                    seen.record(&g, pq, &set);
                }
            }
        }
    }
    c
}

fn perimeter(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let mut r = rng(SEED ^ 7);
    for run in 0..50 {
        let m = r.gen_range(3..=12);
        let n = r.gen_range(3..=12);
        let q = *[Limit::Finite(1), Limit::Finite(2), Limit::Finite(3), Limit::Finite(4), Limit::Infinite]
            .choose(&mut r)
            .expect("non-empty");
        let pq = params(2, q);
        let g = FamilySpec::Grid(m, n).build().expect("grid");
        let mut seed = grid_witness_set(pq, m, n).expect("covered row");
        for v in 0..m * n {
            if r.gen_bool(0.05) {
                seed.insert(v);
            }
        }
        let trace = closure_scheduled(&g, pq, &seed, &mut RandomScheduler::new(SEED + run));
        let mut blue = trace.initial.clone();
        let mut last = blue_perimeter_of_set(m, n, &blue).expect("cells in range");
        for step in &trace.steps {
            blue.insert(step.forced);
            let now = blue_perimeter_of_set(m, n, &blue).expect("cells in range");
            c.expect(now <= last + PERIMETER_TOLERANCE, || format!("{m}x{n} {pq}: perimeter {last} -> {now}"));
            last = now;
        }
        c.expect(trace.final_set.is_full(), || format!("{m}x{n} {pq}: closure not full"));
        c.expect(last == 2 * (m + n), || format!("{m}x{n}: final perimeter {last}"));
        seen.record(&g, pq, &seed);
    }
    c
}

fn gadgets(_: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let value = |x: Certified| x.value();
    for (max_n, q) in [(4, 2), (3, 3)] {
        for n in 1..=max_n {
            for g in connected_graphs(n) {
                let cert = certify_gstar(&g, q, None).expect("desk scale");
                c.expect(cert.equal == Some(true) && value(cert.zg) == value(cert.fq_gstar), || {
                    format!("G*: {g:?} q={q}: Z={:?} F_q={:?}", cert.zg, cert.fq_gstar)
                });
                c.expect(cert.lift_valid, || format!("G*: {g:?} q={q}: lift failed"));
            }
        }
    }
    for (p, q) in [(2, 1), (2, 2), (3, 2)] {
        for n in 1..=5 {
            for g in connected_graphs(n) {
                let cert = certify_gprime(&g, p, q, None).expect("desk scale");
                c.expect(cert.equal == Some(true), || {
                    format!("G': {g:?} ({p},{q}): F_q={:?} sigma={:?}", cert.fq, cert.sigma_gprime)
                });
                c.expect(cert.lift_valid, || format!("G': {g:?} ({p},{q}): lift failed"));
            }
        }
    }
    c
}

fn engine(seen: &mut SpreadingSets) -> Check {
    let mut c = Check::new();
    let mut r = rng(SEED ^ 9);
    for instance in 0..100 {
        let n = r.gen_range(1..=12);
        let g = random_connected(n, r.gen_range(0.0..0.5), &mut r);
        let p = r.gen_range(1..=4);
        let pq = params(p, *QS.choose(&mut r).expect("non-empty"));
        let seed = VertexSet::from_vertices(n, (0..n).filter(|_| r.gen_bool(0.4)));
        let canonical = closure(&g, pq, &seed);
        c.expect(canonical.replay(&g, pq).is_ok(), || format!("#{instance}: trace does not replay"));
        for k in 0..20 {
            let t = closure_scheduled(&g, pq, &seed, &mut RandomScheduler::new(SEED ^ (instance << 8) ^ k));
            c.expect(t.final_set == canonical.final_set, || format!("#{instance}: order {k} differs"));
        }
        let again = closure(&g, pq, &canonical.final_set);
        c.expect(again.steps.is_empty() && again.final_set == canonical.final_set, || format!("#{instance}: not idempotent"));
        for v in 0..n {
            if g.degree(v) < p && !seed.contains(v) {
                c.expect(!canonical.final_set.contains(v), || format!("#{instance}: low-degree vertex {v} turned blue"));
            }
        }
        let wider_q = closure(&g, pq.with_q(pq.q().succ()).expect("valid"), &seed).final_set;
        c.expect(canonical.final_set.is_subset(&wider_q), || format!("#{instance}: q+1 closure smaller"));
        if p > 1 {
            let lower_p = closure(&g, params(p - 1, pq.q()), &seed).final_set;
            c.expect(canonical.final_set.is_subset(&lower_p), || format!("#{instance}: p-1 closure smaller"));
        }
        if g.max_degree() <= pq.q().finite().unwrap_or(usize::MAX) {
            let inf = closure(&g, SpreadParams::unbounded(p), &seed).final_set;
            c.expect(inf == canonical.final_set, || format!("#{instance}: large q differs from unbounded"));
        }
        if n <= 10 {
            let sigma = exact(&g, pq, seen);
            c.expect(sigma >= p.min(n), || format!("#{instance}: sigma below min(p, n)"));
            if g.max_degree() < p {
                c.expect(sigma == n, || format!("#{instance}: sigma {sigma} != n with max degree < p"));
            }
            let next_q = exact(&g, pq.with_q(pq.q().succ()).expect("valid"), seen);
            c.expect(sigma >= next_q, || format!("#{instance}: sigma not monotone in q"));
            if p > 1 {
                let prev_p = exact(&g, params(p - 1, pq.q()), seen);
                c.expect(sigma >= prev_p, || format!("#{instance}: sigma not monotone in p"));
            }
            let hinted = ExactSolver::new(&g, pq).upper_hint(VertexSet::full(n)).solve().expect("desk scale");
            c.expect(hinted.value == Some(sigma), || format!("#{instance}: hint changed the value"));
        }
        if canonical.final_set.is_full() {
            seen.record(&g, pq, &seed);
        }
    }
    let mut checked = 0;
    for (g, pq, set) in &seen.entries {
        let spreads = is_spreading_set(g, *pq, set);
        c.expect(spreads, || format!("recorded set {set:?} does not spread"));
        if spreads && !set.is_full() {
            checked += 1;
            c.expect(first_forcer_candidate(g, *pq, set).is_some(), || format!("{set:?} has no first forcer"));
        }
    }
    println!("    first-forcer condition checked on {checked} spreading sets");
    c
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "closed forms agree with exact search", limit: LIMIT_CLOSED_FORMS, run: closed_forms },
        Criterion { id: 2, title: "tree partition size equals q-forcing number", limit: LIMIT_TREE_PARTITION, run: tree_partition },
        Criterion { id: 3, title: "tree value independent of q for p >= 2", limit: LIMIT_TREE_REDUCTION, run: tree_reduction },
        Criterion { id: 4, title: "tree bounds and extremal characterization", limit: LIMIT_TREE_BOUNDS, run: tree_bounds },
        Criterion { id: 5, title: "grid values and 3x3 separation", limit: LIMIT_GRID_VALUES, run: grid_values },
        Criterion { id: 6, title: "grid witnesses up to 50x50", limit: LIMIT_GRID_WITNESSES, run: grid_witnesses },
        Criterion { id: 7, title: "blue perimeter never increases", limit: LIMIT_PERIMETER, run: perimeter },
        Criterion { id: 8, title: "gadget equalities", limit: LIMIT_GADGETS, run: gadgets },
        Criterion { id: 9, title: "engine invariants and first-forcer condition", limit: LIMIT_ENGINE, run: engine },
    ];
    let mut seen = SpreadingSets::default();
    let mut failed = 0;
    for criterion in &criteria {
        let start = Instant::now();
        let check = (criterion.run)(&mut seen);
        let elapsed = start.elapsed();
        let in_time = elapsed <= criterion.limit;
        let pass = check.failures.is_empty() && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {} ({} checks, {:.1}s of {}s)",
            criterion.id,
            if pass { "PASS" } else { "FAIL" },
            criterion.title,
            check.cases,
            elapsed.as_secs_f64(),
            criterion.limit.as_secs()
        );
        for f in check.failures.iter().filter(|f| !f.is_empty()) {
            println!("    {f}");
        }
        if check.failures.len() > 5 {
            println!("    ... {} failures in total", check.failures.len());
        }
        if !in_time {
            println!("    time limit exceeded");
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
