//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any
//! criterion fails. Run with `cargo test --release -p fcgp-cli --test acceptance`.

use fcgp::fcgp::{Alpha, AnnotatedInstance, Variant};
use fcgp::graph::{c_closure, compute_profile, degeneracy_ordering, h_index, min_vertex_cover, write_edgelist, Graph};
use fcgp::harness::{check_equivalence, compare_instances, gen_annotated, gen_degenerate, gen_gnp, rng, Verdict};
use fcgp::ramsey::{
    bcfree_independent_set, bcfree_ramsey_bound, cclosed_ramsey, classic_ramsey, ramsey_bound, rc_bound,
};
use fcgp::rational::{fmt_rational, from_usize, int, Rational};
use fcgp::rules::{
    find_closure_xi, find_degenerate_xi, kernelize, rr_bcfree_independent_set, rr_closure_better,
    rr_closure_independent_set, rr_counter_shift, rr_delta_better, rr_exclude_needless, rr_include_satisfactory,
    Kernelizer, Pipeline, RuleError, Status,
};
use fcgp::solve::{
    branch_degrading, brute_force, densest_vc, hindex_fpt_max, solve_bounded_degree, solve_third, SolveError,
    SolveResult,
};
use rand::Rng;
use std::io::Write;
use std::path::Path;
use std::process::Command;

const ALPHAS: [(i128, i128); 6] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (1, 1)];
const VARIANTS: [Variant; 2] = [Variant::Max, Variant::Min];
const BUDGET: u64 = 4_000_000;
const PER_CELL: usize = 500;

struct Line {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn report(lines: &mut Vec<Line>, id: usize, name: &'static str, pass: bool, detail: String) {
    // Bypass the test harness capture so the lines always reach the log.
    let mut out = std::io::stdout();
    if id == 1 {
        let _ = writeln!(out);
    }
    let _ = writeln!(out, "criterion {id} [{name}]: {} {detail}", if pass { "PASS" } else { "FAIL" });
    let _ = out.flush();
    lines.push(Line { id, name, pass, detail });
}

/// Small random graph for seed `s`: G(n,p) or d-degenerate, n in 5..=12.
fn small_graph(s: u64) -> Graph {
    let n = 5 + (s % 8) as usize;
    match s % 4 {
        0 => gen_gnp(n, 1, 4, s),
        1 => gen_gnp(n, 1, 2, s),
        2 => gen_degenerate(n, 2, s),
        _ => gen_degenerate(n, 3, s),
    }
}

fn small_instance(s: u64, alpha: &Alpha, variant: Variant, counters: usize) -> AnnotatedInstance {
    let g = small_graph(s);
    gen_annotated(&g, s, alpha, variant, (1, 4), counters, BUDGET).expect("small instances are generated")
}

#[derive(Default)]
struct Cell {
    checked: usize,
    guard: usize,
    skipped: usize,
    tried: usize,
    failures: Vec<String>,
}

impl Cell {
    fn summary(&self) -> String {
        format!("checked={} guard={} skipped={}", self.checked, self.guard, self.skipped)
    }
}

/// Per (pipeline, variant, alpha): kernelize seeded instances until PER_CELL
/// in-guard cases have been compared with the brute-force oracle.
fn pipeline_cell(p: Pipeline, variant: Variant, alpha: &Alpha, base: u64, audits: &mut AuditTally) -> Cell {
    let mut cell = Cell::default();
    let mut s = base;
    while cell.checked < PER_CELL && cell.tried < 60 * PER_CELL {
        cell.tried += 1;
        s += 1;
        // Alternate plain and annotated inputs; several pipelines need plain.
        let inst = small_instance(s, alpha, variant, if s.is_multiple_of(2) { 0 } else { 2 });
        let o = match kernelize(&inst, p, 25) {
            Ok(o) => o,
            Err(RuleError::Guard(_)) => {
                cell.guard += 1;
                continue;
            }
            Err(e) => {
                cell.failures.push(format!("seed {s}: {e}"));
                cell.checked += 1;
                continue;
            }
        };
        audits.record(&o);
        let rep = check_equivalence(&inst, &o, BUDGET);
        match rep.verdict {
            Verdict::Agree => cell.checked += 1,
            Verdict::Skipped => cell.skipped += 1,
            Verdict::Mismatch(m) => {
                cell.checked += 1;
                cell.failures.push(format!("seed {s}: {m}"));
            }
        }
    }
    cell
}

#[derive(Default)]
struct AuditTally {
    kernelized: usize,
    audits: usize,
    delta_bound: usize,
    counter: usize,
    failures: Vec<String>,
}

impl AuditTally {
    fn record(&mut self, o: &fcgp::rules::KernelOutcome) {
        if o.status != Status::Kernelized {
            return;
        }
        self.kernelized += 1;
        for a in &o.trace.audits {
            self.audits += 1;
            match a.name.as_str() {
                "free_after_delta_better" => self.delta_bound += 1,
                "counter_bound" => self.counter += 1,
                _ => {}
            }
            if !a.ok {
                self.failures.push(format!("{} {}: value={} bound={:?}", o.trace.pipeline, a.name, a.value, a.bound));
            }
        }
        if o.kernel.as_ref().is_some_and(|k| k.instance.n_alive() > k.stats.n_bound) {
            self.failures.push(format!("{}: kernel exceeds n_bound", o.trace.pipeline));
        }
    }
}

type RuleFn = fn(&mut Kernelizer) -> Result<usize, RuleError>;

/// One rule applied to its fixpoint on a seeded instance; before and after
/// must agree under the oracle.
fn rule_cell(rule: RuleFn, variant: Variant, alpha: &Alpha, base: u64) -> Cell {
    let mut cell = Cell::default();
    let mut s = base;
    while cell.checked < PER_CELL && cell.tried < 4 * PER_CELL {
        cell.tried += 1;
        s += 1;
        let inst = small_instance(s, alpha, variant, 2);
        let mut kz = Kernelizer::new("rule", &inst);
        match rule(&mut kz) {
            Ok(_) => {}
            Err(RuleError::Guard(_)) => {
                cell.guard += 1;
                continue;
            }
            Err(e) => {
                cell.failures.push(format!("seed {s}: {e}"));
                continue;
            }
        }
        match compare_instances(&inst, &kz.inst, BUDGET).verdict {
            Verdict::Agree => cell.checked += 1,
            Verdict::Skipped => cell.skipped += 1,
            Verdict::Mismatch(m) => {
                cell.checked += 1;
                cell.failures.push(format!("seed {s}: {m}"));
            }
        }
    }
    cell
}

fn satisfactory_then_needless(kz: &mut Kernelizer) -> Result<usize, RuleError> {
    rr_include_satisfactory(kz)?;
    rr_exclude_needless(kz)
}

fn closure_better_profiled(kz: &mut Kernelizer) -> Result<usize, RuleError> {
    let (g, _) = kz.inst.alive_graph();
    rr_closure_better(kz, c_closure(&g).0)
}

/// Star with `leaves` leaves and a random matching among some leaves: the
/// graph stays 2-closed and the center's neighborhood triggers the c-closed
/// independent-set rule.
fn matched_star(leaves: usize, s: u64) -> Graph {
    let mut r = rng(s);
    let mut edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
    let mut v = 1;
    while v < leaves {
        if r.gen_bool(0.3) {
            edges.push((v, v + 1));
        }
        v += 2;
    }
    Graph::from_edges(leaves + 1, &edges).unwrap()
}

/// Star with `leaves` leaves and pendant vertices hung on random leaves: a
/// tree, so 1-degenerate.
fn pendant_star(leaves: usize, extra: usize, s: u64) -> Graph {
    let mut r = rng(s);
    let mut edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
    for e in 0..extra {
        edges.push((r.gen_range(1..=leaves), leaves + 1 + e));
    }
    Graph::from_edges(leaves + 1 + extra, &edges).unwrap()
}

/// Independent-set rules fire only on large neighborhoods, so these cells use
/// star-like graphs instead of the n ≤ 12 family.
fn ramsey_rule_cell(closure: bool, variant: Variant, alpha: &Alpha, base: u64) -> Cell {
    let mut cell = Cell::default();
    let mut s = base;
    while cell.checked < PER_CELL && cell.tried < 4 * PER_CELL {
        cell.tried += 1;
        s += 1;
        let g = if closure { matched_star(21 + (s % 5) as usize, s) } else { pendant_star(10, (s % 3) as usize, s) };
        let inst = gen_annotated(&g, s, alpha, variant, (2, 2), (s % 2) as usize * 2, BUDGET).unwrap();
        let mut kz = Kernelizer::new("rule", &inst);
        let pair = if closure {
            find_closure_xi(&inst, c_closure(&g).0)
        } else {
            find_degenerate_xi(&inst, compute_profile(&g, false, 0).degeneracy)
        };
        let applied = match pair {
            Ok(Some(p)) if closure => rr_closure_independent_set(&mut kz, &p),
            Ok(Some(p)) => rr_bcfree_independent_set(&mut kz, &p),
            // The center landed in T or too few leaves stayed free.
            Ok(None) => {
                cell.guard += 1;
                continue;
            }
            Err(e) => Err(e),
        };
        match applied {
            Ok(()) => {}
            Err(RuleError::Guard(_)) => {
                cell.guard += 1;
                continue;
            }
            Err(e) => {
                cell.failures.push(format!("seed {s}: {e}"));
                continue;
            }
        }
        match compare_instances(&inst, &kz.inst, BUDGET).verdict {
            Verdict::Agree => cell.checked += 1,
            Verdict::Skipped => cell.skipped += 1,
            Verdict::Mismatch(m) => {
                cell.checked += 1;
                cell.failures.push(format!("seed {s}: {m}"));
            }
        }
    }
    cell
}

fn criterion_oracle(lines: &mut Vec<Line>, audits: &mut AuditTally) {
    let mut total = 0usize;
    let mut cells = 0usize;
    let mut excluded = Vec::new();
    let mut problems = Vec::new();
    let mut absorb = |label: String, c: Cell| {
        total += c.checked;
        if c.checked == 0 {
            excluded.push(label);
            return;
        }
        cells += 1;
        if let Some(f) = c.failures.first() {
            problems.push(format!("{label}: {} failures, first {f}", c.failures.len()));
        } else if c.checked < PER_CELL {
            problems.push(format!("{label}: only {}", c.summary()));
        }
    };
    let mut base = 10_000u64;
    for p in Pipeline::ALL.into_iter().chain([Pipeline::Auto]) {
        for variant in VARIANTS {
            for &(a, b) in &ALPHAS {
                let alpha = Alpha::frac(a, b);
                base += 100_000;
                let c = pipeline_cell(p, variant, &alpha, base, audits);
                absorb(format!("pipeline={} {variant} alpha={alpha}", p.name()), c);
            }
        }
    }
    let rules: [(&str, RuleFn); 5] = [
        ("rr_delta_better", rr_delta_better),
        ("rr_include_satisfactory", rr_include_satisfactory),
        ("rr_exclude_needless", satisfactory_then_needless),
        ("rr_counter_shift", rr_counter_shift),
        ("rr_closure_better", closure_better_profiled),
    ];
    for (name, rule) in rules {
        for variant in VARIANTS {
            for &(a, b) in &ALPHAS {
                let alpha = Alpha::frac(a, b);
                base += 100_000;
                absorb(format!("{name} {variant} alpha={alpha}"), rule_cell(rule, variant, &alpha, base));
            }
        }
    }
    for (name, closure) in [("rr_closure_independent_set", true), ("rr_bcfree_independent_set", false)] {
        for variant in VARIANTS {
            for &(a, b) in &ALPHAS {
                let alpha = Alpha::frac(a, b);
                base += 100_000;
                absorb(format!("{name} {variant} alpha={alpha}"), ramsey_rule_cell(closure, variant, &alpha, base));
            }
        }
    }
    let detail = format!(
        "{total} instances over {cells} cells, {} guard-excluded cells{}",
        excluded.len(),
        problems.first().map(|p| format!("; {p}")).unwrap_or_default()
    );
    report(lines, 1, "oracle equivalence of rules and pipelines", problems.is_empty(), detail);
    let mut out = std::io::stdout();
    for e in &excluded {
        let _ = writeln!(out, "  guard-excluded: {e}");
    }
}

/// α·|E(S, V∖S)| + (1−α)·|E(S)| + bonus(S), straight from the edge list.
fn val_by_edges(inst: &AnnotatedInstance, s: &[usize]) -> Rational {
    let a = inst.alpha.value();
    let mut mark = vec![false; inst.capacity()];
    for &v in s {
        mark[v] = true;
    }
    let mut v: Rational = s.iter().map(|&x| *inst.bonus(x)).sum();
    for (x, y) in inst.graph().edges() {
        if inst.is_alive(x) && inst.is_alive(y) {
            match (mark[x], mark[y]) {
                (true, true) => v += int(1) - a,
                (true, false) | (false, true) => v += *a,
                _ => {}
            }
        }
    }
    v
}

fn random_annotation(g: Graph, s: u64, alpha: Alpha) -> AnnotatedInstance {
    let mut r = rng(s ^ 0x5151);
    let n = g.n();
    let bonus = (0..n).map(|_| alpha.value() * from_usize(r.gen_range(0..3))).collect();
    AnnotatedInstance::annotated(g, &[], bonus, 1, int(0), alpha, Variant::Max).unwrap()
}

fn criterion_telescoping(lines: &mut Vec<Line>) {
    let mut fails = Vec::new();
    let cases = 10_000u64;
    for s in 0..cases {
        let (a, b) = ALPHAS[(s % 6) as usize];
        let inst = random_annotation(small_graph(s), s, Alpha::frac(a, b));
        let mut r = rng(s);
        let mut set: Vec<usize> = (0..inst.capacity()).filter(|_| r.gen_bool(0.5)).collect();
        rand::seq::SliceRandom::shuffle(set.as_mut_slice(), &mut r);
        if inst.telescope(&set) != val_by_edges(&inst, &set) {
            fails.push(s);
        }
    }
    let detail = format!("{cases} triples, {} failures{}", fails.len(), fails.first().map(|s| format!(", first seed {s}")).unwrap_or_default());
    report(lines, 2, "telescoping identity", fails.is_empty(), detail);
}

fn criterion_modularity(lines: &mut Vec<Line>) {
    let regimes: [(&str, &[(i128, i128)], std::cmp::Ordering); 3] = [
        ("submodular alpha>1/3", &[(1, 2), (2, 3), (1, 1), (2, 5)], std::cmp::Ordering::Greater),
        ("supermodular alpha<1/3", &[(0, 1), (1, 4), (1, 5), (3, 10)], std::cmp::Ordering::Less),
        ("modular alpha=1/3", &[(1, 3)], std::cmp::Ordering::Equal),
    ];
    let cases = 10_000u64;
    let mut parts = Vec::new();
    let mut pass = true;
    for (ri, (name, alphas, dir)) in regimes.iter().enumerate() {
        let mut bad = 0;
        for s in 0..cases {
            let seed = s + 1_000_000 * ri as u64;
            let (a, b) = alphas[(s % alphas.len() as u64) as usize];
            let inst = random_annotation(small_graph(seed), seed, Alpha::frac(a, b));
            let n = inst.capacity();
            let mut r = rng(seed);
            let v = r.gen_range(0..n);
            let y: Vec<usize> = (0..n).filter(|&u| u != v && r.gen_bool(0.5)).collect();
            let x: Vec<usize> = y.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
            let gain = |set: &[usize]| {
                let mut with = set.to_vec();
                with.push(v);
                val_by_edges(&inst, &with) - val_by_edges(&inst, set)
            };
            let (gx, gy) = (gain(&x), gain(&y));
            let ok = match dir {
                std::cmp::Ordering::Greater => gx >= gy,
                std::cmp::Ordering::Less => gx <= gy,
                std::cmp::Ordering::Equal => gx == gy,
            };
            if !ok {
                bad += 1;
            }
        }
        pass &= bad == 0;
        parts.push(format!("{name}: {cases} triples, {bad} violations"));
    }
    report(lines, 3, "sub/supermodularity", pass, parts.join("; "));
}

fn agree(inst: &AnnotatedInstance, r: Result<SolveResult, SolveError>) -> Result<bool, String> {
    let r = match r {
        Ok(r) => r,
        Err(SolveError::Guard(_)) => return Ok(false),
        Err(e) => return Err(e.to_string()),
    };
    let o = brute_force(inst, BUDGET).map_err(|e| e.to_string())?;
    if r.decision != o.decision || r.best_value != o.best_value {
        return Err(format!(
            "decision {:?}/{:?} value {:?}/{:?}",
            r.decision,
            o.decision,
            r.best_value.map(|v| fmt_rational(&v)),
            o.best_value.map(|v| fmt_rational(&v))
        ));
    }
    Ok(true)
}

fn criterion_solvers(lines: &mut Vec<Line>) {
    type Gen = fn(u64) -> AnnotatedInstance;
    type Run = fn(&AnnotatedInstance) -> Result<SolveResult, SolveError>;
    fn alive_profile(i: &AnnotatedInstance) -> Graph {
        i.alive_graph().0
    }
    let solvers: [(&str, Gen, Run); 5] = [
        (
            "branch_degrading",
            |s| {
                let (a, b) = [(1, 2), (2, 3), (1, 1), (1, 4), (1, 5)][(s % 5) as usize];
                let v = if a * 3 > b { Variant::Max } else { Variant::Min };
                small_instance(s, &Alpha::frac(a, b), v, (s % 3) as usize)
            },
            |i| branch_degrading(i, compute_profile(&alive_profile(i), false, 0).degeneracy, BUDGET),
        ),
        (
            "solve_third",
            |s| small_instance(s, &Alpha::frac(1, 3), VARIANTS[(s % 2) as usize], (s % 3) as usize),
            solve_third,
        ),
        (
            "hindex_fpt_max",
            |s| {
                let (a, b) = [(0, 1), (1, 4), (1, 5)][(s % 3) as usize];
                small_instance(s, &Alpha::frac(a, b), Variant::Max, (s % 3) as usize)
            },
            |i| hindex_fpt_max(i, h_index(&alive_profile(i)), BUDGET),
        ),
        (
            "densest_vc",
            |s| small_instance(s, &Alpha::frac(0, 1), Variant::Max, 0),
            |i| {
                let (g, map) = i.alive_graph();
                let cover: Vec<usize> = min_vertex_cover(&g, 25).unwrap().into_iter().map(|v| map[v]).collect();
                densest_vc(i, &cover, BUDGET)
            },
        ),
        (
            "solve_bounded_degree",
            |s| {
                let (a, b) = ALPHAS[(s % 6) as usize];
                small_instance(s, &Alpha::frac(a, b), VARIANTS[(s / 6 % 2) as usize], (s % 3) as usize)
            },
            |i| solve_bounded_degree(i, BUDGET),
        ),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (si, (name, gen, run)) in solvers.iter().enumerate() {
        let (mut ok, mut bad, mut first) = (0usize, 0usize, None);
        let mut s = 5_000_000 * (si as u64 + 1);
        while ok + bad < 300 && s < 5_000_000 * (si as u64 + 1) + 3000 {
            s += 1;
            let inst = gen(s);
            match agree(&inst, run(&inst)) {
                Ok(true) => ok += 1,
                Ok(false) => {}
                Err(e) => {
                    bad += 1;
                    first.get_or_insert(format!("seed {s}: {e}"));
                }
            }
        }
        pass &= bad == 0 && ok >= 300;
        parts.push(format!("{name} {ok}/{}", ok + bad) + &first.map(|f| format!(" ({f})")).unwrap_or_default());
    }
    report(lines, 4, "solver agreement", pass, parts.join(", "));
}

fn criterion_min_prefix(lines: &mut Vec<Line>) {
    let mut bad = Vec::new();
    for s in 0..100u64 {
        let d = 1 + (s % 3) as usize;
        let n = 6 + (s % 20) as usize;
        let g = gen_degenerate(n, d, s);
        let d = compute_profile(&g, false, 0).degeneracy;
        let k = 1 + (s % n as u64) as usize;
        let (a, b) = ALPHAS[(s % 6) as usize];
        let t = from_usize(d * k);
        let inst = AnnotatedInstance::plain(g.clone(), k, t, Alpha::frac(a, b), Variant::Min);
        let prefix: Vec<usize> = degeneracy_ordering(&g).ordering[..k].to_vec();
        if inst.val(&prefix) > t {
            bad.push(s);
        }
    }
    report(lines, 5, "min triviality prefix witness", bad.is_empty(), format!("100 instances, {} failures", bad.len()));
}

fn c4_free(n: usize, s: u64) -> Graph {
    let mut r = rng(s);
    let mut g = Graph::empty(n);
    for _ in 0..4 * n {
        let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
        if u == v || g.has_edge(u, v) {
            continue;
        }
        let mut edges = g.edges();
        edges.push((u.min(v), u.max(v)));
        let h = Graph::from_edges(n, &edges).unwrap();
        // K_{2,2}-free: no two vertices share two neighbors.
        let ok = (0..n).all(|x| {
            (x + 1..n).all(|y| h.neighbors(x).iter().filter(|w| h.has_edge(y, **w)).count() <= 1)
        });
        if ok {
            g = h;
        }
    }
    g
}

fn criterion_ramsey(lines: &mut Vec<Line>) {
    let mut parts = Vec::new();
    let mut pass = rc_bound(3, 3, 2) == 6;
    parts.push(format!("rc_bound(3,3,2)={}", rc_bound(3, 3, 2)));

    let mut ok = 0;
    for s in 0..200u64 {
        let (p, q) = [(3, 3), (3, 4), (4, 3), (2, 5), (4, 4)][(s % 5) as usize];
        let n = ramsey_bound(p, q) as usize;
        let g = gen_gnp(n, 1 + s % 3, 4, s);
        if classic_ramsey(&g, p, q).is_ok_and(|w| w.verify(&g)) {
            ok += 1;
        }
    }
    pass &= ok == 200;
    parts.push(format!("classic {ok}/200"));

    let mut ok = 0;
    for s in 0..200u64 {
        let big = gen_gnp(40, 1, 8 + s % 5, s);
        let c = c_closure(&big).0;
        let (q, b) = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)][(s % 5) as usize];
        let n = rc_bound(q, b, c) as usize;
        let keep: Vec<usize> = (0..n.min(40)).collect();
        let g = big.induced(&keep);
        if n <= 40 && cclosed_ramsey(&g, q, b, c).is_ok_and(|w| w.verify(&g)) {
            ok += 1;
        }
    }
    pass &= ok == 200;
    parts.push(format!("c-closed {ok}/200"));

    let mut ok = 0;
    for s in 0..200u64 {
        let k = 1 + (s % 3) as usize;
        let n = bcfree_ramsey_bound(2, 2, k) as usize;
        let g = c4_free(n, s);
        if bcfree_independent_set(&g, 2, 2, k).is_ok_and(|i| i.len() == k && g.is_independent(&i)) {
            ok += 1;
        }
    }
    pass &= ok == 200;
    parts.push(format!("K22-free {ok}/200"));
    report(lines, 6, "ramsey witnesses", pass, parts.join(", "));
}

fn criterion_audits(lines: &mut Vec<Line>, a: &AuditTally) {
    let detail = format!(
        "{} kernelized outcomes, {} audits ({} free-vertex bounds, {} counter bounds), {} violations{}",
        a.kernelized,
        a.audits,
        a.delta_bound,
        a.counter,
        a.failures.len(),
        a.failures.first().map(|f| format!(", first {f}")).unwrap_or_default()
    );
    report(lines, 7, "kernel size audits", a.failures.is_empty() && a.kernelized > 0, detail);
}

fn fcgp(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fcgp")).args(args).output().expect("run fcgp");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn value_args(inst: &AnnotatedInstance) -> Vec<String> {
    vec![
        "--alpha".into(),
        inst.alpha.to_string(),
        "--k".into(),
        inst.k.to_string(),
        "--t".into(),
        fmt_rational(&inst.t),
        "--variant".into(),
        inst.variant.to_string(),
    ]
}

fn criterion_determinism(lines: &mut Vec<Line>) {
    let dir = tempfile::tempdir().unwrap();
    let mut diffs = Vec::new();
    let mut runs = 0;
    for s in 0..20u64 {
        let (a, b) = [(1, 2), (2, 3), (1, 1), (1, 4)][(s % 4) as usize];
        let variant = if a * 3 > b { Variant::Max } else { Variant::Min };
        let g = gen_gnp(9 + (s % 4) as usize, 1, 3, s);
        let inst = gen_annotated(&g, s, &Alpha::frac(a, b), variant, (2, 4), 0, BUDGET).unwrap();
        let gp = dir.path().join(format!("g{s}.txt"));
        std::fs::write(&gp, write_edgelist(&g)).unwrap();
        let vals = value_args(&inst);
        let v: Vec<&str> = vals.iter().map(|x| x.as_str()).collect();
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let kp = dir.path().join(format!("k{s}.txt"));
            let tp = dir.path().join(format!("t{s}.txt"));
            let _ = std::fs::remove_file(&kp);
            let mut blob = Vec::new();
            let mut args = vec!["kernelize", p(&gp), "--pipeline", "auto", "--out", p(&kp), "--trace", p(&tp)];
            args.extend(&v);
            blob.extend(fcgp(&args).1);
            blob.extend(std::fs::read(&kp).unwrap_or_default());
            blob.extend(std::fs::read(&tp).unwrap());
            let mut args = vec!["--json", "kernelize", p(&gp), "--pipeline", "auto"];
            args.extend(&v);
            blob.extend(fcgp(&args).1);
            let mut args = vec!["--json", "solve", p(&gp)];
            args.extend(&v);
            blob.extend(fcgp(&args).1);
            blob.extend(fcgp(&["--json", "params", p(&gp)]).1);
            let o = kernelize(&inst, Pipeline::Auto, 25).unwrap();
            blob.extend(o.trace_text().into_bytes());
            outputs.push(blob);
            runs += 1;
        }
        if outputs[0] != outputs[1] {
            diffs.push(s);
        }
    }
    report(lines, 8, "determinism", diffs.is_empty(), format!("{runs} repeated command sets, {} differ", diffs.len()));
}

fn criterion_verify(lines: &mut Vec<Line>) {
    let dir = tempfile::tempdir().unwrap();
    let (mut ok, mut kernelized, mut decided) = (0, 0, 0);
    let mut bad = Vec::new();
    for s in 0..500u64 {
        let (a, b) = [(1, 2), (2, 3), (1, 1), (1, 4), (1, 5)][(s % 5) as usize];
        let variant = if a * 3 > b { Variant::Max } else { Variant::Min };
        let g = small_graph(s + 77_000);
        let inst = gen_annotated(&g, s, &Alpha::frac(a, b), variant, (1, 4), 0, BUDGET).unwrap();
        let gp = dir.path().join("g.txt");
        let kp = dir.path().join("k.txt");
        let tp = dir.path().join("t.txt");
        let _ = std::fs::remove_file(&kp);
        std::fs::write(&gp, write_edgelist(&g)).unwrap();
        let vals = value_args(&inst);
        let v: Vec<&str> = vals.iter().map(|x| x.as_str()).collect();
        let pipeline = ["auto", "delta", "closure", "degeneracy"][(s % 4) as usize];
        let mut args = vec!["kernelize", p(&gp), "--pipeline", pipeline, "--out", p(&kp), "--trace", p(&tp)];
        args.extend(&v);
        let (code, _) = fcgp(&args);
        if code != 0 {
            bad.push(format!("seed {s}: kernelize exit {code}"));
            continue;
        }
        if kp.exists() {
            kernelized += 1;
        } else {
            decided += 1;
        }
        let mut args = vec!["verify", p(&gp), "--kernel", p(&kp), "--trace", p(&tp), "--oracle"];
        args.extend(&v);
        match fcgp(&args).0 {
            0 => ok += 1,
            c => bad.push(format!("seed {s}: verify exit {c}")),
        }
    }
    let detail = format!(
        "{ok}/500 round trips ({kernelized} kernels, {decided} decided){}",
        bad.first().map(|b| format!(", first failure {b}")).unwrap_or_default()
    );
    report(lines, 9, "witness lifting via verify", bad.is_empty() && ok == 500, detail);
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut audits = AuditTally::default();
    criterion_oracle(&mut lines, &mut audits);
    criterion_telescoping(&mut lines);
    criterion_modularity(&mut lines);
    criterion_solvers(&mut lines);
    criterion_min_prefix(&mut lines);
    criterion_ramsey(&mut lines);
    criterion_audits(&mut lines, &audits);
    criterion_determinism(&mut lines);
    criterion_verify(&mut lines);
    let failed: Vec<String> = lines.iter().filter(|l| !l.pass).map(|l| format!("{} ({}): {}", l.id, l.name, l.detail)).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
