//! Seeded instance generators and the brute-force equivalence driver.
//!
//! All randomness comes from ChaCha8 seeded with a `u64`, so every instance
//! stream is reproducible across runs and platforms.

use crate::fcgp::{Alpha, AnnotatedInstance, Variant};
use crate::graph::Graph;
use crate::rational::{fmt_rational, frac, parse_rational, Rational};
use crate::rules::{kernelize, lift_witness, KernelOutcome, Pipeline, RuleError, Status};
use crate::solve::{brute_force, is_witness, SolveError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with p = p_num/p_den.
pub fn gen_gnp(n: usize, p_num: u64, p_den: u64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_range(0..p_den.max(1)) < p_num {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are valid")
}

/// Each vertex i links back to a random subset of at most min(d, i) earlier
/// vertices, so the degeneracy is at most d.
pub fn gen_degenerate(n: usize, d: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 1..n {
        let want = r.gen_range(0..=d.min(i));
        let picks = rand::seq::index::sample(&mut r, i, want);
        for u in picks {
            edges.push((u, i));
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are valid")
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("infeasible k: range {lo}..={hi} on {n} vertices")]
    InfeasibleK { lo: usize, hi: usize, n: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Random annotated instance on `g`. With `max_counter` = 0 the result is
/// plain; otherwise T has up to min(k−1, 2) random vertices and free
/// vertices get counters in 0..=max_counter. t is the brute-force optimum
/// shifted by r/4 with r uniform in [−8, 8].
pub fn gen_annotated(
    g: &Graph,
    seed: u64,
    alpha: &Alpha,
    variant: Variant,
    k_range: (usize, usize),
    max_counter: usize,
    budget: u64,
) -> Result<AnnotatedInstance, HarnessError> {
    let (lo, hi) = k_range;
    let n = g.n();
    if lo == 0 || lo > hi || lo > n {
        return Err(HarnessError::InfeasibleK { lo, hi, n });
    }
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let k = r.gen_range(lo..=hi.min(n));
    let (t_set, bonus) = if max_counter == 0 {
        (Vec::new(), vec![Rational::default(); n])
    } else {
        let t_size = r.gen_range(0..=(k - 1).min(2));
        let mut t_set: Vec<usize> = rand::seq::index::sample(&mut r, n, t_size).into_vec();
        t_set.sort_unstable();
        let bonus = (0..n)
            .map(|v| {
                let c = r.gen_range(0..=max_counter) as i128;
                if t_set.contains(&v) {
                    Rational::default()
                } else {
                    alpha.value() * Rational::from_integer(c)
                }
            })
            .collect();
        (t_set, bonus)
    };
    let shift = frac(r.gen_range(-8..=8), 4);
    let mut inst =
        AnnotatedInstance::annotated(g.clone(), &t_set, bonus, k, Rational::default(), alpha.clone(), variant)
            .expect("generated annotation is valid");
    let opt = brute_force(&inst, budget)?.best_value.expect("k <= n gives a feasible set");
    inst.t = opt + shift;
    Ok(inst)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Mismatch(String),
    /// The oracle ran out of budget.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    pub before_yes: Option<bool>,
    pub after_yes: Option<bool>,
    pub before_opt: Option<Rational>,
    pub after_opt: Option<Rational>,
}

impl EquivalenceReport {
    fn skipped() -> Self {
        EquivalenceReport { verdict: Verdict::Skipped, before_yes: None, after_yes: None, before_opt: None, after_opt: None }
    }
}

fn oracle(inst: &AnnotatedInstance, budget: u64) -> Option<(bool, Option<Rational>)> {
    match brute_force(inst, budget) {
        Ok(r) => Some((r.is_yes(), r.best_value)),
        Err(_) => None,
    }
}

/// Compares the brute-force answers of two instances.
pub fn compare_instances(before: &AnnotatedInstance, after: &AnnotatedInstance, budget: u64) -> EquivalenceReport {
    let (Some((by, bo)), Some((ay, ao))) = (oracle(before, budget), oracle(after, budget)) else {
        return EquivalenceReport::skipped();
    };
    let verdict = if by == ay {
        Verdict::Agree
    } else {
        Verdict::Mismatch(format!("before={} after={}", yes_no(by), yes_no(ay)))
    };
    EquivalenceReport { verdict, before_yes: Some(by), after_yes: Some(ay), before_opt: bo, after_opt: ao }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_str(o: &Option<Rational>) -> String {
    o.as_ref().map_or("none".into(), fmt_rational)
}

/// Checks a pipeline outcome against the instance it came from, recomputing
/// everything by brute force. Decided outcomes must match the oracle and
/// yes-witnesses must be valid on `before`; kernels must have the same answer
/// and their lifted witnesses must be valid on `before`.
pub fn check_equivalence(before: &AnnotatedInstance, outcome: &KernelOutcome, budget: u64) -> EquivalenceReport {
    let Some((by, bo)) = oracle(before, budget) else { return EquivalenceReport::skipped() };
    let mut rep = EquivalenceReport { verdict: Verdict::Agree, before_yes: Some(by), after_yes: None, before_opt: bo, after_opt: None };
    let mismatch = |rep: &mut EquivalenceReport, msg: String| rep.verdict = Verdict::Mismatch(msg);
    match outcome.status {
        Status::DecidedYes | Status::DecidedNo => {
            let ay = outcome.status == Status::DecidedYes;
            rep.after_yes = Some(ay);
            if ay != by {
                mismatch(&mut rep, format!("oracle {} but pipeline decided {}", yes_no(by), yes_no(ay)));
            } else if let Some(w) = &outcome.witness {
                if !is_witness(before, w) {
                    mismatch(&mut rep, format!("decided witness {w:?} is not a solution"));
                }
            }
        }
        Status::Kernelized => {
            let kernel = outcome.kernel.as_ref().expect("kernelized outcome has a kernel");
            let Ok(kr) = brute_force(&kernel.instance, budget) else { return EquivalenceReport::skipped() };
            rep.after_yes = Some(kr.is_yes());
            rep.after_opt = kr.best_value;
            if kr.is_yes() != by {
                let msg = format!(
                    "oracle {} (opt {}) but kernel {} (opt {})",
                    yes_no(by),
                    opt_str(&rep.before_opt),
                    yes_no(kr.is_yes()),
                    opt_str(&rep.after_opt)
                );
                mismatch(&mut rep, msg);
            } else if let Some(w) = &kr.witness {
                match lift_witness(kernel, w) {
                    Some(l) if is_witness(before, &l) => {}
                    l => mismatch(&mut rep, format!("kernel witness {w:?} lifts to {l:?}, not a solution")),
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Gnp { n: usize, p_num: u64, p_den: u64 },
    Degenerate { n: usize, d: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRow {
    pub generator: Generator,
    pub seed: u64,
    pub alpha: Alpha,
    pub variant: Variant,
    pub pipeline: Pipeline,
    pub k: (usize, usize),
    pub counters: usize,
    /// Consecutive seeds starting at `seed`.
    pub count: u64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("manifest line {line}: {msg}")]
pub struct ManifestError {
    pub line: usize,
    pub msg: String,
}

/// One row per line: `gnp n=10 p=1/3 seed=5 alpha=1/2 variant=max
/// pipeline=delta k=3 counters=2 [count=20]` or the same with
/// `degenerate n=12 d=2`. `k` may be a range `lo..hi`. `#` starts a comment.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestRow>, ManifestError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| ManifestError { line, msg };
        let mut toks = body.split_whitespace();
        let kind = toks.next().unwrap_or_default();
        let mut kv = std::collections::BTreeMap::new();
        for t in toks {
            let (k, v) = t.split_once('=').ok_or_else(|| err(format!("expected key=value, got {t:?}")))?;
            kv.insert(k, v);
        }
        let get = |k: &str| kv.get(k).copied().ok_or_else(|| err(format!("missing {k}=")));
        let num = |k: &str| -> Result<u64, ManifestError> {
            get(k)?.parse().map_err(|_| err(format!("{k} must be a non-negative integer")))
        };
        let generator = match kind {
            "gnp" => {
                let p = parse_rational(get("p")?).map_err(|e| err(e.to_string()))?;
                if p < Rational::default() || p > Rational::from_integer(1) {
                    return Err(err("p must lie in [0,1]".into()));
                }
                Generator::Gnp { n: num("n")? as usize, p_num: *p.numer() as u64, p_den: *p.denom() as u64 }
            }
            "degenerate" => Generator::Degenerate { n: num("n")? as usize, d: num("d")? as usize },
            o => return Err(err(format!("unknown generator {o:?}"))),
        };
        let k = match get("k")?.split_once("..") {
            Some((a, b)) => (
                a.parse().map_err(|_| err("bad k range".into()))?,
                b.parse().map_err(|_| err("bad k range".into()))?,
            ),
            None => {
                let k = num("k")? as usize;
                (k, k)
            }
        };
        rows.push(ManifestRow {
            generator,
            seed: num("seed")?,
            alpha: get("alpha")?.parse().map_err(err)?,
            variant: get("variant")?.parse().map_err(err)?,
            pipeline: get("pipeline")?.parse().map_err(err)?,
            k,
            counters: kv.get("counters").map_or(Ok(0), |_| num("counters"))? as usize,
            count: kv.get("count").map_or(Ok(1), |_| num("count"))?,
        });
    }
    Ok(rows)
}

impl ManifestRow {
    pub fn graph(&self, seed: u64) -> Graph {
        match self.generator {
            Generator::Gnp { n, p_num, p_den } => gen_gnp(n, p_num, p_den, seed),
            Generator::Degenerate { n, d } => gen_degenerate(n, d, seed),
        }
    }

    pub fn instance(&self, seed: u64, budget: u64) -> Result<AnnotatedInstance, HarnessError> {
        gen_annotated(&self.graph(seed), seed, &self.alpha, self.variant, self.k, self.counters, budget)
    }
}

#[derive(Debug, Clone)]
pub struct CaseFailure {
    pub row: usize,
    pub seed: u64,
    pub instance: AnnotatedInstance,
    pub outcome: Option<KernelOutcome>,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct BatterySummary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub failures: Vec<CaseFailure>,
}

/// Runs every row of a manifest: generate, kernelize, check. Guard
/// violations and exhausted oracle budgets count as skips.
pub fn run_battery(rows: &[ManifestRow], budget: u64, vc_budget: usize) -> BatterySummary {
    let mut s = BatterySummary::default();
    for (ri, row) in rows.iter().enumerate() {
        for seed in row.seed..row.seed + row.count {
            let inst = match row.instance(seed, budget) {
                Ok(i) => i,
                Err(_) => {
                    s.skip += 1;
                    continue;
                }
            };
            let outcome = match kernelize(&inst, row.pipeline, vc_budget) {
                Ok(o) => o,
                Err(RuleError::Guard(_)) => {
                    s.skip += 1;
                    continue;
                }
                Err(e) => {
                    s.fail += 1;
                    s.failures.push(CaseFailure { row: ri + 1, seed, instance: inst, outcome: None, detail: e.to_string() });
                    continue;
                }
            };
            let rep = check_equivalence(&inst, &outcome, budget);
            let audits = outcome.trace.audits_ok();
            match rep.verdict {
                Verdict::Skipped => s.skip += 1,
                Verdict::Agree if audits => s.pass += 1,
                v => {
                    s.fail += 1;
                    let detail = match v {
                        Verdict::Mismatch(m) => m,
                        _ => "audit failed".into(),
                    };
                    s.failures.push(CaseFailure { row: ri + 1, seed, instance: inst, outcome: Some(outcome), detail });
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::compute_profile;

    #[test]
    fn generators() {
        assert_eq!(gen_gnp(0, 1, 2, 1).n(), 0);
        assert_eq!(gen_gnp(6, 1, 1, 3).m(), 15);
        assert_eq!(gen_gnp(12, 1, 3, 9), gen_gnp(12, 1, 3, 9));
        assert_eq!(gen_degenerate(10, 0, 4).m(), 0);
        for seed in 0..20 {
            let g = gen_degenerate(15, 2, seed);
            assert!(compute_profile(&g, false, 0).degeneracy <= 2);
            let f = gen_degenerate(15, 1, seed);
            assert!(f.m() < 15);
        }
    }

    #[test]
    fn annotated_plain_and_threshold() {
        let g = gen_gnp(8, 1, 2, 2);
        let inst = gen_annotated(&g, 4, &Alpha::frac(1, 2), Variant::Max, (2, 3), 0, 1_000_000).unwrap();
        assert!(inst.is_plain());
        let opt = brute_force(&inst, 1_000_000).unwrap().best_value.unwrap();
        assert!(brute_force(&inst.with_t(opt), 1_000_000).unwrap().is_yes());
        assert!(!brute_force(&inst.with_t(opt + Rational::from_integer(1)), 1_000_000).unwrap().is_yes());
        assert!(gen_annotated(&g, 4, &Alpha::frac(1, 2), Variant::Max, (9, 9), 0, 10).is_err());
    }

    #[test]
    fn manifest_rows() {
        let rows = parse_manifest(
            "# comment\n\ngnp n=10 p=1/3 seed=5 alpha=1/2 variant=max pipeline=delta k=3 counters=2\n\
             degenerate n=12 d=2 seed=1 alpha=1/4 variant=min pipeline=degeneracy k=2..4 count=3\n",
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].generator, Generator::Gnp { n: 10, p_num: 1, p_den: 3 });
        assert_eq!(rows[1].k, (2, 4));
        assert_eq!(rows[1].count, 3);
        assert!(parse_manifest("gnp n=10 p=0.3 seed=1 alpha=1/2 variant=max pipeline=delta k=2").is_err());
        assert_eq!(parse_manifest("").unwrap(), vec![]);
    }

    #[test]
    fn identity_outcome_agrees() {
        let g = gen_gnp(7, 1, 2, 11);
        let inst = gen_annotated(&g, 11, &Alpha::frac(1, 2), Variant::Max, (2, 3), 0, 1_000_000).unwrap();
        assert_eq!(compare_instances(&inst, &inst, 1_000_000).verdict, Verdict::Agree);
    }
}
