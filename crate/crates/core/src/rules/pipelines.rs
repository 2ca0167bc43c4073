//! Kernelization pipelines, one per structural parameter.

use super::{
    counter_bound, counter_bound_audit, delta_better_threshold, find_closure_xi, find_degenerate_xi,
    require_degrading, rr_bcfree_independent_set, rr_closure_better, rr_closure_independent_set,
    rr_counter_shift, rr_delta_better, rr_exclude_needless, rr_include_satisfactory, KernelOutcome, Kernelizer,
    RuleError,
};
use crate::fcgp::{AnnotatedInstance, Variant};
use crate::graph::{compute_profile, degeneracy_ordering, is_vertex_cover, ParameterProfile};
use crate::ramsey::{greedy_degenerate_is, rc_bound};
use crate::rational::{fmt_rational, from_usize, Rational};

/// δ = |(1−3α)k|/α, the degree gap that makes one vertex strictly better
/// than another.
pub fn strictness_margin(inst: &AnnotatedInstance) -> Result<Rational, RuleError> {
    let inv = inst.alpha.inverse().ok_or_else(|| RuleError::Guard("alpha must be > 0".into()))?;
    Ok(inst.alpha.swap_margin(inst.k) * inv)
}

fn require_plain(inst: &AnnotatedInstance, what: &str) -> Result<(), RuleError> {
    if inst.is_plain() {
        Ok(())
    } else {
        Err(RuleError::Guard(format!("{what} requires a plain instance (T empty, counters 0)")))
    }
}

fn require_variant(inst: &AnnotatedInstance, v: Variant, what: &str) -> Result<(), RuleError> {
    if inst.variant == v {
        Ok(())
    } else {
        Err(RuleError::Guard(format!("{what} requires variant {v}, got {}", inst.variant)))
    }
}

macro_rules! settle {
    ($kz:expr) => {
        if let Some((yes, w)) = $kz.decided() {
            return Ok($kz.finish_decided(yes, w));
        }
    };
}

fn audit_delta_better(kz: &mut Kernelizer) {
    let free = kz.inst.free_vertices().len();
    let bound = delta_better_threshold(&kz.inst);
    kz.trace.audit("free_after_delta_better", free, Some(bound.to_string()), free <= bound);
    let dk1 = kz.inst.max_degree() * kz.inst.k + 1;
    kz.trace.audit("delta_k_plus_1", dk1, None, true);
}

/// Satisfactory/needless fixpoint, counter shift, counter audit, pruning by
/// better vertices, de-annotation.
pub fn kernel_delta(inst: &AnnotatedInstance) -> Result<KernelOutcome, RuleError> {
    require_degrading(inst, "pipeline=delta")?;
    delta_stage(Kernelizer::new("delta", inst))
}

fn delta_stage(mut kz: Kernelizer) -> Result<KernelOutcome, RuleError> {
    require_degrading(&kz.inst, "pipeline=delta")?;
    loop {
        settle!(kz);
        rr_include_satisfactory(&mut kz)?;
        settle!(kz);
        if rr_exclude_needless(&mut kz)? == 0 {
            break;
        }
    }
    rr_counter_shift(&mut kz)?;
    let ok = counter_bound_audit(&kz.inst);
    let max_counter = kz.inst.free_vertices().iter().filter_map(|&v| kz.inst.counter(v)).max().unwrap_or_default();
    let bound = counter_bound(&kz.inst).map_or("-".to_string(), |b| fmt_rational(&b));
    kz.trace.audit("counter_bound", fmt_rational(&max_counter), Some(bound), ok);
    if !ok {
        return Err(RuleError::Audit("counter bound violated after the satisfactory/needless fixpoint".into()));
    }
    settle!(kz);
    rr_delta_better(&mut kz)?;
    audit_delta_better(&mut kz);
    kz.finish_kernel()
}

/// Clique trimming and the independent-set rule until no free vertex has a
/// free neighborhood at the Ramsey bound, then [`kernel_delta`].
pub fn kernel_closure(inst: &AnnotatedInstance, c: usize) -> Result<KernelOutcome, RuleError> {
    require_degrading(inst, "pipeline=closure")?;
    let mut kz = Kernelizer::new("closure", inst);
    kz.trace.note(format!("c={c}"));
    loop {
        settle!(kz);
        rr_closure_better(&mut kz, c)?;
        settle!(kz);
        if kz.inst.k < 2 {
            break;
        }
        match find_closure_xi(&kz.inst, c)? {
            Some(pair) => rr_closure_independent_set(&mut kz, &pair)?,
            None => break,
        }
    }
    let c2 = c.max(2);
    let k = kz.inst.k;
    let b = (k + 1).saturating_mul(k.saturating_pow((c2 - 1) as u32));
    let bound = rc_bound((c2 - 1) * k + 1, b, c2).saturating_add(k as u128);
    let d = kz.inst.delta_tbar();
    kz.trace.audit("closure_delta_tbar", d, Some(bound.to_string()), k < 2 || (d as u128) < bound);
    delta_stage(kz)
}

/// Degenerate graphs are K_{d+1,d+1}-free: run the biclique-free
/// independent-set rule, then [`kernel_delta`].
pub fn kernel_degeneracy_max(inst: &AnnotatedInstance, d: usize) -> Result<KernelOutcome, RuleError> {
    require_variant(inst, Variant::Max, "pipeline=degeneracy (max)")?;
    require_degrading(inst, "pipeline=degeneracy (max)")?;
    let mut kz = Kernelizer::new("degeneracy-max", inst);
    kz.trace.note(format!("d={d}"));
    loop {
        settle!(kz);
        if kz.inst.k < 2 {
            break;
        }
        match find_degenerate_xi(&kz.inst, d)? {
            Some(pair) => rr_bcfree_independent_set(&mut kz, &pair)?,
            None => break,
        }
    }
    delta_stage(kz)
}

/// First k vertices of a degeneracy ordering of the alive graph.
fn degeneracy_prefix(inst: &AnnotatedInstance) -> Vec<usize> {
    let (g, map) = inst.alive_graph();
    let mut p: Vec<usize> = degeneracy_ordering(&g).ordering.into_iter().take(inst.k).map(|v| map[v]).collect();
    p.sort_unstable();
    p
}

/// Min with α < 1/3 on d-degenerate graphs.
pub fn kernel_degeneracy_min(inst: &AnnotatedInstance, d: usize) -> Result<KernelOutcome, RuleError> {
    require_variant(inst, Variant::Min, "pipeline=degeneracy (min)")?;
    if inst.alpha.value() >= &crate::rational::frac(1, 3) {
        return Err(RuleError::Guard(format!("pipeline=degeneracy (min) requires alpha<1/3, got {}", inst.alpha)));
    }
    let mut kz = Kernelizer::new("degeneracy-min", inst);
    kz.trace.note(format!("d={d}"));
    settle!(kz);
    if kz.inst.is_plain() && kz.inst.t >= from_usize(d * kz.inst.k) {
        let p = degeneracy_prefix(&kz.inst);
        if kz.inst.variant.meets(&kz.inst.val(&p), &kz.inst.t) {
            kz.trace.note("t >= dk: degeneracy prefix");
            return Ok(kz.finish_decided(true, Some(p)));
        }
    }
    if kz.inst.alpha.is_zero() {
        require_plain(&kz.inst, "pipeline=degeneracy (min) at alpha=0")?;
        if kz.inst.t < Rational::default() {
            return Ok(kz.finish_decided(false, None));
        }
        if kz.inst.n_alive() >= (d + 1) * kz.inst.k {
            if let Some(mut w) = greedy_degenerate_is(kz.inst.graph(), &kz.inst.alive_vertices(), kz.inst.k) {
                w.sort_unstable();
                kz.trace.note("independent set of size k");
                return Ok(kz.finish_decided(true, Some(w)));
            }
        }
        return kz.finish_identity();
    }
    let k = from_usize(kz.inst.k);
    loop {
        let cap = kz.inst.t + k;
        let inst = &kz.inst;
        let Some(v) = inst.free_vertices().into_iter().find(|&v| inst.weighted_degree(v) >= cap) else { break };
        kz.exclude("min_high_degree", v, "alpha*deg+ >= t+k")?;
    }
    settle!(kz);
    rr_delta_better(&mut kz)?;
    audit_delta_better(&mut kz);
    kz.finish_kernel()
}

/// Excludes free vertices with deg⁺ ≤ `low`, then alternates counter shifts
/// with excluding a vertex that has k strictly better vertices.
fn many_high_case(kz: &mut Kernelizer, low: usize) -> Result<(), RuleError> {
    for v in kz.inst.free_vertices() {
        if kz.inst.weighted_degree(v) <= kz.inst.alpha.value() * from_usize(low) {
            kz.exclude("exclude_low", v, format!("deg+ <= {low}"))?;
        }
    }
    loop {
        if kz.decided().is_some() {
            return Ok(());
        }
        rr_counter_shift(kz)?;
        let inst = &kz.inst;
        let alive = inst.alive_vertices();
        let k = inst.k;
        let hit = inst.free_vertices().into_iter().find(|&v| {
            alive.iter().filter(|&&u| u != v && inst.is_strictly_better(u, v)).count() >= k
        });
        match hit {
            Some(v) => kz.exclude("exclude_dominated", v, "k strictly better vertices")?,
            None => return Ok(()),
        }
    }
}

/// Includes every free vertex with deg⁺ ≥ x+δ.
fn include_high(kz: &mut Kernelizer, bar: &Rational) -> Result<(), RuleError> {
    for v in kz.inst.free_vertices() {
        if kz.inst.k_rem() == 0 {
            break;
        }
        if kz.inst.weighted_degree(v) >= kz.inst.alpha.value() * bar {
            kz.include("include_high", v, format!("deg+ >= {}", fmt_rational(bar)))?;
        }
    }
    Ok(())
}

fn count_at_least(inst: &AnnotatedInstance, x: &Rational) -> usize {
    let a = inst.alpha.value();
    inst.alive_vertices().into_iter().filter(|&v| inst.weighted_degree(v) >= a * x).count()
}

/// Max parameterized by the h-index, x = h + 1 + δ.
pub fn kernel_hindex_max(inst: &AnnotatedInstance, h: usize) -> Result<KernelOutcome, RuleError> {
    require_variant(inst, Variant::Max, "pipeline=hindex")?;
    if inst.alpha.is_zero() {
        return Err(RuleError::Guard("pipeline=hindex requires alpha>0, got 0".into()));
    }
    require_plain(inst, "pipeline=hindex")?;
    let delta = strictness_margin(inst)?;
    let x = from_usize(h + 1) + delta;
    let mut kz = Kernelizer::new("hindex", inst);
    settle!(kz);
    let vx = count_at_least(&kz.inst, &x);
    kz.trace.note(format!("h={h} x={} |V_x|={vx}", fmt_rational(&x)));
    if vx >= kz.inst.k {
        kz.trace.note("case 1");
        many_high_case(&mut kz, h)?;
        return kz.finish_kernel();
    }
    if !kz.inst.alpha.is_degrading(Variant::Max) {
        return Err(RuleError::Guard(format!(
            "pipeline=hindex case 2 (|V_x| < k) requires alpha>1/3, got {}",
            kz.inst.alpha
        )));
    }
    kz.trace.note("case 2");
    include_high(&mut kz, &(x + delta))?;
    settle!(kz);
    rr_delta_better(&mut kz)?;
    audit_delta_better(&mut kz);
    kz.finish_kernel()
}

fn check_cover(inst: &AnnotatedInstance, cover: &[usize]) -> Result<Vec<bool>, RuleError> {
    let (g, map) = inst.alive_graph();
    let mut pos = vec![usize::MAX; inst.capacity()];
    for (i, &v) in map.iter().enumerate() {
        pos[v] = i;
    }
    let mut local = Vec::new();
    let mut mark = vec![false; inst.capacity()];
    for &v in cover {
        if v >= inst.capacity() || !inst.is_alive(v) {
            return Err(RuleError::Guard(format!("invalid vertex cover: vertex {v} is not in the graph")));
        }
        local.push(pos[v]);
        mark[v] = true;
    }
    if !is_vertex_cover(&g, &local) {
        return Err(RuleError::Guard("invalid vertex cover: some edge is uncovered".into()));
    }
    Ok(mark)
}

/// Max parameterized by vertex cover, x = vc + 1 + δ.
pub fn kernel_vc_max(inst: &AnnotatedInstance, cover: &[usize]) -> Result<KernelOutcome, RuleError> {
    require_variant(inst, Variant::Max, "pipeline=vc (max)")?;
    if inst.alpha.is_zero() {
        return Err(RuleError::Guard("pipeline=vc (max) requires alpha>0, got 0".into()));
    }
    require_plain(inst, "pipeline=vc (max)")?;
    let in_cover = check_cover(inst, cover)?;
    let vc = cover.len();
    let delta = strictness_margin(inst)?;
    let x = from_usize(vc + 1) + delta;
    let mut kz = Kernelizer::new("vc-max", inst);
    settle!(kz);
    let vx = count_at_least(&kz.inst, &x);
    kz.trace.note(format!("vc={vc} x={} |V_x|={vx}", fmt_rational(&x)));
    if vx >= kz.inst.k {
        kz.trace.note("case 1");
        many_high_case(&mut kz, vc)?;
        return kz.finish_kernel();
    }
    kz.trace.note("case 2");
    include_high(&mut kz, &(x + delta))?;
    settle!(kz);
    // Independent-side vertices whose neighbors all lie in T have a fixed
    // contribution; only the k best of them can matter.
    let inst = &kz.inst;
    let mut fixed: Vec<(Rational, usize)> = inst
        .free_vertices()
        .into_iter()
        .filter(|&v| !in_cover[v] && inst.neighbors(v).all(|u| inst.in_t(u)))
        .map(|v| (inst.contribution_t(v), v))
        .collect();
    fixed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let k = inst.k;
    let mut drop: Vec<usize> = fixed.into_iter().skip(k).map(|(_, v)| v).collect();
    drop.sort_unstable();
    for v in drop {
        kz.exclude("prune_fixed", v, "fixed contribution below the k best")?;
    }
    kz.finish_kernel()
}

/// Min parameterized by vertex cover.
pub fn kernel_vc_min(inst: &AnnotatedInstance, cover: &[usize]) -> Result<KernelOutcome, RuleError> {
    require_variant(inst, Variant::Min, "pipeline=vc (min)")?;
    require_plain(inst, "pipeline=vc (min)")?;
    let in_cover = check_cover(inst, cover)?;
    let mut kz = Kernelizer::new("vc-min", inst);
    settle!(kz);
    let indep: Vec<usize> = kz.inst.alive_vertices().into_iter().filter(|&v| !in_cover[v]).collect();
    let k = kz.inst.k;
    kz.trace.note(format!("vc={} |I|={}", cover.len(), indep.len()));
    if kz.inst.alpha.is_zero() {
        if kz.inst.t < Rational::default() {
            return Ok(kz.finish_decided(false, None));
        }
        if indep.len() >= k {
            kz.trace.note("alpha=0 and |I| >= k");
            return Ok(kz.finish_decided(true, Some(indep[..k].to_vec())));
        }
        return kz.finish_identity();
    }
    if indep.len() >= k {
        let x = from_usize(cover.len() + 1) + strictness_margin(&kz.inst)?;
        let a = *kz.inst.alpha.value();
        for v in kz.inst.free_vertices() {
            if kz.inst.weighted_degree(v) >= a * x {
                kz.exclude("exclude_high", v, format!("deg+ >= {}", fmt_rational(&x)))?;
            }
        }
        settle!(kz);
        let inst = &kz.inst;
        let mut isolated: Vec<(Rational, usize)> =
            inst.free_vertices().into_iter().filter(|&v| inst.degree(v) == 0).map(|v| (*inst.bonus(v), v)).collect();
        isolated.sort();
        let mut drop: Vec<usize> = isolated.into_iter().skip(k).map(|(_, v)| v).collect();
        drop.sort_unstable();
        for v in drop {
            kz.exclude("prune_isolated", v, "isolated, not among the k lowest")?;
        }
    }
    kz.finish_kernel()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    Auto,
    Delta,
    Closure,
    Degeneracy,
    Hindex,
    Vc,
}

impl Pipeline {
    pub const ALL: [Pipeline; 5] =
        [Pipeline::Delta, Pipeline::Hindex, Pipeline::Vc, Pipeline::Closure, Pipeline::Degeneracy];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Auto => "auto",
            Pipeline::Delta => "delta",
            Pipeline::Closure => "closure",
            Pipeline::Degeneracy => "degeneracy",
            Pipeline::Hindex => "hindex",
            Pipeline::Vc => "vc",
        }
    }
}

impl std::fmt::Display for Pipeline {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Pipeline {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Pipeline::Auto),
            "delta" => Ok(Pipeline::Delta),
            "closure" => Ok(Pipeline::Closure),
            "degeneracy" => Ok(Pipeline::Degeneracy),
            "hindex" => Ok(Pipeline::Hindex),
            "vc" => Ok(Pipeline::Vc),
            o => Err(format!("unknown pipeline {o:?}, expected auto|delta|closure|degeneracy|hindex|vc")),
        }
    }
}

/// Parameter value of each pipeline for `inst`, or `None` when its guards
/// fail. The vertex cover is only consulted for `Vc`.
fn applicable(inst: &AnnotatedInstance, p: Pipeline, prof: &ParameterProfile) -> Option<usize> {
    let a = &inst.alpha;
    let degrading = a.is_degrading(inst.variant) && !a.is_zero();
    let max = inst.variant == Variant::Max;
    match p {
        Pipeline::Auto => None,
        Pipeline::Delta => degrading.then_some(prof.max_degree),
        Pipeline::Closure => degrading.then_some(prof.c_closure),
        Pipeline::Degeneracy => (if max { degrading } else { a.value() < &crate::rational::frac(1, 3) })
            .then_some(prof.degeneracy),
        Pipeline::Hindex => {
            if !max || a.is_zero() || !inst.is_plain() {
                return None;
            }
            let x = from_usize(prof.h_index + 1) + strictness_margin(inst).ok()?;
            (a.is_degrading(Variant::Max) || count_at_least(inst, &x) >= inst.k).then_some(prof.h_index)
        }
        Pipeline::Vc => {
            if !inst.is_plain() || (max && a.is_zero()) {
                return None;
            }
            prof.vc
        }
    }
}

/// Runs a pipeline, taking the structural parameters from the alive graph.
/// `Auto` picks the applicable pipeline with the smallest parameter, ties
/// resolved in the order of [`Pipeline::ALL`].
pub fn kernelize(inst: &AnnotatedInstance, pipeline: Pipeline, vc_budget: usize) -> Result<KernelOutcome, RuleError> {
    let (g, map) = inst.alive_graph();
    let want_vc = matches!(pipeline, Pipeline::Vc | Pipeline::Auto);
    let prof = compute_profile(&g, want_vc, vc_budget);
    let chosen = match pipeline {
        Pipeline::Auto => Pipeline::ALL
            .iter()
            .filter_map(|&p| applicable(inst, p, &prof).map(|v| (v, p)))
            .min_by_key(|&(v, p)| (v, Pipeline::ALL.iter().position(|&q| q == p)))
            .map(|(_, p)| p)
            .ok_or_else(|| {
                RuleError::Guard(format!(
                    "no pipeline applies to variant {} with alpha={}",
                    inst.variant, inst.alpha
                ))
            })?,
        p => p,
    };
    let mut out = match chosen {
        Pipeline::Delta => kernel_delta(inst),
        Pipeline::Closure => kernel_closure(inst, prof.c_closure),
        Pipeline::Degeneracy => match inst.variant {
            Variant::Max => kernel_degeneracy_max(inst, prof.degeneracy),
            Variant::Min => kernel_degeneracy_min(inst, prof.degeneracy),
        },
        Pipeline::Hindex => kernel_hindex_max(inst, prof.h_index),
        Pipeline::Vc => {
            let cover: Vec<usize> = prof
                .vertex_cover
                .as_ref()
                .ok_or_else(|| {
                    RuleError::Guard(format!("pipeline=vc: no vertex cover of size <= {vc_budget} found"))
                })?
                .iter()
                .map(|&v| map[v])
                .collect();
            match inst.variant {
                Variant::Max => kernel_vc_max(inst, &cover),
                Variant::Min => kernel_vc_min(inst, &cover),
            }
        }
        Pipeline::Auto => unreachable!("auto resolves to a concrete pipeline"),
    }?;
    if pipeline == Pipeline::Auto {
        out.trace.notes.insert(0, format!("auto selected {chosen}"));
    }
    Ok(out)
}
