//! Gadget constructions turning an annotated instance back into a plain one:
//! pendant leaves for Max, a large clique for Min.

use super::{AnnotatedInstance, InstanceError, Variant};
use crate::graph::Graph;
use crate::rational::{ceil_usize, floor_usize, from_usize, int, next_int_above, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DeannotateError {
    #[error("de-annotation needs alpha > 0")]
    AlphaZero,
    #[error("de-annotation for {expected} called on a {got} instance")]
    WrongVariant { expected: Variant, got: Variant },
    #[error(transparent)]
    Counter(#[from] InstanceError),
}

/// A plain instance produced from an annotated one, with the bookkeeping
/// needed to translate witnesses back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainKernel {
    pub instance: AnnotatedInstance,
    /// For each kernel vertex, the vertex of the annotated instance it stands
    /// for; `None` for gadget vertices.
    pub origin: Vec<Option<usize>>,
    /// Kernel vertices that carry the partial solution T.
    pub partial: Vec<usize>,
    pub stats: DeannotationStats,
}

/// Construction constants, recorded for size audits.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DeannotationStats {
    pub kind: String,
    pub n_annotated: usize,
    pub t_size: usize,
    pub delta: usize,
    pub gamma: usize,
    /// Extra leaves per T-vertex (Max) or half the clique size (Min).
    pub ell: usize,
    /// Base leaves per vertex (Max only).
    pub base_leaves: usize,
    pub n_out: usize,
    pub m_out: usize,
    /// Vertex bound from the construction constants.
    pub n_bound: usize,
}

pub fn deannotate(inst: &AnnotatedInstance) -> Result<PlainKernel, DeannotateError> {
    match inst.variant {
        Variant::Max => deannotate_max(inst),
        Variant::Min => deannotate_min(inst),
    }
}

/// Leaves attached to every vertex in the Max construction.
///
/// ⌊1/α⌋ suffices while α ≤ 1/2. Above 1/2 a vertex's value can drop by
/// (2α−1) per selected neighbor, so the base count is raised until a vertex
/// with no selected leaves always beats a selected leaf.
pub fn max_leaf_base(alpha: &Rational, delta_tbar: usize, k: usize) -> usize {
    let base = floor_usize(&alpha.recip());
    let slope = alpha * int(2) - int(1);
    if slope <= Rational::zero() {
        return base;
    }
    let d = from_usize(delta_tbar.min(k.saturating_sub(1)));
    base + ceil_usize(&(slope * d / alpha))
}

fn trivial_no(inst: &AnnotatedInstance, kind: &str) -> PlainKernel {
    let t = match inst.variant {
        Variant::Max => int(1),
        Variant::Min => int(-1),
    };
    let instance =
        AnnotatedInstance::plain(Graph::empty(0), inst.k.max(1), t, inst.alpha.clone(), inst.variant);
    PlainKernel {
        instance,
        origin: Vec::new(),
        partial: Vec::new(),
        stats: DeannotationStats { kind: kind.to_string(), ..Default::default() },
    }
}

/// With exactly k vertices left only one set remains; emit the alive graph
/// with the bonuses folded into t.
fn exact_fit(inst: &AnnotatedInstance, kind: &str) -> PlainKernel {
    let keep = inst.alive_vertices();
    let g = inst.graph().induced(&keep);
    let bonus: Rational = keep.iter().map(|&v| inst.bonus(v)).sum();
    let partial = (0..keep.len()).filter(|&i| inst.in_t(keep[i])).collect();
    let stats = DeannotationStats {
        kind: kind.to_string(),
        n_annotated: keep.len(),
        t_size: inst.t_size(),
        n_out: g.n(),
        m_out: g.m(),
        n_bound: keep.len(),
        ..Default::default()
    };
    let instance = AnnotatedInstance::plain(g, inst.k, inst.t - bonus, inst.alpha.clone(), inst.variant);
    PlainKernel { instance, origin: keep.into_iter().map(Some).collect(), partial, stats }
}

fn check(inst: &AnnotatedInstance, variant: Variant) -> Result<(), DeannotateError> {
    if inst.variant != variant {
        return Err(DeannotateError::WrongVariant { expected: variant, got: inst.variant });
    }
    if inst.alpha.is_zero() {
        return Err(DeannotateError::AlphaZero);
    }
    for v in inst.alive_vertices() {
        inst.int_counter(v)?;
    }
    Ok(())
}

/// Max: every vertex v gets counter(v) + b leaves, every T-vertex ℓ more,
/// with ℓ = Δ_T̄ + Γ + ⌈|1/α − 3|·k⌉ + ⌊1/α⌋ and b = `max_leaf_base`;
/// t′ = t + α(ℓ|T| + b·k).
pub fn deannotate_max(inst: &AnnotatedInstance) -> Result<PlainKernel, DeannotateError> {
    check(inst, Variant::Max)?;
    deannotate_max_with(inst, max_leaf_base)
}

#[doc(hidden)]
pub fn deannotate_max_with(
    inst: &AnnotatedInstance,
    base_leaves: impl Fn(&Rational, usize, usize) -> usize,
) -> Result<PlainKernel, DeannotateError> {
    check(inst, Variant::Max)?;
    let n = inst.n_alive();
    if n < inst.k || inst.t_size() > inst.k {
        return Ok(trivial_no(inst, "max-trivial-no"));
    }
    if n == inst.k {
        return Ok(exact_fit(inst, "max-exact-fit"));
    }
    let a = *inst.alpha.value();
    let inv = a.recip();
    let delta = inst.delta_tbar();
    let gamma = inst.gamma()?;
    let k = inst.k;
    let spread = (inv - int(3)).abs() * from_usize(k);
    let ell = delta + gamma + ceil_usize(&spread) + floor_usize(&inv);
    let base = base_leaves(&a, delta, k);

    let keep = inst.alive_vertices();
    let mut edges = Vec::new();
    let mut next = keep.len();
    for (i, &v) in keep.iter().enumerate() {
        let mut leaves = inst.int_counter(v)? + base;
        if inst.in_t(v) {
            leaves += ell;
        }
        for _ in 0..leaves {
            edges.push((i, next));
            next += 1;
        }
    }
    let mut edges_g = inst.graph().induced(&keep).edges();
    edges_g.extend(edges);
    let g = Graph::from_edges(next, &edges_g).expect("leaf gadget is simple");
    let t_size = inst.t_size();
    let t = inst.t + a * from_usize(ell * t_size + base * k);
    let mut origin: Vec<Option<usize>> = keep.iter().copied().map(Some).collect();
    origin.resize(next, None);
    let partial = (0..keep.len()).filter(|&i| inst.in_t(keep[i])).collect();
    let n_bound = n * (1 + gamma - 1 + base) + ell * t_size;
    let stats = DeannotationStats {
        kind: "max-leaves".to_string(),
        n_annotated: n,
        t_size,
        delta,
        gamma,
        ell,
        base_leaves: base,
        n_out: g.n(),
        m_out: g.m(),
        n_bound,
    };
    let instance = AnnotatedInstance::plain(g, k, t, inst.alpha.clone(), Variant::Max);
    Ok(PlainKernel { instance, origin, partial, stats })
}

/// Min: a clique on 2ℓ+1 vertices with ℓ the smallest integer above
/// (Δ + Γ + |(1−3α)k|)/α; every v ∉ T is joined to ℓ + counter(v) of them;
/// t′ = t + αℓ(k − |T|).
pub fn deannotate_min(inst: &AnnotatedInstance) -> Result<PlainKernel, DeannotateError> {
    check(inst, Variant::Min)?;
    let n = inst.n_alive();
    if n < inst.k || inst.t_size() > inst.k {
        return Ok(trivial_no(inst, "min-trivial-no"));
    }
    if n == inst.k {
        return Ok(exact_fit(inst, "min-exact-fit"));
    }
    let a = *inst.alpha.value();
    let delta = inst.max_degree();
    let gamma = inst.gamma()?;
    let k = inst.k;
    let bound = (from_usize(delta + gamma) + inst.alpha.swap_margin(k)) / a;
    let ell = next_int_above(&bound) as usize;
    let keep = inst.alive_vertices();
    let base = keep.len();
    let clique = 2 * ell + 1;
    let mut edges = inst.graph().induced(&keep).edges();
    for i in 0..clique {
        for j in i + 1..clique {
            edges.push((base + i, base + j));
        }
    }
    for (i, &v) in keep.iter().enumerate() {
        if inst.in_t(v) {
            continue;
        }
        let links = ell + inst.int_counter(v)?;
        debug_assert!(links <= clique);
        for j in 0..links {
            edges.push((i, base + j));
        }
    }
    let g = Graph::from_edges(base + clique, &edges).expect("clique gadget is simple");
    let t_size = inst.t_size();
    let t = inst.t + a * from_usize(ell * (k - t_size));
    let mut origin: Vec<Option<usize>> = keep.iter().copied().map(Some).collect();
    origin.resize(g.n(), None);
    let partial = (0..keep.len()).filter(|&i| inst.in_t(keep[i])).collect();
    let stats = DeannotationStats {
        kind: "min-clique".to_string(),
        n_annotated: n,
        t_size,
        delta,
        gamma,
        ell,
        base_leaves: 0,
        n_out: g.n(),
        m_out: g.m(),
        n_bound: n + clique,
    };
    let instance = AnnotatedInstance::plain(g, k, t, inst.alpha.clone(), Variant::Min);
    Ok(PlainKernel { instance, origin, partial, stats })
}
