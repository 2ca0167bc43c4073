//! Rules that shrink the maximum degree through large independent sets in
//! neighborhoods: the c-closed pair and the biclique-free pair.

use super::{require_degrading, Kernelizer, RuleError};
use crate::fcgp::AnnotatedInstance;
use crate::ramsey::{
    bcfree_independent_set_in, bcfree_ramsey_bound, cclosed_ramsey_in, greedy_degenerate_is, rc_bound,
    RamseyError, WitnessKind,
};

/// X and I with I independent, every vertex of X adjacent to all of I, and
/// every vertex outside X adjacent to at most `cap` vertices of I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiPair {
    pub x: Vec<usize>,
    pub i: Vec<usize>,
    pub cap: usize,
}

fn pow(k: usize, e: usize) -> usize {
    k.saturating_pow(e as u32)
}

/// Excludes free vertices v with |X_v| ≥ (c′−1)k, where X_v are the
/// neighbors at least as good as v by weighted degree and c′ = max(c, 2).
/// Returns the number of exclusions.
pub fn rr_closure_better(kz: &mut Kernelizer, c: usize) -> Result<usize, RuleError> {
    require_degrading(&kz.inst, "rr_closure_better")?;
    let threshold = (c.max(2) - 1) * kz.inst.k;
    let mut count = 0;
    loop {
        let inst = &kz.inst;
        let hit = inst.free_vertices().into_iter().find(|&v| {
            let w = inst.weighted_degree(v);
            inst.neighbors(v).filter(|&u| inst.variant.as_good(&inst.weighted_degree(u), &w)).count() >= threshold
        });
        let Some(v) = hit else { return Ok(count) };
        kz.exclude("rr_closure_better", v, format!("threshold={threshold}"))?;
        count += 1;
    }
}

/// Free neighbors of v.
fn free_neighbors(inst: &AnnotatedInstance, v: usize) -> Vec<usize> {
    inst.neighbors(v).filter(|&u| !inst.in_t(u)).collect()
}

/// Grows X from {v} while some vertex outside X sees more than
/// `size(i)` vertices of I, where i = |X|. Properties are re-checked.
fn grow(
    inst: &AnnotatedInstance,
    v: usize,
    mut i_set: Vec<usize>,
    levels: usize,
    size: impl Fn(usize) -> usize,
) -> Result<XiPair, RuleError> {
    let mut x = vec![v];
    loop {
        let cap = size(x.len());
        let mut in_i = vec![false; inst.capacity()];
        for &w in &i_set {
            in_i[w] = true;
        }
        let pick = inst.alive_vertices().into_iter().filter(|u| !x.contains(u)).find_map(|u| {
            let hits: Vec<usize> = inst.neighbors(u).filter(|&w| in_i[w]).collect();
            (hits.len() > cap).then_some((u, hits))
        });
        match pick {
            Some((u, mut hits)) if x.len() < levels => {
                x.push(u);
                hits.sort_unstable();
                i_set = hits;
            }
            Some((u, _)) => {
                return Err(RamseyError::PreconditionViolation(format!(
                    "vertex {u} extends X beyond {levels} vertices; the closure or biclique bound is violated"
                ))
                .into())
            }
            None => {
                let pair = XiPair { x, i: i_set, cap };
                verify(inst, &pair)?;
                return Ok(pair);
            }
        }
    }
}

fn verify(inst: &AnnotatedInstance, p: &XiPair) -> Result<(), RuleError> {
    let g = inst.graph();
    let fail = |m: &str| Err(RamseyError::VerificationFailure(m.to_string()).into());
    if !g.is_independent(&p.i) || p.i.iter().any(|&w| !inst.is_alive(w) || inst.in_t(w)) {
        return fail("I is not an independent set of free vertices");
    }
    if p.x.iter().any(|&u| p.i.iter().any(|&w| !g.has_edge(u, w))) {
        return fail("some vertex of X misses a vertex of I");
    }
    let mut in_i = vec![false; inst.capacity()];
    for &w in &p.i {
        in_i[w] = true;
    }
    for u in inst.alive_vertices() {
        if !p.x.contains(&u) && inst.neighbors(u).filter(|&w| in_i[w]).count() > p.cap {
            return fail("a vertex outside X has too many neighbors in I");
        }
    }
    Ok(())
}

/// b = (k+1)k^{c′−1} and q = (c′−1)k+1; the guard is a free vertex with at
/// least `rc_bound(q, b, c′)` free neighbors.
fn closure_params(k: usize, c: usize) -> (usize, usize, u128) {
    let c = c.max(2);
    let b = (k + 1).saturating_mul(pow(k, c - 1));
    let q = (c - 1) * k + 1;
    (q, b, rc_bound(q, b, c))
}

/// Finds (X, I) around the first free vertex whose free neighborhood reaches
/// the c-closed Ramsey bound. |I| ≥ (k+1)k^{c′−|X|}; outside X at most
/// (k+1)k^{c′−|X|−1} neighbors in I. `None` when no vertex qualifies.
pub fn find_closure_xi(inst: &AnnotatedInstance, c: usize) -> Result<Option<XiPair>, RuleError> {
    let k = inst.k;
    let c2 = c.max(2);
    let (q, b, bound) = closure_params(k, c);
    let Some(v) = inst.free_vertices().into_iter().find(|&v| free_neighbors(inst, v).len() as u128 >= bound) else {
        return Ok(None);
    };
    let w = cclosed_ramsey_in(inst.graph(), &free_neighbors(inst, v), q, b, c2)?;
    if w.kind == WitnessKind::Clique {
        return Err(RamseyError::PreconditionViolation(format!(
            "clique of size {q} among free vertices; rr_closure_better must run first"
        ))
        .into());
    }
    let pair = grow(inst, v, w.vertices, c2 - 1, |i| (k + 1).saturating_mul(pow(k, c2 - i - 1)))?;
    if pair.i.len() < (k + 1).saturating_mul(pow(k, c2 - pair.x.len())) {
        return Err(RamseyError::VerificationFailure("I below (k+1)k^{c-i}".into()).into());
    }
    Ok(Some(pair))
}

/// Excludes the worst vertex of I by weighted degree (ties: smallest index).
pub fn rr_closure_independent_set(kz: &mut Kernelizer, pair: &XiPair) -> Result<(), RuleError> {
    exclude_worst(kz, pair, "rr_closure_independent_set")
}

pub fn rr_bcfree_independent_set(kz: &mut Kernelizer, pair: &XiPair) -> Result<(), RuleError> {
    exclude_worst(kz, pair, "rr_bcfree_independent_set")
}

fn exclude_worst(kz: &mut Kernelizer, pair: &XiPair, rule: &str) -> Result<(), RuleError> {
    require_degrading(&kz.inst, rule)?;
    if kz.inst.k < 2 {
        return Err(RuleError::Guard(format!("{rule} requires k >= 2")));
    }
    let inst = &kz.inst;
    let worst = pair
        .i
        .iter()
        .copied()
        .min_by(|&a, &b| inst.variant.order(&inst.weighted_degree(b), &inst.weighted_degree(a)).then(a.cmp(&b)))
        .ok_or_else(|| RuleError::Guard(format!("{rule} needs a nonempty I")))?;
    kz.exclude(rule, worst, format!("x={:?} i={}", pair.x, pair.i.len()))
}

/// General biclique-free version: I_v from the K_{a,b}-free Ramsey bound.
/// |I| ≥ bk^{a−|X|}+1; outside X at most bk^{a−|X|−1} neighbors in I.
pub fn find_bcfree_xi(inst: &AnnotatedInstance, a: usize, b: usize) -> Result<Option<XiPair>, RuleError> {
    let k = inst.k;
    let a = a.max(2);
    let size = b.saturating_mul(pow(k, a - 1)) + 1;
    let bound = bcfree_ramsey_bound(a, b, size);
    let Some(v) = inst.free_vertices().into_iter().find(|&v| free_neighbors(inst, v).len() as u128 >= bound) else {
        return Ok(None);
    };
    let i_set = bcfree_independent_set_in(inst.graph(), &free_neighbors(inst, v), a, b, size)?;
    finish_bcfree(inst, v, i_set, a, b)
}

/// Degenerate version with a = b = d+1: a d-degenerate neighborhood of
/// (d+1)(bk^{a−1}+1) vertices holds an independent set of bk^{a−1}+1.
pub fn find_degenerate_xi(inst: &AnnotatedInstance, d: usize) -> Result<Option<XiPair>, RuleError> {
    let (a, b) = (d + 1, d + 1);
    let a2 = a.max(2);
    let size = b.saturating_mul(pow(inst.k, a2 - 1)) + 1;
    let guard = (d + 1).saturating_mul(size);
    let Some(v) = inst.free_vertices().into_iter().find(|&v| free_neighbors(inst, v).len() >= guard) else {
        return Ok(None);
    };
    let i_set = greedy_degenerate_is(inst.graph(), &free_neighbors(inst, v), size).ok_or_else(|| {
        RuleError::from(RamseyError::PreconditionViolation(format!(
            "neighborhood of {v} is not {d}-degenerate enough for an independent set of {size}"
        )))
    })?;
    finish_bcfree(inst, v, i_set, a2, b)
}

fn finish_bcfree(
    inst: &AnnotatedInstance,
    v: usize,
    mut i_set: Vec<usize>,
    a: usize,
    b: usize,
) -> Result<Option<XiPair>, RuleError> {
    let k = inst.k;
    i_set.sort_unstable();
    let pair = grow(inst, v, i_set, a - 1, |i| b.saturating_mul(pow(k, a - i - 1)))?;
    if pair.i.len() < b.saturating_mul(pow(k, a - pair.x.len())) + 1 {
        return Err(RamseyError::VerificationFailure("I below bk^{a-i}+1".into()).into());
    }
    Ok(Some(pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcgp::{Alpha, Variant};
    use crate::graph::Graph;
    use crate::rational::int;

    #[test]
    fn closure_better_on_k5() {
        let inst = AnnotatedInstance::plain(Graph::complete(5), 2, int(0), Alpha::frac(1, 2), Variant::Max);
        let mut kz = Kernelizer::new("t", &inst);
        rr_closure_better(&mut kz, 1).unwrap();
        assert!(kz.inst.n_alive() <= 2);
        let empty = AnnotatedInstance::plain(Graph::empty(4), 2, int(0), Alpha::frac(1, 2), Variant::Max);
        let mut kz = Kernelizer::new("t", &empty);
        assert_eq!(rr_closure_better(&mut kz, 2).unwrap(), 0);
    }

    #[test]
    fn closure_xi_on_star() {
        assert_eq!(closure_params(2, 2), (3, 6, 21));
        let inst = AnnotatedInstance::plain(Graph::star(25), 2, int(0), Alpha::frac(1, 2), Variant::Max);
        let p = find_closure_xi(&inst, 2).unwrap().unwrap();
        assert_eq!(p.x, vec![0]);
        assert!(p.i.len() >= 6);
        let mut kz = Kernelizer::new("t", &inst);
        rr_closure_independent_set(&mut kz, &p).unwrap();
        assert_eq!(kz.inst.n_alive(), 25);
        let small = AnnotatedInstance::plain(Graph::star(20), 2, int(0), Alpha::frac(1, 2), Variant::Max);
        assert_eq!(find_closure_xi(&small, 2).unwrap(), None);
    }

    #[test]
    fn degenerate_xi_on_star() {
        let inst = AnnotatedInstance::plain(Graph::star(10), 2, int(0), Alpha::frac(1, 2), Variant::Max);
        let p = find_degenerate_xi(&inst, 1).unwrap().unwrap();
        assert_eq!(p.x, vec![0]);
        assert!(p.i.len() >= 5);
        let small = AnnotatedInstance::plain(Graph::star(9), 2, int(0), Alpha::frac(1, 2), Variant::Max);
        assert_eq!(find_degenerate_xi(&small, 1).unwrap(), None);
    }
}
