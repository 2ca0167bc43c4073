use super::{SolveError, SolveResult};
use crate::fcgp::{AnnotatedInstance, Variant};
use crate::graph::is_vertex_cover;
use crate::rational::{from_usize, Rational};

/// Densest k-subgraph (Max, α = 0) by trying every subset A of a vertex
/// cover: the rest of the solution lies in the independent side, where a
/// vertex is worth its edges into A plus its bonus.
pub fn densest_vc(inst: &AnnotatedInstance, cover: &[usize], budget: u64) -> Result<SolveResult, SolveError> {
    if inst.variant != Variant::Max || !inst.alpha.is_zero() || inst.t_size() > 0 {
        return Err(SolveError::Guard(format!(
            "densest_vc requires variant max, alpha=0 and an empty partial solution, got {} alpha={}",
            inst.variant, inst.alpha
        )));
    }
    let (g, map) = inst.alive_graph();
    let mut pos = vec![usize::MAX; inst.capacity()];
    for (i, &v) in map.iter().enumerate() {
        pos[v] = i;
    }
    if cover.iter().any(|&v| v >= inst.capacity() || !inst.is_alive(v)) {
        return Err(SolveError::Guard("cover contains a vertex that is not present".into()));
    }
    let local: Vec<usize> = cover.iter().map(|&v| pos[v]).collect();
    if !is_vertex_cover(&g, &local) {
        return Err(SolveError::Guard("invalid vertex cover: some edge is uncovered".into()));
    }
    if local.len() >= 63 || (1u64 << local.len()) > budget {
        return Err(SolveError::Budget { what: "cover subsets".into(), limit: budget });
    }
    let mut in_cover = vec![false; g.n()];
    for &v in &local {
        in_cover[v] = true;
    }
    let indep: Vec<usize> = (0..g.n()).filter(|&v| !in_cover[v]).collect();
    let bonus = |v: usize| *inst.bonus(map[v]);
    let k = inst.k;
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut nodes = 0u64;
    for mask in 0u64..(1u64 << local.len()) {
        let a: Vec<usize> = (0..local.len()).filter(|&i| mask >> i & 1 == 1).map(|i| local[i]).collect();
        if a.len() > k || indep.len() < k - a.len() {
            continue;
        }
        nodes += 1;
        let mut in_a = vec![false; g.n()];
        for &v in &a {
            in_a[v] = true;
        }
        let mut value = from_usize(g.edge_counts(&a).0) + a.iter().map(|&v| bonus(v)).sum::<Rational>();
        let mut gains: Vec<(Rational, usize)> = indep
            .iter()
            .map(|&v| (from_usize(g.neighbors(v).iter().filter(|&&u| in_a[u]).count()) + bonus(v), v))
            .collect();
        gains.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let mut set = a.clone();
        for (gain, v) in gains.into_iter().take(k - a.len()) {
            value += gain;
            set.push(v);
        }
        if best.as_ref().is_none_or(|(bv, _)| value > *bv) {
            best = Some((value, set.iter().map(|&v| map[v]).collect()));
        }
    }
    Ok(SolveResult::from_optimum(inst, best, "densest-vc", nodes))
}
