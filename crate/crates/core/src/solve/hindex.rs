//! Branching over the high-degree vertices for Max with α < 1/3.

use super::{solve_bounded_degree, SolveError, SolveResult};
use crate::fcgp::{AnnotatedInstance, InstanceError, Variant};
use crate::ramsey::binom;
use crate::rational::Rational;

/// Folds every vertex of T out of the graph (see `AnnotatedInstance::fold`).
/// Returns the residual instance, whose T is empty, and the folded vertices.
/// For every free set R, val(T ∪ R) − t equals val′(R) − t′.
pub fn fold_partial_solution(inst: &AnnotatedInstance) -> Result<(AnnotatedInstance, Vec<usize>), InstanceError> {
    let mut res = inst.clone();
    let folded = inst.partial_solution();
    for &u in &folded {
        res.fold(u)?;
    }
    Ok((res, folded))
}

/// For each choice B of high-degree vertices (degree > h) to keep, the others
/// are excluded, B joins T, T is folded away and the remaining
/// bounded-degree instance is solved exactly.
pub fn hindex_fpt_max(inst: &AnnotatedInstance, h: usize, budget: u64) -> Result<SolveResult, SolveError> {
    if inst.variant != Variant::Max || inst.alpha.value() >= &crate::rational::frac(1, 3) {
        return Err(SolveError::Guard(format!(
            "hindex_fpt_max requires variant max with alpha < 1/3, got {} alpha={}",
            inst.variant, inst.alpha
        )));
    }
    let big: Vec<usize> = inst.free_vertices().into_iter().filter(|&v| inst.degree(v) > h).collect();
    let room = inst.k_rem().min(big.len());
    let branches: u128 = (0..=room).map(|j| binom(big.len() as u128, j as u128)).sum();
    if branches > budget as u128 {
        return Err(SolveError::Budget { what: "h-index branches".into(), limit: budget });
    }
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut nodes = 0u64;
    let mut pick = Vec::new();
    for size in 0..=room {
        for_each_subset(big.len(), size, &mut pick, &mut |pick| {
            let mut b = inst.clone();
            for (i, &v) in big.iter().enumerate() {
                if !pick.contains(&i) {
                    b.exclude(v)?;
                }
            }
            for &i in pick {
                b.include(big[i])?;
            }
            let r = solve_bounded_degree(&b, budget)?;
            nodes += 1 + r.nodes_explored;
            if let (Some(v), Some(s)) = (r.best_value, r.best_set) {
                let v = v + (inst.t - b.t);
                if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, s));
                }
            }
            Ok(())
        })?;
    }
    Ok(SolveResult::from_optimum(inst, best, "hindex-fpt", nodes))
}

fn for_each_subset(
    n: usize,
    size: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<(), SolveError>,
) -> Result<(), SolveError> {
    fn rec(
        n: usize,
        start: usize,
        size: usize,
        pick: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<(), SolveError>,
    ) -> Result<(), SolveError> {
        if pick.len() == size {
            return f(pick);
        }
        for i in start..n {
            pick.push(i);
            rec(n, i + 1, size, pick, f)?;
            pick.pop();
        }
        Ok(())
    }
    pick.clear();
    rec(n, 0, size, pick, f)
}
