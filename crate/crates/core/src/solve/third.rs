use super::{SolveError, SolveResult};
use crate::fcgp::AnnotatedInstance;

/// α = 1/3: contributions no longer depend on the partial solution, so the
/// k − |T| free vertices with the best α·deg⁺ are optimal.
pub fn solve_third(inst: &AnnotatedInstance) -> Result<SolveResult, SolveError> {
    if !inst.alpha.is_third() {
        return Err(SolveError::Guard(format!("solve_third requires alpha=1/3, got {}", inst.alpha)));
    }
    let mut free = inst.free_vertices();
    let need = inst.k_rem();
    if inst.t_size() > inst.k || free.len() < need {
        return Ok(SolveResult::from_optimum(inst, None, "third", 0));
    }
    let w: Vec<_> = (0..inst.capacity()).map(|v| if inst.is_alive(v) { inst.weighted_degree(v) } else { Default::default() }).collect();
    free.sort_by(|&a, &b| inst.variant.order(&w[a], &w[b]).then(a.cmp(&b)));
    let mut set = inst.partial_solution();
    set.extend_from_slice(&free[..need]);
    let value = inst.val(&set);
    Ok(SolveResult::from_optimum(inst, Some((value, set)), "third", free.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcgp::{Alpha, Variant};
    use crate::graph::Graph;
    use crate::rational::{frac, int};

    #[test]
    fn star_center_and_leaf() {
        let max = AnnotatedInstance::plain(Graph::star(4), 1, int(0), Alpha::frac(1, 3), Variant::Max);
        let r = solve_third(&max).unwrap();
        assert_eq!((r.best_set.clone().unwrap(), r.best_value), (vec![0], Some(frac(4, 3))));
        let min = AnnotatedInstance::plain(Graph::star(4), 1, int(1), Alpha::frac(1, 3), Variant::Min);
        let r = solve_third(&min).unwrap();
        assert_eq!((r.best_set.clone().unwrap(), r.best_value), (vec![1], Some(frac(1, 3))));
        let bad = AnnotatedInstance::plain(Graph::star(4), 1, int(1), Alpha::frac(1, 2), Variant::Min);
        assert!(solve_third(&bad).is_err());
    }
}
