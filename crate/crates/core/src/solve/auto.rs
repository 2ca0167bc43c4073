//! Solver dispatch by regime and structural parameters.

use super::{
    branch_degrading, brute_force, densest_vc, hindex_fpt_max, solve_third, Decision, SolveError, SolveResult,
    DEFAULT_BUDGET,
};
use crate::fcgp::{AnnotatedInstance, Variant};
use crate::graph::{compute_profile, DEFAULT_VC_BUDGET};
use crate::rational::from_usize;

#[derive(Debug, Clone, Copy)]
pub struct AutoOptions {
    /// Node/leaf budget handed to each solver.
    pub budget: u64,
    /// Largest vertex cover searched for when routing to `densest_vc`.
    pub vc_budget: usize,
}

impl Default for AutoOptions {
    fn default() -> Self {
        AutoOptions { budget: DEFAULT_BUDGET, vc_budget: DEFAULT_VC_BUDGET }
    }
}

/// Picks a solver by regime. Every route is exact; a route that runs out of
/// budget falls back to brute force, and if that also runs out the result is
/// a `Budget` error rather than a guess. The chosen route is the `solver_id`.
pub fn solve_auto(inst: &AnnotatedInstance, opts: AutoOptions) -> Result<SolveResult, SolveError> {
    if inst.alpha.is_third() {
        return solve_third(inst);
    }
    let (g, map) = inst.alive_graph();
    let want_vc = inst.variant == Variant::Max && inst.alpha.is_zero() && inst.t_size() == 0;
    let profile = compute_profile(&g, want_vc, opts.vc_budget);

    if inst.variant == Variant::Min && inst.is_plain() && inst.t >= from_usize(profile.degeneracy * inst.k) {
        if let Some(r) = degeneracy_prefix(inst, &profile.degeneracy_ordering, &map) {
            return Ok(r);
        }
    }

    let routed = if inst.alpha.is_degrading(inst.variant) && !inst.alpha.is_zero() {
        Some(branch_degrading(inst, profile.degeneracy, opts.budget))
    } else if want_vc && profile.vertex_cover.is_some() {
        let cover: Vec<usize> = profile.vertex_cover.as_ref().into_iter().flatten().map(|&v| map[v]).collect();
        Some(densest_vc(inst, &cover, opts.budget))
    } else if inst.variant == Variant::Max && !inst.alpha.is_degrading(Variant::Max) {
        Some(hindex_fpt_max(inst, profile.h_index, opts.budget))
    } else {
        None
    };
    match routed {
        Some(Ok(r)) => return Ok(r),
        Some(Err(SolveError::Budget { .. })) | None => {}
        Some(Err(e)) => return Err(e),
    }
    brute_force(inst, opts.budget).map_err(|e| match e {
        SolveError::Budget { limit, .. } => SolveError::Budget { what: "every applicable solver".into(), limit },
        e => e,
    })
}

/// In Min, the first k vertices of a degeneracy ordering touch at most dk
/// edges, each weighted at most 1, so they meet any t ≥ dk.
fn degeneracy_prefix(inst: &AnnotatedInstance, ordering: &[usize], map: &[usize]) -> Option<SolveResult> {
    if ordering.len() < inst.k {
        return None;
    }
    let mut set: Vec<usize> = ordering[..inst.k].iter().map(|&v| map[v]).collect();
    set.sort_unstable();
    let value = inst.val(&set);
    if !inst.variant.meets(&value, &inst.t) {
        return None;
    }
    Some(SolveResult {
        decision: Decision::Yes,
        witness: Some(set.clone()),
        best_value: Some(value),
        best_set: Some(set),
        solver_id: "degeneracy-prefix".into(),
        nodes_explored: 0,
        optimal: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcgp::Alpha;
    use crate::graph::Graph;
    use crate::rational::{frac, int};

    fn check(inst: &AnnotatedInstance, route: &str) {
        let r = solve_auto(inst, AutoOptions::default()).unwrap();
        let b = brute_force(inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.solver_id, route);
        assert_eq!(r.best_value, b.best_value);
        assert_eq!(r.decision, b.decision);
    }

    #[test]
    fn routes() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        check(&AnnotatedInstance::plain(g.clone(), 3, int(2), Alpha::frac(1, 2), Variant::Max), "branch-degrading");
        check(&AnnotatedInstance::plain(g.clone(), 3, int(3), Alpha::frac(0, 1), Variant::Max), "densest-vc");
        check(&AnnotatedInstance::plain(g.clone(), 3, int(3), Alpha::frac(1, 4), Variant::Max), "hindex-fpt");
        check(&AnnotatedInstance::plain(g.clone(), 3, frac(5, 3), Alpha::frac(1, 3), Variant::Max), "third");
        check(&AnnotatedInstance::plain(g.clone(), 2, int(1), Alpha::frac(2, 3), Variant::Min), "brute");
    }

    #[test]
    fn min_prefix_shortcut() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let inst = AnnotatedInstance::plain(g, 3, int(6), Alpha::frac(1, 4), Variant::Min);
        let r = solve_auto(&inst, AutoOptions::default()).unwrap();
        assert_eq!(r.solver_id, "degeneracy-prefix");
        assert!(r.is_yes() && !r.optimal);
        assert!(inst.variant.meets(&inst.val(r.witness.as_ref().unwrap()), &inst.t));
    }
}
