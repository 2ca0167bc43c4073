//! Branching for the degrading cases on d-degenerate graphs.

use super::{SolveError, SolveResult};
use crate::fcgp::AnnotatedInstance;
use crate::ramsey::greedy_degenerate_is;
use crate::rational::{common_denominator, from_usize, Rational};
use num_traits::Zero;

struct Brancher {
    d: usize,
    nodes: u64,
    budget: u64,
}

impl Brancher {
    /// Some set of size k containing T that meets t, or `None`.
    ///
    /// Every solution has a free vertex whose contribution w.r.t. T reaches
    /// t′/k′ (the set L); branching on L is exhaustive because adding vertices
    /// to T only lowers (Max) or raises (Min) later contributions. When L is
    /// large, an independent k′-subset of L meets t outright.
    fn decide(&mut self, inst: &AnnotatedInstance) -> Result<Option<Vec<usize>>, SolveError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::Budget { what: "degrading branching".into(), limit: self.budget });
        }
        let k_rem = inst.k_rem();
        if k_rem == 0 {
            let t_set = inst.partial_solution();
            return Ok(inst.variant.meets(&inst.val(&t_set), &inst.t).then_some(t_set));
        }
        let free = inst.free_vertices();
        if free.len() < k_rem {
            return Ok(None);
        }
        let threshold = inst.t_rem() / from_usize(k_rem);
        let l: Vec<usize> =
            free.into_iter().filter(|&v| inst.variant.meets(&inst.contribution_t(v), &threshold)).collect();
        if l.len() >= (self.d + 1) * k_rem {
            if let Some(ind) = greedy_degenerate_is(inst.graph(), &l, k_rem) {
                let mut set = inst.partial_solution();
                set.extend(ind);
                set.sort_unstable();
                if inst.variant.meets(&inst.val(&set), &inst.t) {
                    return Ok(Some(set));
                }
            }
        }
        for v in l {
            let child = inst.include_vertex(v)?;
            if let Some(s) = self.decide(&child)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }
}

/// Exact optimum via repeated decisions, each tightening the threshold by one
/// unit of the value lattice.
pub fn branch_degrading(inst: &AnnotatedInstance, d: usize, budget: u64) -> Result<SolveResult, SolveError> {
    if !inst.alpha.is_degrading(inst.variant) || inst.alpha.is_zero() {
        return Err(SolveError::Guard(format!(
            "branch_degrading requires a degrading variant with alpha != 0: {} needs alpha {}, got {}",
            inst.variant,
            if inst.variant == crate::fcgp::Variant::Max { ">1/3" } else { "in (0,1/3)" },
            inst.alpha
        )));
    }
    let mut br = Brancher { d, nodes: 0, budget };
    if inst.t_size() > inst.k || inst.free_vertices().len() < inst.k_rem() {
        return Ok(SolveResult::from_optimum(inst, None, "branch-degrading", 0));
    }
    let denom = common_denominator(
        std::iter::once(inst.alpha.value()).chain(inst.alive_vertices().into_iter().map(|v| inst.bonus(v))),
    );
    let unit = Rational::new(1, denom);
    let start = match inst.variant {
        crate::fcgp::Variant::Max => Rational::zero() - from_usize(inst.m_alive()),
        crate::fcgp::Variant::Min => {
            let bonus: Rational = inst.alive_vertices().iter().map(|&v| inst.bonus(v)).sum();
            from_usize(inst.m_alive()) + bonus
        }
    };
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut probe = inst.with_t(start);
    while let Some(set) = br.decide(&probe)? {
        let value = inst.val(&set);
        probe = inst.with_t(inst.variant.harder(&value, &unit));
        best = Some((value, set));
    }
    Ok(SolveResult::from_optimum(inst, best, "branch-degrading", br.nodes))
}
