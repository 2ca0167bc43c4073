//! Exact solvers, from brute force to the parameterized branching algorithms.

mod auto;
mod bounded;
mod branch;
mod brute;
mod densest;
mod hindex;
mod third;

pub use auto::{solve_auto, AutoOptions};
pub use bounded::solve_bounded_degree;
pub use branch::branch_degrading;
pub use brute::{brute_force, brute_force_naive, DEFAULT_BUDGET};
pub use densest::densest_vc;
pub use hindex::{fold_partial_solution, hindex_fpt_max};
pub use third::solve_third;

use crate::fcgp::{ser_opt_rational, AnnotatedInstance, InstanceError};
use crate::ramsey::RamseyError;
use crate::rational::Rational;
use serde::Serialize;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("budget exceeded: {what} needs more than {limit}")]
    Budget { what: String, limit: u64 },
    #[error("{0}")]
    Guard(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub decision: Decision,
    /// Present iff the decision is yes.
    pub witness: Option<Vec<usize>>,
    /// Optimal value over all feasible sets; `None` when no set of size k contains T.
    #[serde(serialize_with = "ser_opt_rational")]
    pub best_value: Option<Rational>,
    /// A set attaining `best_value`.
    pub best_set: Option<Vec<usize>>,
    pub solver_id: String,
    pub nodes_explored: u64,
    /// False when the solver stopped at a witness without proving optimality;
    /// `best_value` is then the witness value.
    pub optimal: bool,
}

impl SolveResult {
    pub(crate) fn from_optimum(
        inst: &AnnotatedInstance,
        best: Option<(Rational, Vec<usize>)>,
        solver_id: &str,
        nodes: u64,
    ) -> Self {
        let (best_value, best_set) = match best {
            Some((v, mut s)) => {
                s.sort_unstable();
                (Some(v), Some(s))
            }
            None => (None, None),
        };
        let yes = best_value.as_ref().is_some_and(|v| inst.variant.meets(v, &inst.t));
        SolveResult {
            decision: if yes { Decision::Yes } else { Decision::No },
            witness: if yes { best_set.clone() } else { None },
            best_value,
            best_set,
            solver_id: solver_id.to_string(),
            nodes_explored: nodes,
            optimal: true,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }
}

/// Checks that `set` is a feasible solution of `inst` meeting t.
pub fn is_witness(inst: &AnnotatedInstance, set: &[usize]) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == set.len()
        && s.len() == inst.k
        && s.iter().all(|&v| v < inst.capacity() && inst.is_alive(v))
        && inst.partial_solution().iter().all(|v| s.binary_search(v).is_ok())
        && inst.variant.meets(&inst.val(&s), &inst.t)
}
