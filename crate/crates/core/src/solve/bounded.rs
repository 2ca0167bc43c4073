//! Exact solver for instances whose components are small: enumerate each
//! component, then combine per-component tables by cardinality.

use super::{fold_partial_solution, SolveError, SolveResult};
use crate::fcgp::AnnotatedInstance;
use crate::ramsey::binom;
use crate::rational::Rational;

type Entry = Option<(Rational, Vec<usize>)>;

fn better(inst: &AnnotatedInstance, cand: &Rational, cur: &Entry) -> bool {
    match cur {
        None => true,
        Some((v, _)) => inst.variant.strictly_better(cand, v),
    }
}

/// Best value of a j-subset of `comp`, for every j ≤ cap.
fn component_table(inst: &AnnotatedInstance, comp: &[usize], cap: usize) -> Vec<Entry> {
    let mut table: Vec<Entry> = vec![None; cap + 1];
    let mut chosen: Vec<usize> = Vec::new();
    let mut mark = vec![false; inst.capacity()];
    fn rec(
        inst: &AnnotatedInstance,
        comp: &[usize],
        i: usize,
        cap: usize,
        val: Rational,
        chosen: &mut Vec<usize>,
        mark: &mut Vec<bool>,
        table: &mut Vec<Entry>,
    ) {
        let j = chosen.len();
        if better(inst, &val, &table[j]) {
            table[j] = Some((val, chosen.clone()));
        }
        if j == cap {
            return;
        }
        for x in i..comp.len() {
            let v = comp[x];
            let c = inst.contribution_masked(v, mark);
            chosen.push(v);
            mark[v] = true;
            rec(inst, comp, x + 1, cap, val + c, chosen, mark, table);
            mark[v] = false;
            chosen.pop();
        }
    }
    rec(inst, comp, 0, cap, Rational::default(), &mut chosen, &mut mark, &mut table);
    table
}

/// Exact optimum when per-component enumeration fits the budget.
pub fn solve_bounded_degree(inst: &AnnotatedInstance, budget: u64) -> Result<SolveResult, SolveError> {
    let (res, folded) = fold_partial_solution(inst)?;
    let offset = inst.t - res.t;
    let k = res.k;
    let comps = res.graph().components(res.alive_mask());
    let mut work: u128 = 0;
    for c in &comps {
        for j in 0..=c.len().min(k) {
            work = work.saturating_add(binom(c.len() as u128, j as u128));
        }
    }
    if work > budget as u128 {
        return Err(SolveError::Budget { what: "component enumeration".into(), limit: budget });
    }
    let mut dp: Vec<Entry> = vec![None; k + 1];
    dp[0] = Some((Rational::default(), Vec::new()));
    for c in &comps {
        let table = component_table(&res, c, c.len().min(k));
        let mut next: Vec<Entry> = dp.clone();
        for (j1, e1) in dp.iter().enumerate() {
            let Some((v1, s1)) = e1 else { continue };
            for (j2, e2) in table.iter().enumerate().skip(1) {
                let Some((v2, s2)) = e2 else { continue };
                if j1 + j2 > k {
                    break;
                }
                let v = v1 + v2;
                if better(&res, &v, &next[j1 + j2]) {
                    let mut s = s1.clone();
                    s.extend_from_slice(s2);
                    next[j1 + j2] = Some((v, s));
                }
            }
        }
        dp = next;
    }
    let best = dp[k].take().map(|(v, mut s)| {
        s.extend_from_slice(&folded);
        (v + offset, s)
    });
    Ok(SolveResult::from_optimum(inst, best, "bounded-degree", work as u64))
}
