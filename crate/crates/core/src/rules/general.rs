//! Rules for the degrading regime: inclusion of satisfactory vertices,
//! exclusion of needless ones, counter shifting, and pruning by the number
//! of better vertices.

use super::{require_degrading, Kernelizer, RuleError};
use crate::fcgp::{AnnotatedInstance, Variant};
use crate::rational::{from_usize, int, Rational};
use num_traits::Signed;

/// (Δ_T̄+1)(k−1)+1
pub fn delta_better_threshold(inst: &AnnotatedInstance) -> usize {
    (inst.delta_tbar() + 1) * inst.k.saturating_sub(1) + 1
}

/// Excludes, one at a time, the first free vertex that has at least
/// (Δ_T̄+1)(k−1)+1 free vertices at least as good as it w.r.t. T.
/// Returns the number of exclusions.
pub fn rr_delta_better(kz: &mut Kernelizer) -> Result<usize, RuleError> {
    require_degrading(&kz.inst, "rr_delta_better")?;
    let mut count = 0;
    loop {
        let inst = &kz.inst;
        let free = inst.free_vertices();
        let threshold = delta_better_threshold(inst);
        if free.len() <= threshold {
            return Ok(count);
        }
        let contrib: Vec<(usize, Rational)> = free.iter().map(|&v| (v, inst.contribution_t(v))).collect();
        let mut sorted: Vec<Rational> = contrib.iter().map(|(_, c)| *c).collect();
        sorted.sort();
        let variant = inst.variant;
        // Free vertices other than v that are at least as good as v.
        let better = |c: &Rational| -> usize {
            match variant {
                Variant::Max => sorted.len() - sorted.partition_point(|x| x < c) - 1,
                Variant::Min => sorted.partition_point(|x| x <= c) - 1,
            }
        };
        let Some(&(v, _)) = contrib.iter().find(|(_, c)| better(c) >= threshold) else {
            return Ok(count);
        };
        kz.exclude("rr_delta_better", v, format!("threshold={threshold}"))?;
        count += 1;
    }
}

/// (3α−1)(k−1)
fn margin(inst: &AnnotatedInstance) -> Rational {
    -inst.alpha.one_minus_three() * from_usize(inst.k.saturating_sub(1))
}

fn average(inst: &AnnotatedInstance) -> Rational {
    inst.t_rem() / from_usize(inst.k_rem())
}

/// contribution(v,T) ≥ t′/k′ + (3α−1)(k−1) for Max, ≤ for Min.
pub fn is_satisfactory(inst: &AnnotatedInstance, v: usize) -> bool {
    if inst.k_rem() == 0 {
        return false;
    }
    let bar = average(inst) + margin(inst);
    inst.variant.meets(&inst.contribution_t(v), &bar)
}

/// contribution(v,T) < t′/k′ − (3α−1)(k−1)² for Max, > for Min.
pub fn is_needless(inst: &AnnotatedInstance, v: usize) -> bool {
    if inst.k_rem() == 0 {
        return false;
    }
    let bar = average(inst) - margin(inst) * from_usize(inst.k.saturating_sub(1));
    inst.variant.strictly_better(&bar, &inst.contribution_t(v))
}

/// Includes satisfactory vertices (smallest index first) until none is left
/// or T is full. Returns the number of inclusions.
pub fn rr_include_satisfactory(kz: &mut Kernelizer) -> Result<usize, RuleError> {
    require_degrading(&kz.inst, "rr_include_satisfactory")?;
    let mut count = 0;
    while kz.inst.k_rem() > 0 {
        let Some(v) = kz.inst.free_vertices().into_iter().find(|&v| is_satisfactory(&kz.inst, v)) else {
            break;
        };
        kz.include("rr_include_satisfactory", v, "")?;
        count += 1;
    }
    Ok(count)
}

/// Excludes needless vertices one at a time. Requires that no satisfactory
/// vertex exists, and stops as soon as an exclusion creates one, so that the
/// caller can return to the inclusion rule. Returns the number of exclusions.
pub fn rr_exclude_needless(kz: &mut Kernelizer) -> Result<usize, RuleError> {
    require_degrading(&kz.inst, "rr_exclude_needless")?;
    let satisfactory = |inst: &AnnotatedInstance| inst.free_vertices().into_iter().any(|v| is_satisfactory(inst, v));
    if satisfactory(&kz.inst) {
        return Err(RuleError::Guard(
            "rr_exclude_needless requires rr_include_satisfactory at fixpoint".into(),
        ));
    }
    let mut count = 0;
    while kz.inst.k_rem() > 0 {
        let Some(v) = kz.inst.free_vertices().into_iter().find(|&v| is_needless(&kz.inst, v)) else {
            break;
        };
        kz.exclude("rr_exclude_needless", v, "")?;
        count += 1;
        if satisfactory(&kz.inst) {
            break;
        }
    }
    Ok(count)
}

/// Shifts all free counters down until one of them is 0. Requires integer
/// counters. Returns the number of shifts.
pub fn rr_counter_shift(kz: &mut Kernelizer) -> Result<usize, RuleError> {
    for v in kz.inst.free_vertices() {
        kz.inst.int_counter(v)?;
    }
    let mut count = 0;
    while kz.inst.k_rem() > 0 && kz.shift("rr_counter_shift") {
        count += 1;
    }
    Ok(count)
}

/// deg(u) + |3α−1|/α·(k(k−1)+k) for the smallest-degree free vertex u with
/// counter 0, or `None` when no such vertex exists.
pub fn counter_bound(inst: &AnnotatedInstance) -> Option<Rational> {
    let inv = inst.alpha.inverse()?;
    let u = inst
        .free_vertices()
        .into_iter()
        .filter(|&v| inst.bonus(v) == &Rational::default())
        .min_by_key(|&v| (inst.degree(v), v))?;
    let k = from_usize(inst.k);
    Some(from_usize(inst.degree(u)) + inst.alpha.one_minus_three().abs() * inv * (k * (k - int(1)) + k))
}

/// True when every free counter respects [`counter_bound`]; vacuously true
/// when there is no free vertex.
pub fn counter_bound_audit(inst: &AnnotatedInstance) -> bool {
    let free = inst.free_vertices();
    if free.is_empty() {
        return true;
    }
    let Some(bound) = counter_bound(inst) else { return false };
    free.iter().all(|&v| inst.counter(v).is_some_and(|c| c <= bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcgp::Alpha;
    use crate::graph::Graph;
    use crate::rational::frac;

    fn kz(inst: AnnotatedInstance) -> Kernelizer {
        Kernelizer::new("test", &inst)
    }

    #[test]
    fn delta_better_isolated_counters() {
        let a = frac(1, 2);
        let bonus = (0..10).map(|i| a * int(9 - i)).collect();
        let inst = AnnotatedInstance::annotated(Graph::empty(10), &[], bonus, 2, int(0), Alpha::frac(1, 2), Variant::Max)
            .unwrap();
        let mut k = kz(inst);
        assert_eq!(rr_delta_better(&mut k).unwrap(), 8);
        assert_eq!(k.inst.alive_vertices(), vec![0, 1]);
    }

    #[test]
    fn delta_better_star_unchanged() {
        let inst = AnnotatedInstance::plain(Graph::star(6), 2, int(0), Alpha::frac(1, 2), Variant::Max);
        let mut k = kz(inst);
        assert_eq!(rr_delta_better(&mut k).unwrap(), 0);
        let bad = AnnotatedInstance::plain(Graph::star(6), 2, int(0), Alpha::frac(1, 4), Variant::Max);
        let err = rr_delta_better(&mut kz(bad)).unwrap_err();
        assert_eq!(err.to_string(), "rr_delta_better requires degrading variant: max needs alpha>1/3, got 1/4");
    }

    #[test]
    fn satisfactory_and_needless() {
        let inst = AnnotatedInstance::plain(Graph::star(6), 1, int(3), Alpha::frac(1, 2), Variant::Max);
        let mut k = kz(inst);
        assert_eq!(rr_include_satisfactory(&mut k).unwrap(), 1);
        assert!(k.inst.in_t(0));

        let inst = AnnotatedInstance::plain(Graph::empty(1), 1, int(10), Alpha::frac(1, 2), Variant::Max);
        let mut k = kz(inst);
        assert_eq!(rr_exclude_needless(&mut k).unwrap(), 1);
        assert_eq!(k.inst.n_alive(), 0);
    }

    #[test]
    fn shift_and_audit() {
        let a = frac(1, 2);
        let inst = AnnotatedInstance::annotated(
            Graph::empty(2),
            &[],
            vec![a * int(2), a * int(3)],
            2,
            int(5),
            Alpha::frac(1, 2),
            Variant::Max,
        )
        .unwrap();
        let mut k = kz(inst);
        assert_eq!(rr_counter_shift(&mut k).unwrap(), 2);
        assert_eq!(k.inst.t, int(3));
        assert_eq!(k.inst.counter(1), Some(int(1)));
        assert!(counter_bound_audit(&k.inst));

        let bad = AnnotatedInstance::annotated(
            Graph::empty(2),
            &[],
            vec![int(0), a * int(50)],
            1,
            int(0),
            Alpha::frac(1, 2),
            Variant::Max,
        )
        .unwrap();
        assert!(!counter_bound_audit(&bad));
    }
}
