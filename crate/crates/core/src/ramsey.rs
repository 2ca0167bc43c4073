//! Constructive clique-or-independent-set extraction. Every extractor checks
//! its witness against the graph before returning it.

use crate::graph::{degeneracy_ordering, Graph};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RamseyError {
    #[error("too few vertices: need {need}, have {have}")]
    TooFewVertices { need: u128, have: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("internal error: extracted witness failed verification ({0})")]
    VerificationFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Clique,
    IndependentSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
}

impl RamseyWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let mut s = self.vertices.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == self.vertices.len()
            && match self.kind {
                WitnessKind::Clique => g.is_clique(&s),
                WitnessKind::IndependentSet => g.is_independent(&s),
            }
    }

    fn checked(self, g: &Graph, size: usize) -> Result<Self, RamseyError> {
        if self.vertices.len() == size && self.verify(g) {
            Ok(self)
        } else {
            Err(RamseyError::VerificationFailure(format!("{:?} of size {}", self.kind, self.vertices.len())))
        }
    }
}

/// C(n, r), saturating at u128::MAX.
pub fn binom(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Upper bound C(p+q−2, p−1) on the classic Ramsey number R(p, q).
pub fn ramsey_bound(p: usize, q: usize) -> u128 {
    if p == 0 || q == 0 {
        return 1;
    }
    binom((p + q - 2) as u128, (p - 1) as u128)
}

pub fn classic_ramsey(g: &Graph, p: usize, q: usize) -> Result<RamseyWitness, RamseyError> {
    let all: Vec<usize> = (0..g.n()).collect();
    classic_ramsey_in(g, &all, p, q)
}

/// Clique of size p or independent set of size q inside `cand`.
pub fn classic_ramsey_in(g: &Graph, cand: &[usize], p: usize, q: usize) -> Result<RamseyWitness, RamseyError> {
    let need = ramsey_bound(p, q);
    if (cand.len() as u128) < need {
        return Err(RamseyError::TooFewVertices { need, have: cand.len() });
    }
    let w = classic_rec(g, cand, p, q)?;
    let size = if w.kind == WitnessKind::Clique { p } else { q };
    w.checked(g, size)
}

fn classic_rec(g: &Graph, cand: &[usize], p: usize, q: usize) -> Result<RamseyWitness, RamseyError> {
    if p <= 1 {
        return Ok(RamseyWitness { kind: WitnessKind::Clique, vertices: cand[..p].to_vec() });
    }
    if q <= 1 {
        return Ok(RamseyWitness { kind: WitnessKind::IndependentSet, vertices: cand[..q].to_vec() });
    }
    let v = cand[0];
    let (nb, non): (Vec<usize>, Vec<usize>) = cand[1..].iter().partition(|&&u| g.has_edge(v, u));
    if nb.len() as u128 >= ramsey_bound(p - 1, q) {
        let mut w = classic_rec(g, &nb, p - 1, q)?;
        if w.kind == WitnessKind::Clique {
            w.vertices.insert(0, v);
        }
        Ok(w)
    } else if non.len() as u128 >= ramsey_bound(p, q - 1) {
        let mut w = classic_rec(g, &non, p, q - 1)?;
        if w.kind == WitnessKind::IndependentSet {
            w.vertices.insert(0, v);
        }
        Ok(w)
    } else {
        Err(RamseyError::VerificationFailure("Pascal step left both sides short".into()))
    }
}

/// R_c(q, b) = (c−1)·C(b−1, 2) + (q−1)(b−1) + 1.
pub fn rc_bound(q: usize, b: usize, c: usize) -> u128 {
    let (q, b, c) = (q.max(1) as u128, b.max(1) as u128, c.max(1) as u128);
    (c - 1).saturating_mul(binom(b - 1, 2)).saturating_add((q - 1).saturating_mul(b - 1)).saturating_add(1)
}

pub fn cclosed_ramsey(g: &Graph, q: usize, b: usize, c: usize) -> Result<RamseyWitness, RamseyError> {
    let all: Vec<usize> = (0..g.n()).collect();
    cclosed_ramsey_in(g, &all, q, b, c)
}

/// Clique of size q or independent set of size b inside `cand`, assuming the
/// induced graph is c-closed.
///
/// Keeps a maximal independent set I. Vertices with two or more neighbors in
/// I number at most (c−1)·C(|I|, 2), so some x ∈ I has at least q−1 private
/// neighbors. Two non-adjacent private neighbors of x replace x and grow I;
/// otherwise they form a clique with x.
pub fn cclosed_ramsey_in(
    g: &Graph,
    cand: &[usize],
    q: usize,
    b: usize,
    c: usize,
) -> Result<RamseyWitness, RamseyError> {
    let need = rc_bound(q, b, c);
    if (cand.len() as u128) < need {
        return Err(RamseyError::TooFewVertices { need, have: cand.len() });
    }
    if q <= 1 {
        return RamseyWitness { kind: WitnessKind::Clique, vertices: cand[..q].to_vec() }.checked(g, q);
    }
    if b <= 1 {
        return RamseyWitness { kind: WitnessKind::IndependentSet, vertices: cand[..b].to_vec() }.checked(g, b);
    }
    let mut in_set = vec![false; g.n()];
    let mut set: Vec<usize> = Vec::new();
    let extend = |set: &mut Vec<usize>, in_set: &mut Vec<bool>| {
        for &v in cand {
            if !in_set[v] && set.iter().all(|&u| !g.has_edge(u, v)) {
                in_set[v] = true;
                set.push(v);
            }
        }
    };
    extend(&mut set, &mut in_set);
    loop {
        if set.len() >= b {
            set.sort_unstable();
            set.truncate(b);
            return RamseyWitness { kind: WitnessKind::IndependentSet, vertices: set }.checked(g, b);
        }
        let mut private: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in cand {
            if in_set[v] {
                continue;
            }
            let mut hits = g.neighbors(v).iter().filter(|&&u| in_set[u]);
            if let (Some(&x), None) = (hits.next(), hits.next()) {
                private.entry(x).or_default().push(v);
            }
        }
        let Some((&x, p)) = private.iter().find(|(_, p)| p.len() + 1 >= q) else {
            return Err(RamseyError::PreconditionViolation(format!(
                "no independent-set vertex has {} private neighbors; graph is not {c}-closed",
                q - 1
            )));
        };
        let pair = p
            .iter()
            .enumerate()
            .find_map(|(i, &y)| p[i + 1..].iter().find(|&&z| !g.has_edge(y, z)).map(|&z| (y, z)));
        match pair {
            Some((y, z)) => {
                in_set[x] = false;
                set.retain(|&u| u != x);
                for w in [y, z] {
                    in_set[w] = true;
                    set.push(w);
                }
                extend(&mut set, &mut in_set);
            }
            None => {
                let mut clique = vec![x];
                clique.extend_from_slice(&p[..q - 1]);
                return RamseyWitness { kind: WitnessKind::Clique, vertices: clique }.checked(g, q);
            }
        }
    }
}

/// k + b·C(k,a) + Σ_{ℓ=1}^{a−1} R(a+b, ℓ+1)·C(k,ℓ), with R bounded binomially.
pub fn bcfree_ramsey_bound(a: usize, b: usize, k: usize) -> u128 {
    let mut total = (k as u128).saturating_add((b as u128).saturating_mul(binom(k as u128, a as u128)));
    for l in 1..a {
        total = total.saturating_add(ramsey_bound(a + b, l + 1).saturating_mul(binom(k as u128, l as u128)));
    }
    total
}

pub fn bcfree_independent_set(g: &Graph, a: usize, b: usize, k: usize) -> Result<Vec<usize>, RamseyError> {
    let all: Vec<usize> = (0..g.n()).collect();
    bcfree_independent_set_in(g, &all, a, b, k)
}

/// Independent set of size k inside `cand`, assuming the induced graph has no
/// K_{a,b}. Each round finds X ⊆ I′ whose exclusive neighborhood V_X is large
/// enough to contain an independent (|X|+1)-set and swaps it in.
pub fn bcfree_independent_set_in(
    g: &Graph,
    cand: &[usize],
    a: usize,
    b: usize,
    k: usize,
) -> Result<Vec<usize>, RamseyError> {
    let need = bcfree_ramsey_bound(a, b, k);
    if (cand.len() as u128) < need {
        return Err(RamseyError::TooFewVertices { need, have: cand.len() });
    }
    let mut in_set = vec![false; g.n()];
    let mut set: Vec<usize> = Vec::new();
    while set.len() < k {
        let mut groups: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for &v in cand {
            if in_set[v] {
                continue;
            }
            let x: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| in_set[u]).collect();
            if x.len() < a.max(1) {
                groups.entry((x.len(), x)).or_default().push(v);
            }
        }
        let found = groups
            .iter()
            .find(|((l, _), vx)| vx.len() as u128 >= ramsey_bound(a + b, l + 1));
        let Some(((l, x), vx)) = found else {
            return Err(RamseyError::PreconditionViolation(format!(
                "no qualifying X found; graph contains K_{{{a},{b}}} or is too small"
            )));
        };
        let w = classic_ramsey_in(g, vx, a + b, l + 1)?;
        if w.kind == WitnessKind::Clique {
            return Err(RamseyError::PreconditionViolation(format!(
                "found a clique of size {}, so the graph contains K_{{{a},{b}}}",
                a + b
            )));
        }
        let before = set.len();
        for &u in x {
            in_set[u] = false;
        }
        set.retain(|u| !x.contains(u));
        for v in w.vertices {
            in_set[v] = true;
            set.push(v);
        }
        debug_assert!(set.len() == before + 1);
    }
    set.sort_unstable();
    set.truncate(k);
    if !g.is_independent(&set) {
        return Err(RamseyError::VerificationFailure("biclique-free independent set".into()));
    }
    Ok(set)
}

/// Independent set of size k in a d-degenerate graph with n ≥ (d+1)k.
pub fn degenerate_independent_set(g: &Graph, d: usize, k: usize) -> Result<Vec<usize>, RamseyError> {
    let need = ((d + 1) * k) as u128;
    if (g.n() as u128) < need {
        return Err(RamseyError::TooFewVertices { need, have: g.n() });
    }
    let all: Vec<usize> = (0..g.n()).collect();
    greedy_degenerate_is(g, &all, k).ok_or_else(|| {
        RamseyError::PreconditionViolation(format!("greedy pass found fewer than {k} vertices; graph is not {d}-degenerate"))
    })
}

/// Greedy independent set inside `cand`: walk the degeneracy ordering of the
/// induced graph, take the first remaining vertex, drop its closed
/// neighborhood. Returns the first k picks, or `None` if fewer exist.
pub fn greedy_degenerate_is(g: &Graph, cand: &[usize], k: usize) -> Option<Vec<usize>> {
    let sub = g.induced(cand);
    let order = degeneracy_ordering(&sub).ordering;
    let mut blocked = vec![false; sub.n()];
    let mut out = Vec::new();
    for v in order {
        if out.len() == k {
            break;
        }
        if blocked[v] {
            continue;
        }
        out.push(cand[v]);
        blocked[v] = true;
        for &u in sub.neighbors(v) {
            blocked[u] = true;
        }
    }
    if out.len() < k {
        return None;
    }
    out.sort_unstable();
    debug_assert!(g.is_independent(&out));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(ramsey_bound(3, 3), 6);
        assert_eq!(binom(200, 100), u128::MAX);
    }

    #[test]
    fn classic_examples() {
        let w = classic_ramsey(&Graph::complete(6), 3, 3).unwrap();
        assert_eq!(w.kind, WitnessKind::Clique);
        let w = classic_ramsey(&Graph::empty(6), 3, 3).unwrap();
        assert_eq!(w.kind, WitnessKind::IndependentSet);
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        let c5 = Graph::from_edges(6, &edges).unwrap();
        let w = classic_ramsey(&c5, 3, 3).unwrap();
        assert_eq!(w.kind, WitnessKind::IndependentSet);
        assert!(w.verify(&c5));
        assert!(matches!(classic_ramsey(&Graph::empty(5), 3, 3), Err(RamseyError::TooFewVertices { .. })));
    }

    #[test]
    fn rc_bound_examples() {
        assert_eq!(rc_bound(3, 3, 2), 6);
        assert_eq!(rc_bound(1, 1, 1), 1);
        assert_eq!(rc_bound(2, 4, 3), 10);
    }

    #[test]
    fn cclosed_examples() {
        let w = cclosed_ramsey(&Graph::complete(6), 3, 3, 1).unwrap();
        assert_eq!(w.kind, WitnessKind::Clique);
        let w = cclosed_ramsey(&Graph::empty(6), 3, 3, 1).unwrap();
        assert_eq!(w.kind, WitnessKind::IndependentSet);
    }

    #[test]
    fn bcfree_examples() {
        assert_eq!(bcfree_ramsey_bound(2, 2, 2), 12);
        assert_eq!(bcfree_ramsey_bound(2, 2, 3), 21);
        assert_eq!(bcfree_ramsey_bound(1, 4, 3), 15);
        let s = bcfree_independent_set(&Graph::path(12), 2, 2, 2).unwrap();
        assert!(Graph::path(12).is_independent(&s) && s.len() == 2);
        assert_eq!(bcfree_independent_set(&Graph::empty(12), 2, 2, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn degenerate_examples() {
        assert_eq!(degenerate_independent_set(&Graph::path(6), 1, 3).unwrap(), vec![0, 2, 4]);
        let two_k3 = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let s = degenerate_independent_set(&two_k3, 2, 2).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s[0] < 3 && s[1] >= 3);
        assert!(degenerate_independent_set(&Graph::path(5), 1, 3).is_err());
    }
}
