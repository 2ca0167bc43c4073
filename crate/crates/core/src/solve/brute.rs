//! Exhaustive search, the reference oracle.
//!
//! Vertices with identical neighborhoods and bonuses are interchangeable, so
//! the search enumerates how many vertices to take from each such class
//! instead of enumerating subsets. Within a class the smallest indices are
//! taken, which keeps the reported witness the lexicographically smallest
//! optimal set.

use super::{SolveError, SolveResult};
use crate::fcgp::{AnnotatedInstance, Variant};
use crate::rational::{common_denominator, int, scaled, Rational};
use std::collections::HashMap;

pub const DEFAULT_BUDGET: u64 = 2_000_000;

struct Classes {
    members: Vec<Vec<usize>>,
    /// Members are pairwise adjacent (closed twins).
    clique: Vec<bool>,
    adj: Vec<Vec<usize>>,
    deg: Vec<usize>,
    bonus: Vec<i128>,
    forced: usize,
}

fn build_classes(inst: &AnnotatedInstance, denom: i128) -> Classes {
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut clique = Vec::new();
    let mut class_of = vec![usize::MAX; inst.capacity()];
    for v in inst.partial_solution() {
        class_of[v] = members.len();
        members.push(vec![v]);
        clique.push(false);
    }
    let forced = members.len();

    let free = inst.free_vertices();
    let nbrs = |v: usize| -> Vec<usize> { inst.neighbors(v).collect() };
    let mut open: HashMap<(Rational, Vec<usize>), usize> = HashMap::new();
    let mut open_groups: Vec<Vec<usize>> = Vec::new();
    for &v in &free {
        let key = (*inst.bonus(v), nbrs(v));
        let id = *open.entry(key).or_insert_with(|| {
            open_groups.push(Vec::new());
            open_groups.len() - 1
        });
        open_groups[id].push(v);
    }
    let mut closed: HashMap<(Rational, Vec<usize>), usize> = HashMap::new();
    let mut closed_groups: Vec<Vec<usize>> = Vec::new();
    for &v in &free {
        let group = &open_groups[open[&(*inst.bonus(v), nbrs(v))]];
        if group.len() > 1 {
            continue;
        }
        let mut n = nbrs(v);
        n.push(v);
        n.sort_unstable();
        let id = *closed.entry((*inst.bonus(v), n)).or_insert_with(|| {
            closed_groups.push(Vec::new());
            closed_groups.len() - 1
        });
        closed_groups[id].push(v);
    }
    // Order classes by smallest member for determinism.
    let mut groups: Vec<(Vec<usize>, bool)> = open_groups
        .into_iter()
        .filter(|g| g.len() > 1)
        .map(|g| (g, false))
        .chain(closed_groups.into_iter().map(|g| {
            let c = g.len() > 1;
            (g, c)
        }))
        .collect();
    groups.sort_by_key(|(g, _)| g[0]);
    for (g, c) in groups {
        for &v in &g {
            class_of[v] = members.len();
        }
        members.push(g);
        clique.push(c);
    }

    let mut adj = vec![Vec::new(); members.len()];
    for (i, m) in members.iter().enumerate() {
        let rep = m[0];
        let mut cls: Vec<usize> = inst
            .neighbors(rep)
            .map(|u| class_of[u])
            .filter(|&j| j != i)
            .collect();
        cls.sort_unstable();
        cls.dedup();
        adj[i] = cls;
    }
    let deg = members.iter().map(|m| inst.degree(m[0])).collect();
    let bonus = members.iter().map(|m| scaled(inst.bonus(m[0]), denom)).collect();
    Classes { members, clique, adj, deg, bonus, forced }
}

struct Search<'a> {
    cls: &'a Classes,
    variant: Variant,
    a: i128,
    b: i128,
    counts: Vec<usize>,
    nbr: Vec<i128>,
    suffix: Vec<usize>,
    best: Option<(i128, Vec<usize>)>,
    leaves: u64,
    budget: u64,
    over: bool,
}

impl Search<'_> {
    fn add(&mut self, i: usize, val: &mut i128) {
        let own = if self.cls.clique[i] { self.counts[i] as i128 } else { 0 };
        *val += self.a * self.cls.deg[i] as i128 + self.cls.bonus[i] + self.b * (self.nbr[i] + own);
        self.counts[i] += 1;
        for &j in &self.cls.adj[i] {
            self.nbr[j] += 1;
        }
    }

    fn remove(&mut self, i: usize) {
        self.counts[i] -= 1;
        for &j in &self.cls.adj[i] {
            self.nbr[j] -= 1;
        }
    }

    fn leaf(&mut self, val: i128) {
        self.leaves += 1;
        if self.leaves > self.budget {
            self.over = true;
            return;
        }
        let better = match &self.best {
            None => true,
            Some((bv, _)) => match self.variant {
                Variant::Max => val > *bv,
                Variant::Min => val < *bv,
            },
        };
        let tie = self.best.as_ref().is_some_and(|(bv, _)| *bv == val);
        if !better && !tie {
            return;
        }
        let mut set: Vec<usize> = Vec::new();
        for (i, &c) in self.counts.iter().enumerate() {
            set.extend_from_slice(&self.cls.members[i][..c]);
        }
        set.sort_unstable();
        if better || set < self.best.as_ref().expect("tie implies best").1 {
            self.best = Some((val, set));
        }
    }

    fn dfs(&mut self, i: usize, left: usize, val: i128) {
        if self.over {
            return;
        }
        if left == 0 {
            self.leaf(val);
            return;
        }
        if i == self.counts.len() || self.suffix[i] < left {
            return;
        }
        let cap = self.cls.members[i].len().min(left);
        let mut v = val;
        self.dfs(i + 1, left, v);
        for c in 1..=cap {
            self.add(i, &mut v);
            self.dfs(i + 1, left - c, v);
        }
        for _ in 0..cap {
            self.remove(i);
        }
    }
}

/// Exact optimum over all size-k supersets of T, with the lexicographically
/// smallest optimal set as witness.
pub fn brute_force(inst: &AnnotatedInstance, budget: u64) -> Result<SolveResult, SolveError> {
    let free = inst.free_vertices();
    let k_rem = inst.k_rem();
    if inst.t_size() > inst.k || free.len() < k_rem {
        return Ok(SolveResult::from_optimum(inst, None, "brute", 0));
    }
    let alpha = inst.alpha.value();
    let denom = common_denominator(
        std::iter::once(alpha).chain(inst.alive_vertices().into_iter().map(|v| inst.bonus(v))),
    );
    let cls = build_classes(inst, denom);
    let nc = cls.members.len();
    let mut suffix = vec![0; nc + 1];
    for i in (0..nc).rev() {
        suffix[i] = suffix[i + 1] + if i < cls.forced { 0 } else { cls.members[i].len() };
    }
    let mut search = Search {
        cls: &cls,
        variant: inst.variant,
        a: scaled(alpha, denom),
        b: scaled(&(int(1) - alpha * int(3)), denom),
        counts: vec![0; nc],
        nbr: vec![0; nc],
        suffix,
        best: None,
        leaves: 0,
        budget,
        over: false,
    };
    let mut val = 0i128;
    for i in 0..cls.forced {
        search.add(i, &mut val);
    }
    search.dfs(cls.forced, k_rem, val);
    if search.over {
        return Err(SolveError::Budget { what: "brute-force enumeration".into(), limit: budget });
    }
    let best = search.best.map(|(v, s)| (Rational::new(v, denom), s));
    Ok(SolveResult::from_optimum(inst, best, "brute", search.leaves))
}

/// Plain subset enumeration in reverse lexicographic order with exact
/// rational evaluation. Independent of `brute_force`; used to cross-check it.
pub fn brute_force_naive(inst: &AnnotatedInstance, budget: u64) -> Result<SolveResult, SolveError> {
    let free = inst.free_vertices();
    let t_set = inst.partial_solution();
    let r = inst.k_rem();
    if inst.t_size() > inst.k || free.len() < r {
        return Ok(SolveResult::from_optimum(inst, None, "brute-naive", 0));
    }
    let n = free.len();
    // Indices of the current combination, starting from the last one.
    let mut idx: Vec<usize> = (n - r..n).collect();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut count = 0u64;
    loop {
        count += 1;
        if count > budget {
            return Err(SolveError::Budget { what: "naive enumeration".into(), limit: budget });
        }
        let mut set: Vec<usize> = t_set.iter().copied().chain(idx.iter().map(|&i| free[i])).collect();
        set.sort_unstable();
        let v = inst.val(&set);
        let replace = match &best {
            None => true,
            Some((bv, bs)) => inst.variant.strictly_better(&v, bv) || (v == *bv && set < *bs),
        };
        if replace {
            best = Some((v, set));
        }
        // Previous combination in lexicographic order.
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(SolveResult::from_optimum(inst, best, "brute-naive", count));
            }
            i -= 1;
            let floor = if i == 0 { 0 } else { idx[i - 1] + 1 };
            if idx[i] > floor {
                idx[i] -= 1;
                for j in i + 1..r {
                    idx[j] = n - r + j;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcgp::Alpha;
    use crate::graph::Graph;
    use crate::rational::frac;

    #[test]
    fn triangle_pairs() {
        let inst = AnnotatedInstance::plain(Graph::complete(3), 2, frac(3, 2), Alpha::frac(1, 2), Variant::Max);
        let r = brute_force(&inst, DEFAULT_BUDGET).unwrap();
        assert!(r.is_yes());
        assert_eq!(r.best_value, Some(frac(3, 2)));
        assert_eq!(r.witness, Some(vec![0, 1]));
    }

    #[test]
    fn path_min_leaf() {
        let inst = AnnotatedInstance::plain(Graph::path(3), 1, int(1), Alpha::frac(1, 1), Variant::Min);
        let r = brute_force(&inst, DEFAULT_BUDGET).unwrap();
        assert!(r.is_yes());
        assert_eq!(r.best_value, Some(int(1)));
        assert_eq!(r.witness, Some(vec![0]));
    }

    #[test]
    fn infeasible_and_budget() {
        let inst = AnnotatedInstance::plain(Graph::path(2), 3, int(0), Alpha::frac(1, 2), Variant::Max);
        let r = brute_force(&inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.best_value, None);
        assert!(!r.is_yes());
        let g = Graph::path(30);
        let inst = AnnotatedInstance::plain(g, 6, int(0), Alpha::frac(1, 2), Variant::Max);
        assert!(matches!(brute_force(&inst, 1000), Err(SolveError::Budget { .. })));
    }

    #[test]
    fn star_leaves_are_one_class() {
        let inst = AnnotatedInstance::plain(Graph::star(40), 3, int(2), Alpha::frac(1, 2), Variant::Min);
        let r = brute_force(&inst, 100).unwrap();
        assert_eq!(r.best_value, Some(frac(3, 2)));
        assert_eq!(r.witness, Some(vec![1, 2, 3]));
    }
}
