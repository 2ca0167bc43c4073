use super::Graph;
use serde::Serialize;

pub const DEFAULT_VC_BUDGET: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degeneracy {
    pub d: usize,
    /// Removal order of the min-degree peeling.
    pub ordering: Vec<usize>,
    /// Index into `ordering` where the peel first hit degree `d`; the suffix
    /// from there induces a subgraph of minimum degree `d`.
    pub core_start: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterProfile {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub degeneracy: usize,
    pub degeneracy_ordering: Vec<usize>,
    pub degeneracy_core_start: usize,
    pub h_index: usize,
    pub c_closure: usize,
    /// A non-adjacent pair with c−1 common neighbors, if any non-adjacent pair exists.
    pub c_closure_pair: Option<(usize, usize)>,
    pub vertex_cover: Option<Vec<usize>>,
    pub vc: Option<usize>,
}

pub fn compute_profile(g: &Graph, want_vc: bool, vc_budget: usize) -> ParameterProfile {
    let deg = degeneracy_ordering(g);
    let (c, pair) = c_closure(g);
    let cover = if want_vc { min_vertex_cover(g, vc_budget) } else { None };
    ParameterProfile {
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        degeneracy: deg.d,
        degeneracy_ordering: deg.ordering,
        degeneracy_core_start: deg.core_start,
        h_index: h_index(g),
        c_closure: c,
        c_closure_pair: pair,
        vc: cover.as_ref().map(Vec::len),
        vertex_cover: cover,
    }
}

/// Repeatedly removes a minimum-degree vertex, smallest index first.
pub fn degeneracy_ordering(g: &Graph) -> Degeneracy {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut ordering = Vec::with_capacity(n);
    let mut d = 0;
    let mut core_start = 0;
    for step in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
        if deg[v] > d {
            d = deg[v];
            core_start = step;
        }
        removed[v] = true;
        ordering.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    Degeneracy { d, ordering, core_start }
}

/// Largest h such that at least h vertices have degree at least h.
pub fn h_index(g: &Graph) -> usize {
    let mut degs: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    degs.iter().enumerate().take_while(|&(i, &d)| d > i).count()
}

/// (c, witness pair): c = max common neighbors over non-adjacent pairs, plus one.
pub fn c_closure(g: &Graph) -> (usize, Option<(usize, usize)>) {
    let n = g.n();
    let mut best = 0;
    let mut pair = None;
    let mut common = vec![0usize; n];
    for u in 0..n {
        let mut touched = Vec::new();
        for &w in g.neighbors(u) {
            for &v in g.neighbors(w) {
                if v > u {
                    if common[v] == 0 {
                        touched.push(v);
                    }
                    common[v] += 1;
                }
            }
        }
        for v in u + 1..n {
            if !g.has_edge(u, v) && (pair.is_none() || common[v] > best) {
                best = common[v];
                pair = Some((u, v));
            }
        }
        for v in touched {
            common[v] = 0;
        }
    }
    (best + 1, pair)
}

pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut mark = vec![false; g.n()];
    for &v in cover {
        if v >= g.n() {
            return false;
        }
        mark[v] = true;
    }
    g.edges().iter().all(|&(u, v)| mark[u] || mark[v])
}

/// Exact minimum vertex cover by iterative deepening over a degree-branching
/// search tree; `None` when every cover is larger than `budget`.
pub fn min_vertex_cover(g: &Graph, budget: usize) -> Option<Vec<usize>> {
    let mut in_cover = vec![false; g.n()];
    for size in 0..=budget {
        let mut chosen = Vec::new();
        if vc_branch(g, &mut in_cover, &mut chosen, size) {
            chosen.sort_unstable();
            return Some(chosen);
        }
    }
    None
}

fn vc_branch(g: &Graph, in_cover: &mut [bool], chosen: &mut Vec<usize>, left: usize) -> bool {
    // Highest residual degree vertex, smallest index on ties.
    let mut best: Option<(usize, usize)> = None;
    let mut residual_edges = 0;
    for v in 0..g.n() {
        if in_cover[v] {
            continue;
        }
        let d = g.neighbors(v).iter().filter(|&&u| !in_cover[u]).count();
        residual_edges += d;
        if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    let Some((d, v)) = best else { return true };
    if left == 0 || residual_edges / 2 > left * d {
        return false;
    }
    in_cover[v] = true;
    chosen.push(v);
    if vc_branch(g, in_cover, chosen, left - 1) {
        return true;
    }
    in_cover[v] = false;
    chosen.pop();
    let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !in_cover[u]).collect();
    if nbrs.len() <= left {
        for &u in &nbrs {
            in_cover[u] = true;
            chosen.push(u);
        }
        if vc_branch(g, in_cover, chosen, left - nbrs.len()) {
            return true;
        }
        for &u in &nbrs {
            in_cover[u] = false;
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(g: &Graph) -> ParameterProfile {
        compute_profile(g, true, DEFAULT_VC_BUDGET)
    }

    #[test]
    fn c4() {
        let p = prof(&Graph::cycle(4));
        assert_eq!((p.max_degree, p.degeneracy, p.h_index, p.c_closure, p.vc), (2, 2, 2, 3, Some(2)));
    }

    #[test]
    fn k4() {
        let p = prof(&Graph::complete(4));
        assert_eq!((p.max_degree, p.degeneracy, p.h_index, p.c_closure, p.vc), (3, 3, 3, 1, Some(3)));
        assert_eq!(p.c_closure_pair, None);
    }

    #[test]
    fn star() {
        let p = prof(&Graph::star(5));
        assert_eq!((p.max_degree, p.degeneracy, p.h_index, p.c_closure, p.vc), (5, 1, 1, 2, Some(1)));
        assert_eq!(p.vertex_cover, Some(vec![0]));
    }

    #[test]
    fn tiny_graphs() {
        assert_eq!(c_closure(&Graph::empty(0)).0, 1);
        assert_eq!(c_closure(&Graph::empty(1)).0, 1);
        assert_eq!(c_closure(&Graph::empty(2)), (1, Some((0, 1))));
        assert_eq!(h_index(&Graph::empty(3)), 0);
        assert_eq!(degeneracy_ordering(&Graph::empty(0)).d, 0);
    }

    #[test]
    fn vc_budget_respected() {
        assert_eq!(min_vertex_cover(&Graph::complete(6), 4), None);
        assert_eq!(min_vertex_cover(&Graph::complete(6), 5).map(|c| c.len()), Some(5));
    }
}
