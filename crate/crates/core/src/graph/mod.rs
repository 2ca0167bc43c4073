//! Static undirected simple graphs.

mod parse;
mod profile;

pub use parse::{parse_graph, write_edgelist, Format, ParseError, ParseErrorKind};
pub use profile::{
    c_closure, compute_profile, degeneracy_ordering, h_index, is_vertex_cover, min_vertex_cover,
    Degeneracy, ParameterProfile, DEFAULT_VC_BUDGET,
};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for n={n}")]
    OutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    Duplicate(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::OutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::OutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::Duplicate(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// (m(S), m(S, V∖S)).
    pub fn edge_counts(&self, s: &[usize]) -> (usize, usize) {
        let mut mark = vec![false; self.n()];
        for &v in s {
            mark[v] = true;
        }
        let mut inside2 = 0;
        let mut out = 0;
        for &v in s {
            for &u in &self.adj[v] {
                if mark[u] {
                    inside2 += 1;
                } else {
                    out += 1;
                }
            }
        }
        (inside2 / 2, out)
    }

    /// Subgraph induced by `keep` (in the given order); vertex i of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m2 = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &u in &self.adj[v] {
                if pos[u] != usize::MAX {
                    adj[i].push(pos[u]);
                    m2 += 1;
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj, m: m2 / 2 }
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Connected components of the subgraph induced by vertices with `mask[v]`,
    /// each sorted, ordered by smallest vertex.
    pub fn components(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if !mask[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if mask[u] && !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.edge_counts(&[0, 1]), (1, 2));
        let p3 = Graph::path(3);
        assert_eq!(p3.edge_counts(&[1]), (0, 2));
        assert_eq!(p3.edge_counts(&[]), (0, 0));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(GraphError::Duplicate(0, 1)));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(GraphError::OutOfRange { .. })));
    }

    #[test]
    fn induced_keeps_order() {
        let g = Graph::path(4);
        let h = g.induced(&[3, 2, 0]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 1);
        assert!(h.has_edge(0, 1));
        assert_eq!(h.degree(2), 0);
    }
}
