use super::{Alpha, Variant};
use crate::graph::Graph;
use crate::rational::{from_usize, int, Rational};
use num_traits::Zero;
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("vertex {0} is already in the partial solution")]
    AlreadyInT(usize),
    #[error("vertex {0} is in the partial solution and cannot be removed")]
    InT(usize),
    #[error("vertex {0} is not present")]
    NotAlive(usize),
    #[error("vertex {0} is not in the partial solution")]
    NotInT(usize),
    #[error("bonus of vertex {0} must be non-negative")]
    NegativeBonus(usize),
    #[error("vertex {0} is in T but carries a nonzero bonus")]
    BonusInT(usize),
    #[error("bonus of vertex {0} is not an integer multiple of alpha")]
    NonIntegerCounter(usize),
    #[error("size mismatch: graph has {n} vertices, got {got} entries")]
    Size { n: usize, got: usize },
}

/// An annotated instance (G, T, bonus, k, t, α, variant).
///
/// Vertices keep their identities from the base graph; deleted vertices are
/// masked out rather than renumbered so traces stay stable. `bonus(v)` is the
/// value earned when `v` is selected, α·counter(v) in standard mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedInstance {
    graph: Arc<Graph>,
    alive: Vec<bool>,
    in_t: Vec<bool>,
    degree: Vec<usize>,
    bonus: Vec<Rational>,
    n_alive: usize,
    t_size: usize,
    pub k: usize,
    pub t: Rational,
    pub alpha: Alpha,
    pub variant: Variant,
}

impl AnnotatedInstance {
    pub fn plain(graph: Graph, k: usize, t: Rational, alpha: Alpha, variant: Variant) -> Self {
        Self::plain_shared(Arc::new(graph), k, t, alpha, variant)
    }

    pub fn plain_shared(graph: Arc<Graph>, k: usize, t: Rational, alpha: Alpha, variant: Variant) -> Self {
        let n = graph.n();
        let degree = (0..n).map(|v| graph.degree(v)).collect();
        AnnotatedInstance {
            graph,
            alive: vec![true; n],
            in_t: vec![false; n],
            degree,
            bonus: vec![Rational::zero(); n],
            n_alive: n,
            t_size: 0,
            k,
            t,
            alpha,
            variant,
        }
    }

    /// Builds an instance with partial solution `t_set` and per-vertex bonuses.
    pub fn annotated(
        graph: Graph,
        t_set: &[usize],
        bonus: Vec<Rational>,
        k: usize,
        t: Rational,
        alpha: Alpha,
        variant: Variant,
    ) -> Result<Self, InstanceError> {
        let n = graph.n();
        if bonus.len() != n {
            return Err(InstanceError::Size { n, got: bonus.len() });
        }
        let mut inst = Self::plain(graph, k, t, alpha, variant);
        for &v in t_set {
            if v >= n {
                return Err(InstanceError::NotAlive(v));
            }
            if inst.in_t[v] {
                return Err(InstanceError::AlreadyInT(v));
            }
            inst.in_t[v] = true;
            inst.t_size += 1;
        }
        for (v, b) in bonus.into_iter().enumerate() {
            if b < Rational::zero() {
                return Err(InstanceError::NegativeBonus(v));
            }
            if inst.in_t[v] && !b.is_zero() {
                return Err(InstanceError::BonusInT(v));
            }
            inst.bonus[v] = b;
        }
        Ok(inst)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    /// Vertex capacity of the underlying graph (alive or not).
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    pub fn alive_mask(&self) -> &[bool] {
        &self.alive
    }

    pub fn alive_vertices(&self) -> Vec<usize> {
        (0..self.capacity()).filter(|&v| self.alive[v]).collect()
    }

    /// Alive vertices outside T.
    pub fn free_vertices(&self) -> Vec<usize> {
        (0..self.capacity()).filter(|&v| self.alive[v] && !self.in_t[v]).collect()
    }

    pub fn n_alive(&self) -> usize {
        self.n_alive
    }

    pub fn m_alive(&self) -> usize {
        (0..self.capacity()).filter(|&v| self.alive[v]).map(|v| self.degree[v]).sum::<usize>() / 2
    }

    pub fn in_t(&self, v: usize) -> bool {
        self.in_t[v]
    }

    pub fn t_mask(&self) -> &[bool] {
        &self.in_t
    }

    pub fn partial_solution(&self) -> Vec<usize> {
        (0..self.capacity()).filter(|&v| self.in_t[v]).collect()
    }

    pub fn t_size(&self) -> usize {
        self.t_size
    }

    /// k′ = k − |T| (saturating).
    pub fn k_rem(&self) -> usize {
        self.k.saturating_sub(self.t_size)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.neighbors(v).iter().copied().filter(move |&u| self.alive[u])
    }

    pub fn bonus(&self, v: usize) -> &Rational {
        &self.bonus[v]
    }

    pub fn bonuses(&self) -> &[Rational] {
        &self.bonus
    }

    pub fn is_plain(&self) -> bool {
        self.t_size == 0 && self.bonus.iter().all(Zero::is_zero)
    }

    /// bonus(v)/α; `None` when α = 0 and the bonus is nonzero.
    pub fn counter(&self, v: usize) -> Option<Rational> {
        if self.alpha.is_zero() {
            self.bonus[v].is_zero().then(Rational::zero)
        } else {
            Some(self.bonus[v] / self.alpha.value())
        }
    }

    /// Integer counter in standard mode.
    pub fn int_counter(&self, v: usize) -> Result<usize, InstanceError> {
        match self.counter(v) {
            Some(c) if c.is_integer() => Ok(c.to_integer() as usize),
            _ => Err(InstanceError::NonIntegerCounter(v)),
        }
    }

    /// Every alive bonus is α times a non-negative integer.
    pub fn is_standard(&self) -> bool {
        self.alive_vertices().iter().all(|&v| self.int_counter(v).is_ok())
    }

    /// α·deg⁺(v) = α·deg(v) + bonus(v).
    pub fn weighted_degree(&self, v: usize) -> Rational {
        self.alpha.value() * from_usize(self.degree[v]) + self.bonus[v]
    }

    /// val(S) = α·m(S, V∖S) + Σ bonus + (1−α)·m(S), over the alive graph.
    pub fn val(&self, s: &[usize]) -> Rational {
        let mut mark = vec![false; self.capacity()];
        for &v in s {
            mark[v] = true;
        }
        self.val_masked(s, &mark)
    }

    fn val_masked(&self, s: &[usize], mark: &[bool]) -> Rational {
        let (mut in2, mut out) = (0usize, 0usize);
        let mut b = Rational::zero();
        for &v in s {
            b += self.bonus[v];
            for u in self.neighbors(v) {
                if mark[u] {
                    in2 += 1;
                } else {
                    out += 1;
                }
            }
        }
        let a = self.alpha.value();
        a * from_usize(out) + b + (int(1) - a) * from_usize(in2 / 2)
    }

    /// val(T).
    pub fn val_t(&self) -> Rational {
        self.val_masked(&self.partial_solution(), &self.in_t)
    }

    /// t′ = t − val(T).
    pub fn t_rem(&self) -> Rational {
        self.t - self.val_t()
    }

    /// contribution(v, T) = α·deg(v) + bonus(v) + (1−3α)|N(v) ∩ T|.
    pub fn contribution(&self, v: usize, set: &[usize]) -> Rational {
        let mut mark = vec![false; self.capacity()];
        for &u in set {
            mark[u] = true;
        }
        self.contribution_masked(v, &mark)
    }

    pub fn contribution_masked(&self, v: usize, mark: &[bool]) -> Rational {
        let inside = self.neighbors(v).filter(|&u| mark[u]).count();
        self.weighted_degree(v) + self.alpha.one_minus_three() * from_usize(inside)
    }

    /// contribution(v, T) for the instance's own partial solution.
    pub fn contribution_t(&self, v: usize) -> Rational {
        self.contribution_masked(v, &self.in_t)
    }

    /// Σ contribution(v_i, {v_1, …, v_{i−1}}).
    pub fn telescope(&self, ordering: &[usize]) -> Rational {
        let mut mark = vec![false; self.capacity()];
        let mut sum = Rational::zero();
        for &v in ordering {
            sum += self.contribution_masked(v, &mark);
            mark[v] = true;
        }
        sum
    }

    /// `v` is better than `u` with respect to `set`.
    pub fn is_better(&self, v: usize, u: usize, set: &[usize]) -> bool {
        self.variant.as_good(&self.contribution(v, set), &self.contribution(u, set))
    }

    /// Sufficient condition for `v` being strictly better than `u`:
    /// α·deg⁺(u) ≤ α·deg⁺(v) − |(1−3α)k| (Max), mirrored for Min.
    pub fn is_strictly_better(&self, v: usize, u: usize) -> bool {
        let margin = self.alpha.swap_margin(self.k);
        let (wv, wu) = (self.weighted_degree(v), self.weighted_degree(u));
        match self.variant {
            Variant::Max => wu <= wv - margin,
            Variant::Min => wu >= wv + margin,
        }
    }

    /// Γ = max counter + 1 over alive vertices (standard mode).
    pub fn gamma(&self) -> Result<usize, InstanceError> {
        let mut g = 0;
        for v in self.alive_vertices() {
            g = g.max(self.int_counter(v)?);
        }
        Ok(g + 1)
    }

    /// Δ_T̄: maximum degree over alive vertices outside T.
    pub fn delta_tbar(&self) -> usize {
        self.free_vertices().iter().map(|&v| self.degree[v]).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.alive_vertices().iter().map(|&v| self.degree[v]).max().unwrap_or(0)
    }

    /// Inclusion: T ← T ∪ {v}, t ← t − bonus(v), bonus(v) ← 0. Returns Δt.
    pub fn include(&mut self, v: usize) -> Result<Rational, InstanceError> {
        if !self.alive[v] {
            return Err(InstanceError::NotAlive(v));
        }
        if self.in_t[v] {
            return Err(InstanceError::AlreadyInT(v));
        }
        let dt = -self.bonus[v];
        self.t += dt;
        self.bonus[v] = Rational::zero();
        self.in_t[v] = true;
        self.t_size += 1;
        Ok(dt)
    }

    /// Exclusion: every alive neighbor gains bonus α, then `v` is deleted.
    /// Neighbors in T keep bonus 0; their gain is moved into t instead.
    /// Returns Δt.
    pub fn exclude(&mut self, v: usize) -> Result<Rational, InstanceError> {
        if !self.alive[v] {
            return Err(InstanceError::NotAlive(v));
        }
        if self.in_t[v] {
            return Err(InstanceError::InT(v));
        }
        let a = *self.alpha.value();
        let mut dt = Rational::zero();
        let graph = Arc::clone(&self.graph);
        for &u in graph.neighbors(v) {
            if !self.alive[u] {
                continue;
            }
            self.degree[u] -= 1;
            if self.in_t[u] {
                dt -= a;
            } else {
                self.bonus[u] += a;
            }
        }
        self.t += dt;
        self.alive[v] = false;
        self.degree[v] = 0;
        self.bonus[v] = Rational::zero();
        self.n_alive -= 1;
        Ok(dt)
    }

    /// Decreases every bonus outside T by α and t by α·k′ when all of them are
    /// at least α. Returns Δt, or `None` when the shift does not apply.
    pub fn shift_counters(&mut self) -> Option<Rational> {
        let a = *self.alpha.value();
        let free = self.free_vertices();
        if a.is_zero() || free.is_empty() || free.iter().any(|&v| self.bonus[v] < a) {
            return None;
        }
        for &v in &free {
            self.bonus[v] -= a;
        }
        let dt = -(a * from_usize(self.k_rem()));
        self.t += dt;
        Some(dt)
    }

    /// Removes `u ∈ T` from the graph while keeping it in the solution: t
    /// drops by its fixed share of the value and each free neighbor gains
    /// bonus 1−2α. k drops by one. Returns Δt.
    pub fn fold(&mut self, u: usize) -> Result<Rational, InstanceError> {
        if !self.alive[u] {
            return Err(InstanceError::NotAlive(u));
        }
        if !self.in_t[u] {
            return Err(InstanceError::NotInT(u));
        }
        let a = *self.alpha.value();
        let (mut inside, mut outside) = (0usize, 0usize);
        let graph = Arc::clone(&self.graph);
        for &w in graph.neighbors(u) {
            if !self.alive[w] {
                continue;
            }
            self.degree[w] -= 1;
            if self.in_t[w] {
                inside += 1;
            } else {
                outside += 1;
                self.bonus[w] += int(1) - a * int(2);
            }
        }
        let dt = -((int(1) - a) * from_usize(inside) + a * from_usize(outside));
        self.t += dt;
        self.alive[u] = false;
        self.in_t[u] = false;
        self.degree[u] = 0;
        self.n_alive -= 1;
        self.t_size -= 1;
        self.k -= 1;
        Ok(dt)
    }

    pub fn include_vertex(&self, v: usize) -> Result<Self, InstanceError> {
        let mut next = self.clone();
        next.include(v)?;
        Ok(next)
    }

    pub fn exclude_vertex(&self, v: usize) -> Result<Self, InstanceError> {
        let mut next = self.clone();
        next.exclude(v)?;
        Ok(next)
    }

    /// Renumbers alive vertices to 0..n′ in increasing order. Returns the
    /// compact instance and the map from new to old identities.
    pub fn compact(&self) -> (AnnotatedInstance, Vec<usize>) {
        let keep = self.alive_vertices();
        let g = self.graph.induced(&keep);
        let t_set: Vec<usize> = (0..keep.len()).filter(|&i| self.in_t[keep[i]]).collect();
        let bonus = keep.iter().map(|&v| self.bonus[v]).collect();
        let inst = AnnotatedInstance::annotated(
            g,
            &t_set,
            bonus,
            self.k,
            self.t,
            self.alpha.clone(),
            self.variant,
        )
        .expect("compacting a valid instance");
        (inst, keep)
    }

    /// The alive part of the graph, renumbered, with the map to old identities.
    pub fn alive_graph(&self) -> (Graph, Vec<usize>) {
        let keep = self.alive_vertices();
        (self.graph.induced(&keep), keep)
    }

    /// Same instance with a different threshold.
    pub fn with_t(&self, t: Rational) -> Self {
        let mut next = self.clone();
        next.t = t;
        next
    }
}
