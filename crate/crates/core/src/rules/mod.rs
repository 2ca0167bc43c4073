//! Reduction rules and the kernelization pipelines built from them.
//!
//! Rules act on a [`Kernelizer`], which owns the working instance and logs
//! every inclusion, exclusion and counter shift into a [`RuleTrace`].
//! Vertex identities are never renumbered before de-annotation, so trace
//! entries and witnesses refer to the input graph directly.

mod closure;
mod general;
mod lift;
mod pipelines;
mod trace;

pub use closure::{
    find_bcfree_xi, find_closure_xi, find_degenerate_xi, rr_bcfree_independent_set, rr_closure_better,
    rr_closure_independent_set, XiPair,
};
pub use general::{
    counter_bound, counter_bound_audit, is_needless, is_satisfactory, rr_counter_shift, rr_delta_better,
    rr_exclude_needless, rr_include_satisfactory, delta_better_threshold,
};
pub use lift::{lift_witness, repair_witness};
pub use pipelines::{
    kernel_closure, kernel_degeneracy_max, kernel_degeneracy_min, kernel_delta, kernel_hindex_max,
    kernel_vc_max, kernel_vc_min, kernelize, strictness_margin, Pipeline,
};
pub use trace::{Audit, InstanceSummary, Op, RuleTrace, TraceEntry, TraceError};

use crate::fcgp::{
    deannotate, AnnotatedInstance, DeannotateError, DeannotationStats, InstanceError, PlainKernel, Variant,
};
use crate::graph::{parse_graph, write_edgelist, Format, ParseError};
use crate::ramsey::RamseyError;
use crate::rational::{fmt_rational, parse_rational, Rational};
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RuleError {
    /// A precondition of the rule or pipeline does not hold.
    #[error("{0}")]
    Guard(String),
    /// A numeric audit that the construction guarantees failed.
    #[error("audit failed: {0}")]
    Audit(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
    #[error(transparent)]
    Deannotate(#[from] DeannotateError),
}

/// Guard for the degrading regime shared by the Δ-based rules.
pub fn require_degrading(inst: &AnnotatedInstance, what: &str) -> Result<(), RuleError> {
    let ok = inst.alpha.is_degrading(inst.variant) && !inst.alpha.is_zero();
    if ok {
        return Ok(());
    }
    let need = match inst.variant {
        Variant::Max => "max needs alpha>1/3",
        Variant::Min => "min needs alpha in (0,1/3)",
    };
    Err(RuleError::Guard(format!("{what} requires degrading variant: {need}, got {}", inst.alpha)))
}

/// The working state of a pipeline.
#[derive(Debug, Clone)]
pub struct Kernelizer {
    pub inst: AnnotatedInstance,
    pub trace: RuleTrace,
}

impl Kernelizer {
    pub fn new(pipeline: &str, inst: &AnnotatedInstance) -> Self {
        Kernelizer { inst: inst.clone(), trace: RuleTrace::new(pipeline, inst) }
    }

    pub fn include(&mut self, rule: &str, v: usize, note: impl Into<String>) -> Result<(), RuleError> {
        let dt = self.inst.include(v)?;
        self.trace.entries.push(TraceEntry { rule: rule.into(), op: Op::Include, vertex: Some(v), dt, dk: 0, note: note.into() });
        Ok(())
    }

    pub fn exclude(&mut self, rule: &str, v: usize, note: impl Into<String>) -> Result<(), RuleError> {
        let dt = self.inst.exclude(v)?;
        self.trace.entries.push(TraceEntry { rule: rule.into(), op: Op::Exclude, vertex: Some(v), dt, dk: 0, note: note.into() });
        Ok(())
    }

    /// One counter shift; false when it does not apply.
    pub fn shift(&mut self, rule: &str) -> bool {
        match self.inst.shift_counters() {
            Some(dt) => {
                self.trace.entries.push(TraceEntry { rule: rule.into(), op: Op::Shift, vertex: None, dt, dk: 0, note: String::new() });
                true
            }
            None => false,
        }
    }

    /// Settles instances with no choice left: too few vertices, |T| = k, or
    /// exactly k vertices.
    pub fn decided(&self) -> Option<(bool, Option<Vec<usize>>)> {
        let inst = &self.inst;
        if inst.n_alive() < inst.k || inst.t_size() > inst.k {
            return Some((false, None));
        }
        let only = if inst.t_size() == inst.k {
            inst.partial_solution()
        } else if inst.n_alive() == inst.k {
            inst.alive_vertices()
        } else {
            return None;
        };
        let yes = inst.variant.meets(&inst.val(&only), &inst.t);
        Some((yes, yes.then_some(only)))
    }

    pub fn finish_decided(mut self, yes: bool, witness: Option<Vec<usize>>) -> KernelOutcome {
        self.trace.final_summary = Some(InstanceSummary::of(&self.inst));
        KernelOutcome {
            status: if yes { Status::DecidedYes } else { Status::DecidedNo },
            kernel: None,
            witness,
            trace: self.trace,
        }
    }

    /// De-annotates and records the size audit.
    pub fn finish_kernel(mut self) -> Result<KernelOutcome, RuleError> {
        if let Some((yes, w)) = self.decided() {
            return Ok(self.finish_decided(yes, w));
        }
        let kernel = deannotate(&self.inst)?;
        self.record_kernel(&kernel);
        Ok(self.into_kernel(kernel))
    }

    /// Emits the alive graph unchanged; only valid for plain states.
    pub fn finish_identity(mut self) -> Result<KernelOutcome, RuleError> {
        if !self.inst.is_plain() {
            return Err(RuleError::Guard("identity kernel needs a plain instance".into()));
        }
        let (g, keep) = self.inst.alive_graph();
        let stats = DeannotationStats {
            kind: "identity".into(),
            n_annotated: keep.len(),
            n_out: g.n(),
            m_out: g.m(),
            n_bound: keep.len(),
            ..Default::default()
        };
        let instance =
            AnnotatedInstance::plain(g, self.inst.k, self.inst.t, self.inst.alpha.clone(), self.inst.variant);
        let kernel = PlainKernel { instance, origin: keep.into_iter().map(Some).collect(), partial: Vec::new(), stats };
        self.record_kernel(&kernel);
        Ok(self.into_kernel(kernel))
    }

    fn record_kernel(&mut self, kernel: &PlainKernel) {
        let s = &kernel.stats;
        self.trace.audit("kernel_vertices", s.n_out, Some(s.n_bound.to_string()), s.n_out <= s.n_bound);
        self.trace.audit("kernel_edges", s.m_out, None, true);
    }

    fn into_kernel(mut self, kernel: PlainKernel) -> KernelOutcome {
        self.trace.final_summary = Some(InstanceSummary::of(&self.inst));
        KernelOutcome { status: Status::Kernelized, kernel: Some(kernel), witness: None, trace: self.trace }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Kernelized,
    DecidedYes,
    DecidedNo,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Kernelized => "kernelized",
            Status::DecidedYes => "decided_yes",
            Status::DecidedNo => "decided_no",
        }
    }
}

#[derive(Debug, Clone)]
pub struct KernelOutcome {
    pub status: Status,
    pub kernel: Option<PlainKernel>,
    /// Input-graph vertices; present for `DecidedYes` when known.
    pub witness: Option<Vec<usize>>,
    pub trace: RuleTrace,
}

/// What a trace file records beyond the rule log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFile {
    pub trace: RuleTrace,
    pub status: Status,
    pub witness: Option<Vec<usize>>,
    /// Kernel vertex → input vertex, `None` for gadget vertices.
    pub origin: Vec<Option<usize>>,
    /// Kernel vertices standing for the partial solution.
    pub partial: Vec<usize>,
}

fn write_list(out: &mut String, tag: &str, xs: &[usize]) {
    out.push_str(tag);
    for x in xs {
        let _ = write!(out, " {x}");
    }
    out.push('\n');
}

impl KernelOutcome {
    pub fn trace_text(&self) -> String {
        let mut out = String::from("fcgp-trace 1\n");
        self.trace.write(&mut out);
        let _ = writeln!(out, "status {}", self.status.name());
        if let Some(w) = &self.witness {
            write_list(&mut out, "witness", w);
        }
        if let Some(k) = &self.kernel {
            let s = &k.stats;
            let _ = writeln!(
                out,
                "deannotate {} n_annotated={} t_size={} delta={} gamma={} ell={} base_leaves={} n_out={} m_out={} n_bound={}",
                s.kind, s.n_annotated, s.t_size, s.delta, s.gamma, s.ell, s.base_leaves, s.n_out, s.m_out, s.n_bound
            );
            write_list(&mut out, "partial", &k.partial);
            for (i, o) in k.origin.iter().enumerate() {
                if let Some(o) = o {
                    let _ = writeln!(out, "map {i} {o}");
                }
            }
        }
        out
    }

    pub fn trace_file(&self) -> TraceFile {
        TraceFile {
            trace: self.trace.clone(),
            status: self.status,
            witness: self.witness.clone(),
            origin: self.kernel.as_ref().map(|k| k.origin.clone()).unwrap_or_default(),
            partial: self.kernel.as_ref().map(|k| k.partial.clone()).unwrap_or_default(),
        }
    }
}

/// Parses a trace written by [`KernelOutcome::trace_text`]. `kernel_n` is the
/// vertex count of the accompanying kernel, used to size the origin map.
pub fn parse_trace(text: &str, kernel_n: usize) -> Result<TraceFile, TraceError> {
    let (trace, rest) = RuleTrace::parse(text)?;
    let mut status = None;
    let mut witness = None;
    let mut origin = vec![None; kernel_n];
    let mut partial = Vec::new();
    for (line, raw) in rest {
        let perr = |msg: &str| TraceError::Parse { line, msg: msg.to_string() };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let nums = |xs: &[&str]| -> Result<Vec<usize>, TraceError> {
            xs.iter().map(|x| x.parse().map_err(|_| perr("bad vertex"))).collect()
        };
        match toks.first().copied() {
            Some("fcgp-trace") | Some("deannotate") | None => {}
            Some("status") => {
                status = Some(match toks.get(1).copied() {
                    Some("kernelized") => Status::Kernelized,
                    Some("decided_yes") => Status::DecidedYes,
                    Some("decided_no") => Status::DecidedNo,
                    _ => return Err(perr("unknown status")),
                })
            }
            Some("witness") => witness = Some(nums(&toks[1..])?),
            Some("partial") => partial = nums(&toks[1..])?,
            Some("map") => {
                let p = nums(&toks[1..])?;
                if p.len() != 2 || p[0] >= kernel_n {
                    return Err(perr("map entry out of range"));
                }
                origin[p[0]] = Some(p[1]);
            }
            Some(other) => return Err(perr(&format!("unknown line {other:?}"))),
        }
    }
    let status = status.ok_or(TraceError::Parse { line: 0, msg: "missing status line".into() })?;
    Ok(TraceFile { trace, status, witness, origin, partial })
}

/// Kernel file: `fcgp <variant> alpha=P/Q k=K t=P/Q`, then the edge list.
pub fn write_kernel_file(inst: &AnnotatedInstance) -> String {
    let (g, _) = inst.alive_graph();
    format!(
        "fcgp {} alpha={} k={} t={}\n{}",
        inst.variant,
        inst.alpha,
        inst.k,
        fmt_rational(&inst.t),
        write_edgelist(&g)
    )
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KernelFileError {
    #[error("kernel header: {0}")]
    Header(String),
    #[error(transparent)]
    Graph(#[from] ParseError),
}

pub fn parse_kernel_file(text: &str) -> Result<AnnotatedInstance, KernelFileError> {
    let (head, body) = text.split_once('\n').unwrap_or((text, ""));
    let h = |m: &str| KernelFileError::Header(m.to_string());
    let t: Vec<&str> = head.split_whitespace().collect();
    if t.len() != 5 || t[0] != "fcgp" {
        return Err(h("expected `fcgp <variant> alpha=P/Q k=K t=P/Q`"));
    }
    let variant: Variant = t[1].parse().map_err(|e: String| h(&e))?;
    let alpha = t[2].strip_prefix("alpha=").ok_or_else(|| h("missing alpha="))?.parse().map_err(|e: String| h(&e))?;
    let k: usize = t[3].strip_prefix("k=").ok_or_else(|| h("missing k="))?.parse().map_err(|_| h("bad k"))?;
    let tv: Rational =
        parse_rational(t[4].strip_prefix("t=").ok_or_else(|| h("missing t="))?).map_err(|e| h(&e.to_string()))?;
    let g = parse_graph(body.as_bytes(), Format::EdgeList).map_err(|mut e| {
        e.line += 1;
        e
    })?;
    Ok(AnnotatedInstance::plain(g, k, tv, alpha, variant))
}
