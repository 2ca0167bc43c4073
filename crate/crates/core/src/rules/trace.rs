//! Rule logs: recording, text form, and replay.

use crate::fcgp::{ser_rational, AnnotatedInstance, InstanceError};
use crate::rational::{fmt_rational, parse_rational, Rational};
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Include,
    Exclude,
    Shift,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::Include => "include",
            Op::Exclude => "exclude",
            Op::Shift => "shift",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub rule: String,
    pub op: Op,
    pub vertex: Option<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub dt: Rational,
    pub dk: i64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    pub t_size: usize,
    /// `None` when some counter is not an integer.
    pub gamma: Option<usize>,
    pub delta_tbar: usize,
}

impl InstanceSummary {
    pub fn of(inst: &AnnotatedInstance) -> Self {
        InstanceSummary {
            n: inst.n_alive(),
            m: inst.m_alive(),
            k: inst.k,
            t: inst.t,
            t_size: inst.t_size(),
            gamma: inst.gamma().ok(),
            delta_tbar: inst.delta_tbar(),
        }
    }

    fn write(&self, tag: &str, out: &mut String) {
        let gamma = self.gamma.map_or("-".to_string(), |g| g.to_string());
        let _ = writeln!(
            out,
            "{tag} n={} m={} k={} t={} t_size={} gamma={} delta_tbar={}",
            self.n,
            self.m,
            self.k,
            fmt_rational(&self.t),
            self.t_size,
            gamma,
            self.delta_tbar
        );
    }
}

/// A numeric check made along the way. Informational records carry no bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub name: String,
    pub value: String,
    pub bound: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleTrace {
    pub pipeline: String,
    pub initial: InstanceSummary,
    pub entries: Vec<TraceEntry>,
    pub audits: Vec<Audit>,
    pub notes: Vec<String>,
    #[serde(rename = "final")]
    pub final_summary: Option<InstanceSummary>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("trace line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("replay step {step}: {source}")]
    Replay { step: usize, source: InstanceError },
    #[error("replay step {step}: {msg}")]
    Mismatch { step: usize, msg: String },
}

impl RuleTrace {
    pub fn new(pipeline: &str, inst: &AnnotatedInstance) -> Self {
        RuleTrace {
            pipeline: pipeline.to_string(),
            initial: InstanceSummary::of(inst),
            entries: Vec::new(),
            audits: Vec::new(),
            notes: Vec::new(),
            final_summary: None,
        }
    }

    pub fn audit(&mut self, name: &str, value: impl ToString, bound: Option<String>, ok: bool) {
        self.audits.push(Audit { name: name.to_string(), value: value.to_string(), bound, ok });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn audits_ok(&self) -> bool {
        self.audits.iter().all(|a| a.ok)
    }

    /// Re-applies every entry to `initial`, checking each recorded Δt.
    pub fn replay(&self, initial: &AnnotatedInstance) -> Result<AnnotatedInstance, TraceError> {
        let mut inst = initial.clone();
        if InstanceSummary::of(&inst) != self.initial {
            return Err(TraceError::Mismatch { step: 0, msg: "initial summary differs".into() });
        }
        for (i, e) in self.entries.iter().enumerate() {
            let step = i + 1;
            let dt = match (e.op, e.vertex) {
                (Op::Include, Some(v)) if v < inst.capacity() => {
                    inst.include(v).map_err(|source| TraceError::Replay { step, source })?
                }
                (Op::Exclude, Some(v)) if v < inst.capacity() => {
                    inst.exclude(v).map_err(|source| TraceError::Replay { step, source })?
                }
                (Op::Shift, None) => inst
                    .shift_counters()
                    .ok_or_else(|| TraceError::Mismatch { step, msg: "counter shift does not apply".into() })?,
                _ => return Err(TraceError::Mismatch { step, msg: "malformed entry".into() }),
            };
            if dt != e.dt {
                return Err(TraceError::Mismatch {
                    step,
                    msg: format!("dt {} recorded, {} replayed", fmt_rational(&e.dt), fmt_rational(&dt)),
                });
            }
        }
        if let Some(f) = &self.final_summary {
            if *f != InstanceSummary::of(&inst) {
                return Err(TraceError::Mismatch { step: self.entries.len(), msg: "final summary differs".into() });
            }
        }
        Ok(inst)
    }

    pub fn write(&self, out: &mut String) {
        let _ = writeln!(out, "pipeline {}", self.pipeline);
        self.initial.write("initial", out);
        for e in &self.entries {
            let v = e.vertex.map_or("-".to_string(), |v| v.to_string());
            let _ = write!(out, "step {} {} v={} dt={} dk={}", e.rule, e.op.name(), v, fmt_rational(&e.dt), e.dk);
            if !e.note.is_empty() {
                let _ = write!(out, " note={}", e.note);
            }
            out.push('\n');
        }
        for a in &self.audits {
            let bound = a.bound.clone().unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "audit {} value={} bound={} ok={}", a.name, a.value, bound, a.ok);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note {n}");
        }
        if let Some(f) = &self.final_summary {
            f.write("final", out);
        }
    }

    /// Parses the lines written by `write`; lines with other leading words
    /// are returned untouched for the caller.
    pub fn parse(text: &str) -> Result<(RuleTrace, Vec<(usize, String)>), TraceError> {
        let mut pipeline = None;
        let mut initial = None;
        let mut final_summary = None;
        let (mut entries, mut audits, mut notes, mut rest) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let perr = |msg: &str| TraceError::Parse { line, msg: msg.to_string() };
            let (head, tail) = raw.split_once(' ').unwrap_or((raw, ""));
            match head {
                "pipeline" => pipeline = Some(tail.to_string()),
                "initial" => initial = Some(parse_summary(tail).map_err(|m| perr(&m))?),
                "final" => final_summary = Some(parse_summary(tail).map_err(|m| perr(&m))?),
                "note" => notes.push(tail.to_string()),
                "step" => entries.push(parse_entry(tail).map_err(|m| perr(&m))?),
                "audit" => audits.push(parse_audit(tail).map_err(|m| perr(&m))?),
                _ => rest.push((line, raw.to_string())),
            }
        }
        let pipeline = pipeline.ok_or(TraceError::Parse { line: 0, msg: "missing pipeline line".into() })?;
        let initial = initial.ok_or(TraceError::Parse { line: 0, msg: "missing initial line".into() })?;
        Ok((RuleTrace { pipeline, initial, entries, audits, notes, final_summary }, rest))
    }
}

fn field<'a>(tok: &'a str, key: &str) -> Result<&'a str, String> {
    tok.strip_prefix(key).and_then(|r| r.strip_prefix('=')).ok_or_else(|| format!("expected {key}=..., got {tok:?}"))
}

fn num<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("bad number {s:?}"))
}

fn rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_summary(s: &str) -> Result<InstanceSummary, String> {
    let t: Vec<&str> = s.split_whitespace().collect();
    if t.len() != 7 {
        return Err("summary needs 7 fields".into());
    }
    let gamma = field(t[5], "gamma")?;
    Ok(InstanceSummary {
        n: num(field(t[0], "n")?)?,
        m: num(field(t[1], "m")?)?,
        k: num(field(t[2], "k")?)?,
        t: rat(field(t[3], "t")?)?,
        t_size: num(field(t[4], "t_size")?)?,
        gamma: if gamma == "-" { None } else { Some(num(gamma)?) },
        delta_tbar: num(field(t[6], "delta_tbar")?)?,
    })
}

fn parse_entry(s: &str) -> Result<TraceEntry, String> {
    let (main, note) = match s.split_once(" note=") {
        Some((m, n)) => (m, n.to_string()),
        None => (s, String::new()),
    };
    let t: Vec<&str> = main.split_whitespace().collect();
    if t.len() != 5 {
        return Err("step needs rule, op, v, dt, dk".into());
    }
    let op = match t[1] {
        "include" => Op::Include,
        "exclude" => Op::Exclude,
        "shift" => Op::Shift,
        o => return Err(format!("unknown op {o:?}")),
    };
    let v = field(t[2], "v")?;
    Ok(TraceEntry {
        rule: t[0].to_string(),
        op,
        vertex: if v == "-" { None } else { Some(num(v)?) },
        dt: rat(field(t[3], "dt")?)?,
        dk: num(field(t[4], "dk")?)?,
        note,
    })
}

fn parse_audit(s: &str) -> Result<Audit, String> {
    let t: Vec<&str> = s.split_whitespace().collect();
    if t.len() != 4 {
        return Err("audit needs name, value, bound, ok".into());
    }
    let bound = field(t[2], "bound")?;
    Ok(Audit {
        name: t[0].to_string(),
        value: field(t[1], "value")?.to_string(),
        bound: (bound != "-").then(|| bound.to_string()),
        ok: num(field(t[3], "ok")?)?,
    })
}
