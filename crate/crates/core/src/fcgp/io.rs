//! Text snapshots of annotated instances.
//!
//! ```text
//! fcgp-instance
//! 3 2
//! 0 1
//! 1 2
//! T: 1
//! bonus: 0 1/2
//! k=2 t=3/2 alpha=1/2 variant=max
//! ```
//! Only alive vertices are written, renumbered in increasing order.

use super::{Alpha, AnnotatedInstance, Variant};
use crate::graph::{parse_graph, write_edgelist, Format};
use crate::rational::{fmt_rational, parse_rational, Rational};
use num_traits::Zero;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("instance line {line}: {msg}")]
pub struct InstanceParseError {
    pub line: usize,
    pub msg: String,
}

pub fn write_instance(inst: &AnnotatedInstance) -> String {
    let (c, _) = inst.compact();
    let mut s = String::from("fcgp-instance\n");
    s.push_str(&write_edgelist(c.graph()));
    let t: Vec<String> = c.partial_solution().iter().map(|v| v.to_string()).collect();
    let _ = writeln!(s, "T:{}{}", if t.is_empty() { "" } else { " " }, t.join(" "));
    for v in 0..c.capacity() {
        if !c.bonus(v).is_zero() {
            let _ = writeln!(s, "bonus: {v} {}", fmt_rational(c.bonus(v)));
        }
    }
    let _ = writeln!(
        s,
        "k={} t={} alpha={} variant={}",
        c.k,
        fmt_rational(&c.t),
        c.alpha,
        c.variant
    );
    s
}

pub fn parse_instance(text: &str) -> Result<AnnotatedInstance, InstanceParseError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let fail = |line: usize, msg: String| InstanceParseError { line, msg };
    let mut it = lines.into_iter().peekable();
    match it.next() {
        Some((_, "fcgp-instance")) => {}
        Some((l, _)) => return Err(fail(l, "expected 'fcgp-instance' header".into())),
        None => return Err(fail(0, "empty input".into())),
    }
    let (hl, header) = it.next().ok_or_else(|| fail(0, "missing graph header".into()))?;
    let m: usize = header
        .split_whitespace()
        .nth(1)
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| fail(hl, format!("malformed graph header {header:?}")))?;
    let mut block = format!("{header}\n");
    for _ in 0..m {
        let (_, l) = it.next().ok_or_else(|| fail(hl, "graph block truncated".into()))?;
        block.push_str(l);
        block.push('\n');
    }
    let g = parse_graph(block.as_bytes(), Format::EdgeList)
        .map_err(|e| fail(hl + e.line.saturating_sub(1), e.kind.to_string()))?;
    let n = g.n();

    let (tl, tline) = it.next().ok_or_else(|| fail(0, "missing 'T:' line".into()))?;
    let rest = tline.strip_prefix("T:").ok_or_else(|| fail(tl, "expected 'T:' line".into()))?;
    let mut t_set = Vec::new();
    for tok in rest.split_whitespace() {
        t_set.push(tok.parse::<usize>().map_err(|_| fail(tl, format!("bad vertex {tok:?}")))?);
    }

    let mut bonus = vec![Rational::zero(); n];
    let mut params = None;
    for (l, line) in it {
        if let Some(rest) = line.strip_prefix("bonus:") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(fail(l, format!("malformed bonus line {line:?}")));
            }
            let v: usize = toks[0].parse().map_err(|_| fail(l, format!("bad vertex {:?}", toks[0])))?;
            if v >= n {
                return Err(fail(l, format!("vertex {v} out of range")));
            }
            bonus[v] = parse_rational(toks[1]).map_err(|e| fail(l, e.to_string()))?;
        } else if params.is_none() {
            params = Some(parse_params(line).map_err(|m| fail(l, m))?);
        } else {
            return Err(fail(l, format!("unexpected line {line:?}")));
        }
    }
    let (k, t, alpha, variant) = params.ok_or_else(|| fail(0, "missing parameter line".into()))?;
    AnnotatedInstance::annotated(g, &t_set, bonus, k, t, alpha, variant).map_err(|e| fail(tl, e.to_string()))
}

fn parse_params(line: &str) -> Result<(usize, Rational, Alpha, Variant), String> {
    let (mut k, mut t, mut alpha, mut variant) = (None, None, None, None);
    for tok in line.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(|| format!("expected key=value, got {tok:?}"))?;
        match key {
            "k" => k = Some(val.parse::<usize>().map_err(|_| format!("bad k {val:?}"))?),
            "t" => t = Some(parse_rational(val).map_err(|e| e.to_string())?),
            "alpha" => alpha = Some(val.parse::<Alpha>()?),
            "variant" => variant = Some(val.parse::<Variant>()?),
            _ => return Err(format!("unknown key {key:?}")),
        }
    }
    Ok((
        k.ok_or("missing k")?,
        t.ok_or("missing t")?,
        alpha.ok_or("missing alpha")?,
        variant.ok_or("missing variant")?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rational::{frac, int};

    #[test]
    fn round_trip_with_deleted_vertex() {
        let mut inst = AnnotatedInstance::annotated(
            Graph::path(4),
            &[1],
            vec![int(0), int(0), frac(1, 2), int(0)],
            2,
            frac(3, 2),
            Alpha::frac(1, 2),
            Variant::Max,
        )
        .unwrap();
        inst.exclude(3).unwrap();
        let text = write_instance(&inst);
        assert!(text.contains("T: 1\n"));
        assert!(text.contains("bonus: 2 1\n"));
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst.compact().0);
        assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_instance("").is_err());
        assert!(parse_instance("fcgp-instance\n2 1\n0 1\nT:\nk=1 t=0.5 alpha=1/2 variant=max\n").is_err());
        let e = parse_instance("fcgp-instance\n2 1\n0 1\nT: 5\nk=1 t=0 alpha=1/2 variant=max\n").unwrap_err();
        assert_eq!(e.line, 4);
    }
}
