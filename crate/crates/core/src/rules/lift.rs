//! Translating kernel solutions back to the input graph.

use crate::fcgp::PlainKernel;
use crate::rational::Rational;

/// Turns a kernel solution into one made of non-gadget vertices that holds
/// every partial-solution vertex. Each gadget vertex is swapped for the
/// non-gadget vertex giving the best kernel value, then missing
/// partial-solution vertices are swapped in for the least useful free member.
/// The gadget constructions guarantee that some swap never loses value, so
/// taking the best one keeps a valid solution valid.
pub fn repair_witness(kernel: &PlainKernel, witness: &[usize]) -> Vec<usize> {
    let inst = &kernel.instance;
    let n = kernel.origin.len();
    let mut set: Vec<usize> = witness.to_vec();
    let mut member = vec![false; n];
    for &v in &set {
        member[v] = true;
    }
    let is_gadget = |v: usize| kernel.origin[v].is_none();
    let better = |a: &Rational, b: &Rational| inst.variant.strictly_better(a, b);

    while let Some(pos) = set.iter().position(|&v| is_gadget(v)) {
        let out = set[pos];
        let mut best: Option<(Rational, usize)> = None;
        for c in (0..n).filter(|&c| !member[c] && !is_gadget(c)) {
            set[pos] = c;
            let val = inst.val(&set);
            if best.as_ref().is_none_or(|(b, _)| better(&val, b)) {
                best = Some((val, c));
            }
        }
        match best {
            Some((_, c)) => {
                set[pos] = c;
                member[out] = false;
                member[c] = true;
            }
            None => {
                set[pos] = out;
                break;
            }
        }
    }

    for &p in &kernel.partial {
        if member[p] {
            continue;
        }
        let mut best: Option<(Rational, usize)> = None;
        for pos in 0..set.len() {
            if kernel.partial.contains(&set[pos]) {
                continue;
            }
            let keep = set[pos];
            set[pos] = p;
            let val = inst.val(&set);
            set[pos] = keep;
            if best.as_ref().is_none_or(|(b, _)| better(&val, b)) {
                best = Some((val, pos));
            }
        }
        if let Some((_, pos)) = best {
            member[set[pos]] = false;
            set[pos] = p;
            member[p] = true;
        }
    }
    set.sort_unstable();
    set
}

/// Repairs a kernel solution and maps it to input-graph vertices. `None` when
/// a gadget vertex could not be replaced.
pub fn lift_witness(kernel: &PlainKernel, witness: &[usize]) -> Option<Vec<usize>> {
    let mut out: Vec<usize> =
        repair_witness(kernel, witness).into_iter().map(|v| kernel.origin[v]).collect::<Option<_>>()?;
    out.sort_unstable();
    Some(out)
}
