use alloc::vec::Vec;

use super::ChainOrder;
use crate::csp::{Domain, Term, Value, Wipeout};

/// Least vector of the box that is `>= bound`.
fn least_geq(dbox: &[Domain], bound: &[Value]) -> Option<Vec<Value>> {
    let n = dbox.len();
    let mut prefix = 0;
    while prefix < n && dbox[prefix].contains(bound[prefix]) {
        prefix += 1;
    }
    if prefix == n {
        return Some(bound.to_vec());
    }
    // raise the latest position whose prefix can copy the bound
    (0..=prefix).rev().find_map(|k| {
        let up = dbox[k].above(bound[k]).min()?;
        let mut w = bound[..k].to_vec();
        w.push(up);
        w.extend(dbox[k + 1..].iter().map(|d| d.min().unwrap()));
        Some(w)
    })
}

/// Greatest vector of the box that is `<= bound`.
fn greatest_leq(dbox: &[Domain], bound: &[Value]) -> Option<Vec<Value>> {
    let n = dbox.len();
    let mut prefix = 0;
    while prefix < n && dbox[prefix].contains(bound[prefix]) {
        prefix += 1;
    }
    if prefix == n {
        return Some(bound.to_vec());
    }
    (0..=prefix).rev().find_map(|k| {
        let down = dbox[k].below(bound[k]).max()?;
        let mut w = bound[..k].to_vec();
        w.push(down);
        w.extend(dbox[k + 1..].iter().map(|d| d.max().unwrap()));
        Some(w)
    })
}

const TIGHT_LO: u8 = 1;
const TIGHT_HI: u8 = 2;

fn step(state: u8, x: Value, lo: Option<Value>, hi: Option<Value>) -> Option<u8> {
    let mut next = 0;
    if state & TIGHT_LO != 0 {
        let lo = lo.unwrap();
        if x < lo {
            return None;
        }
        if x == lo {
            next |= TIGHT_LO;
        }
    }
    if state & TIGHT_HI != 0 {
        let hi = hi.unwrap();
        if x > hi {
            return None;
        }
        if x == hi {
            next |= TIGHT_HI;
        }
    }
    Some(next)
}

/// Per-position supports of `{v in box : lo <=lex v <=lex hi}`, via reachability over the
/// four (tight-to-lo, tight-to-hi) states. `fwd` is scratch space.
fn box_supports(
    dbox: &[Domain],
    lo: Option<&[Value]>,
    hi: Option<&[Value]>,
    fwd: &mut Vec<u8>,
    support: &mut [Domain],
) {
    let n = dbox.len();
    let at = |b: Option<&[Value]>, j: usize| b.map(|b| b[j]);
    fwd.clear();
    let start = (if lo.is_some() { TIGHT_LO } else { 0 }) | (if hi.is_some() { TIGHT_HI } else { 0 });
    fwd.push(1u8 << start);
    for j in 0..n {
        let mut next = 0u8;
        for s in (0..4).filter(|s| fwd[j] & (1 << s) != 0) {
            for x in dbox[j] {
                if let Some(t) = step(s, x, at(lo, j), at(hi, j)) {
                    next |= 1 << t;
                }
            }
        }
        fwd.push(next);
    }
    let mut after = 0b1111u8;
    for j in (0..n).rev() {
        let mut here = 0u8;
        support[j] = Domain::EMPTY;
        for s in (0..4u8).filter(|s| s & !start == 0) {
            for x in dbox[j] {
                if let Some(t) = step(s, x, at(lo, j), at(hi, j)) {
                    if after & (1 << t) != 0 {
                        here |= 1 << s;
                        if fwd[j] & (1 << s) != 0 {
                            support[j].insert(x);
                        }
                    }
                }
            }
        }
        after = here;
    }
}

/// DC for a chain of lex-ordered vectors with pairwise distinct variables.
///
/// A forward pass computes the least feasible value of each vector given its
/// predecessors, a backward pass the greatest given its successors. Vector `i` is then
/// independently constrained to lie between its predecessor's least and its successor's
/// greatest feasible values.
pub fn propagate_chain(vectors: &[Vec<Term>], order: ChainOrder, domains: &mut [Domain]) -> Result<bool, Wipeout> {
    let mut seq: Vec<&Vec<Term>> = vectors.iter().collect();
    if order == ChainOrder::ReverseLex {
        seq.reverse();
    }
    let m = seq.len();
    if m == 0 {
        return Ok(false);
    }
    let len = seq[0].len();
    // flat row-major buffers, one slot of `len` per vector
    let mut boxes = Vec::with_capacity(m * len);
    for v in &seq {
        boxes.extend(v.iter().map(|t| t.domain(domains)));
    }
    if boxes.iter().any(|d| d.is_empty()) {
        return Err(Wipeout);
    }
    if m < 2 {
        return Ok(false);
    }
    let bx = |i: usize| &boxes[i * len..(i + 1) * len];
    let mut least: Vec<Vec<Value>> = Vec::with_capacity(m);
    least.push(bx(0).iter().map(|d| d.min().unwrap()).collect());
    for i in 1..m {
        let next = least_geq(bx(i), &least[i - 1]).ok_or(Wipeout)?;
        least.push(next);
    }
    let mut greatest: Vec<Vec<Value>> = alloc::vec![Vec::new(); m];
    greatest[m - 1] = bx(m - 1).iter().map(|d| d.max().unwrap()).collect();
    for i in (0..m - 1).rev() {
        greatest[i] = greatest_leq(bx(i), &greatest[i + 1]).ok_or(Wipeout)?;
    }
    let mut changed = false;
    let mut fwd = Vec::with_capacity(len + 1);
    let mut support = alloc::vec![Domain::EMPTY; len];
    for i in 0..m {
        // a feasible chain gives every vector a non-empty range, so constant ones are fine
        if seq[i].iter().all(|t| matches!(t, Term::Const(_))) {
            continue;
        }
        let lo = (i > 0).then(|| least[i - 1].as_slice());
        let hi = (i + 1 < m).then(|| greatest[i + 1].as_slice());
        box_supports(bx(i), lo, hi, &mut fwd, &mut support);
        for (t, &s) in seq[i].iter().zip(&support) {
            if s.is_empty() {
                return Err(Wipeout);
            }
            if let Term::Var(v) = *t {
                let pruned = domains[v].intersect(s);
                changed |= pruned != domains[v];
                domains[v] = pruned;
            }
        }
    }
    Ok(changed)
}
