use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{LexConstraint, ValueLexLeader};
use crate::csp::{Domain, Term, VarId, Wipeout, MAX_VALUE};

struct Classes {
    parent: Vec<usize>,
    dom: Vec<Domain>,
}

impl Classes {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when the merged class has no value left.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[b] = a;
            self.dom[a] = self.dom[a].intersect(self.dom[b]);
        }
        !self.dom[a].is_empty()
    }
}

/// DC for `left <=lex right` (or `<lex`), allowing constants and repeated variables.
///
/// A solution either agrees on a prefix `0..k` and has `left[k] < right[k]`, or (non-strict
/// only) agrees everywhere. For each `k` the prefix equalities are merged with union-find;
/// the split at `k` is feasible iff every class is non-empty and the two classes at `k`
/// differ and admit a smaller value on the left.
pub fn propagate_lex(c: &LexConstraint, domains: &mut [Domain]) -> Result<bool, Wipeout> {
    let mut var_node: BTreeMap<VarId, usize> = BTreeMap::new();
    let mut const_node = BTreeMap::new();
    let mut dom = Vec::new();
    let mut node = |t: Term, dom: &mut Vec<Domain>| match t {
        Term::Var(v) => *var_node.entry(v).or_insert_with(|| {
            dom.push(domains[v]);
            dom.len() - 1
        }),
        Term::Const(x) => *const_node.entry(x).or_insert_with(|| {
            dom.push(Domain::singleton(x));
            dom.len() - 1
        }),
    };
    let left: Vec<usize> = c.left.iter().map(|&t| node(t, &mut dom)).collect();
    let right: Vec<usize> = c.right.iter().map(|&t| node(t, &mut dom)).collect();
    if dom.iter().any(|d| d.is_empty()) {
        return Err(Wipeout);
    }
    let scope: Vec<(VarId, usize)> = var_node.into_iter().collect();
    let mut classes = Classes {
        parent: (0..dom.len()).collect(),
        dom,
    };
    let mut support = vec![Domain::EMPTY; scope.len()];
    let mut feasible = false;
    let len = left.len();
    let last = if c.strict { len } else { len + 1 };
    for k in 0..last {
        if k < len {
            let l = classes.find(left[k]);
            let r = classes.find(right[k]);
            let (lmin, rmax) = (classes.dom[l].min().unwrap(), classes.dom[r].max().unwrap());
            if l != r && lmin < rmax {
                feasible = true;
                for (s, &(_, n)) in support.iter_mut().zip(&scope) {
                    let cls = classes.find(n);
                    let allowed = if cls == l {
                        classes.dom[l].below(rmax)
                    } else if cls == r {
                        classes.dom[r].above(lmin)
                    } else {
                        classes.dom[cls]
                    };
                    *s = s.union(allowed);
                }
            }
            if !classes.union(left[k], right[k]) {
                break;
            }
        } else {
            feasible = true;
            for (s, &(_, n)) in support.iter_mut().zip(&scope) {
                let cls = classes.find(n);
                *s = s.union(classes.dom[cls]);
            }
        }
    }
    if !feasible {
        return Err(Wipeout);
    }
    let mut changed = false;
    for (&(v, _), &s) in scope.iter().zip(&support) {
        let pruned = domains[v].intersect(s);
        changed |= pruned != domains[v];
        domains[v] = pruned;
    }
    Ok(changed)
}

/// DC for `X <=lex θ(X)`.
///
/// Position-wise, a solution has fixed points of θ on a prefix and then either ends or
/// has a position with `x < θ(x)`; variables repeated across positions must meet every
/// condition at once.
pub fn propagate_value_leader(c: &ValueLexLeader, domains: &mut [Domain]) -> Result<bool, Wipeout> {
    let deg = c.theta.degree().min(MAX_VALUE as usize) as u32;
    let valid = Domain::range(1, deg);
    let mut fix = Domain::EMPTY;
    let mut less = Domain::EMPTY;
    for v in valid {
        let t = c.image(v).unwrap();
        if t == v {
            fix.insert(v);
        } else if v < t {
            less.insert(v);
        }
    }
    let mut scope = c.vars.clone();
    scope.sort_unstable();
    scope.dedup();
    let slot = |v: VarId| scope.binary_search(&v).unwrap();
    let mut cur: Vec<Domain> = scope.iter().map(|&v| domains[v].intersect(valid)).collect();
    if cur.iter().any(|d| d.is_empty()) {
        return Err(Wipeout);
    }
    let mut support = vec![Domain::EMPTY; scope.len()];
    let mut feasible = false;
    let mut prefix_ok = true;
    for &x in &c.vars {
        let i = slot(x);
        let cand = cur[i].intersect(less);
        if !cand.is_empty() {
            feasible = true;
            for (j, s) in support.iter_mut().enumerate() {
                *s = s.union(if j == i { cand } else { cur[j] });
            }
        }
        cur[i] = cur[i].intersect(fix);
        if cur[i].is_empty() {
            prefix_ok = false;
            break;
        }
    }
    if prefix_ok {
        feasible = true;
        for (s, &d) in support.iter_mut().zip(&cur) {
            *s = s.union(d);
        }
    }
    if !feasible {
        return Err(Wipeout);
    }
    let mut changed = false;
    for (&v, &s) in scope.iter().zip(&support) {
        let pruned = domains[v].intersect(s);
        changed |= pruned != domains[v];
        domains[v] = pruned;
    }
    Ok(changed)
}
