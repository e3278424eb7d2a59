//! Naive greatest-fixpoint bisimulation checker, written directly from
//! the transfer conditions, used as an independent oracle for the
//! partition-refinement implementations.

// Each integration test target compiles its own copy of this module and
// not all of them use the oracle.
#![allow(dead_code)]

use pardec::equiv::Semantics;
use pardec::lts::Lts;

/// Symmetric matrix of equivalent state pairs, computed by starting from
/// the full relation and deleting pairs whose transfer condition fails
/// until nothing changes.
pub fn naive_relation(l: &Lts, semantics: Semantics) -> Vec<Vec<bool>> {
    let n = l.num_states();
    let closure: Vec<Vec<usize>> = (0..n).map(|s| tau_closure(l, s)).collect();
    let mut rel = vec![vec![true; n]; n];
    loop {
        let mut changed = false;
        for p in 0..n {
            for q in 0..n {
                if rel[p][q]
                    && !(transfer(l, &closure, &rel, p, q, semantics)
                        && transfer(l, &closure, &rel, q, p, semantics))
                {
                    rel[p][q] = false;
                    rel[q][p] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// States reachable from `s` through silent steps only, `s` included.
fn tau_closure(l: &Lts, s: usize) -> Vec<usize> {
    let mut seen = vec![false; l.num_states()];
    seen[s] = true;
    let mut stack = vec![s];
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        out.push(u);
        for &(_, ref act, v) in l.out(u) {
            if act.is_silent() && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    out
}

/// Every move of `p` can be answered by `q` relative to `rel`.
fn transfer(
    l: &Lts,
    closure: &[Vec<usize>],
    rel: &[Vec<bool>],
    p: usize,
    q: usize,
    semantics: Semantics,
) -> bool {
    l.out(p).iter().all(|&(_, ref act, p1)| match semantics {
        Semantics::Strong => l
            .out(q)
            .iter()
            .any(|&(_, ref b, q1)| b == act && rel[p1][q1]),
        Semantics::Branching => {
            (act.is_silent() && rel[p1][q])
                || closure[q].iter().any(|&q_mid| {
                    rel[p][q_mid]
                        && l
                            .out(q_mid)
                            .iter()
                            .any(|&(_, ref b, q1)| b == act && rel[p1][q1])
                })
        }
        Semantics::Weak => {
            if act.is_silent() {
                closure[q].iter().any(|&q1| rel[p1][q1])
            } else {
                closure[q].iter().any(|&q_mid| {
                    l.out(q_mid).iter().any(|&(_, ref b, q1)| {
                        b == act && closure[q1].iter().any(|&q2| rel[p1][q2])
                    })
                })
            }
        }
    })
}
