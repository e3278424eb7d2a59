//! Weak norms and weak depths of states, plus the derived classification
//! of expressions (weakly normed, totally normed, weakly bounded).
//!
//! The weak norm of a state is the least number of visible actions on any
//! path to a deadlocked state; silent steps are free. The weak depth is
//! the supremum of the number of visible actions over all paths. Both are
//! computed on the whole transition system at once: the norm by a 0/1
//! shortest path search backwards from the deadlocked states, the depth by
//! a longest path computation on the condensation of the state graph.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::equiv::Semantics;
use crate::graph;
use crate::lts::{build_lts, LimitExceeded, Lts, StateId};
use crate::syntax::ProcessExpr;

/// A norm or depth value: a natural number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormValue {
    Finite(u64),
    Infinite,
}

impl Serialize for NormValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            NormValue::Finite(n) => serializer.serialize_u64(*n),
            NormValue::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

impl NormValue {
    pub fn is_finite(self) -> bool {
        matches!(self, NormValue::Finite(_))
    }

    /// Addition with infinity absorbing.
    pub fn plus(self, other: NormValue) -> NormValue {
        match (self, other) {
            (NormValue::Finite(a), NormValue::Finite(b)) => NormValue::Finite(a + b),
            _ => NormValue::Infinite,
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Finite(n) => write!(f, "{n}"),
            NormValue::Infinite => write!(f, "infinite"),
        }
    }
}

/// Weak norms for every state of `l`.
///
/// `result[s]` is the least number of visible transitions on a path from
/// `s` to a deadlocked state, or `Infinite` if no deadlocked state is
/// reachable from `s`.
pub fn weak_norms(l: &Lts) -> Vec<NormValue> {
    let n = l.num_states();
    // Reverse adjacency with 0/1 weights (silent steps cost nothing).
    let mut rev: Vec<Vec<(StateId, u64)>> = vec![Vec::new(); n];
    for &(src, ref act, dst) in l.transitions() {
        rev[dst].push((src, if act.is_silent() { 0 } else { 1 }));
    }

    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut queue: VecDeque<StateId> = VecDeque::new();
    for s in 0..n {
        if l.is_deadlocked(s) {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    // 0/1 BFS: zero-weight edges go to the front of the deque. A state may
    // be queued more than once; stale entries are skipped by the distance
    // check on pop.
    let mut settled = vec![false; n];
    while let Some(v) = queue.pop_front() {
        if settled[v] {
            continue;
        }
        settled[v] = true;
        let dv = dist[v].unwrap();
        for &(u, w) in &rev[v] {
            let cand = dv + w;
            if dist[u].map_or(true, |cur| cand < cur) {
                dist[u] = Some(cand);
                if w == 0 {
                    queue.push_front(u);
                } else {
                    queue.push_back(u);
                }
            }
        }
    }

    dist.into_iter()
        .map(|d| d.map_or(NormValue::Infinite, NormValue::Finite))
        .collect()
}

/// Weak norm of a single state.
pub fn weak_norm(l: &Lts, s: StateId) -> NormValue {
    weak_norms(l)[s]
}

/// Weak depths for every state of `l`.
///
/// `result[s]` is the supremum over all paths from `s` of the number of
/// visible transitions on the path. It is infinite exactly when `s` can
/// reach a strongly connected component that contains a visible
/// transition; otherwise it is the longest weighted path in the
/// condensation of the state graph.
pub fn weak_depths(l: &Lts) -> Vec<NormValue> {
    let n = l.num_states();
    let edges: Vec<(u32, u32)> = l
        .transitions()
        .iter()
        .map(|&(src, _, dst)| (src as u32, dst as u32))
        .collect();
    let (comp, count) = graph::scc(n, &edges);
    let count = count as usize;

    // Component ids come out in reverse topological order: every edge that
    // crosses components goes from a higher id to a lower one, so a single
    // ascending sweep sees all successors of a component before it.
    let mut pumping = vec![false; count];
    let mut best = vec![0u64; count];
    for &(src, ref act, dst) in l.transitions() {
        if comp[src] == comp[dst] && !act.is_silent() {
            pumping[comp[src] as usize] = true;
        }
    }
    for c in 0..count {
        let mut depth = 0u64;
        let mut inf = pumping[c];
        for &(src, ref act, dst) in l.transitions() {
            if comp[src] as usize != c || comp[dst] as usize == c {
                continue;
            }
            let tc = comp[dst] as usize;
            let w = if act.is_silent() { 0 } else { 1 };
            inf = inf || pumping[tc];
            depth = depth.max(best[tc] + w);
        }
        if inf {
            pumping[c] = true;
        }
        best[c] = depth;
    }

    (0..n)
        .map(|s| {
            let c = comp[s] as usize;
            if pumping[c] {
                NormValue::Infinite
            } else {
                NormValue::Finite(best[c])
            }
        })
        .collect()
}

/// Weak depth of a single state.
pub fn weak_depth(l: &Lts, s: StateId) -> NormValue {
    weak_depths(l)[s]
}

/// Norm-theoretic classification of an expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub weak_norm: NormValue,
    pub weak_depth: NormValue,
    /// Some deadlocked state is reachable (the weak norm is finite).
    pub weakly_normed: bool,
    /// Weakly normed, and every reachable state of norm zero is
    /// bisimilar to the deadlocked process.
    pub totally_normed: bool,
    /// The weak depth is finite.
    pub weakly_bounded: bool,
}

/// Classify `e`, building its transition system with the default state
/// limit.
pub fn classify(e: &ProcessExpr) -> Result<Classification, LimitExceeded> {
    classify_with_limit(e, crate::lts::default_state_limit())
}

/// Classify `e` with an explicit state limit.
pub fn classify_with_limit(
    e: &ProcessExpr,
    state_limit: usize,
) -> Result<Classification, LimitExceeded> {
    let lts = build_lts(e, state_limit)?;
    Ok(classify_lts(&lts))
}

/// Classification of the process underlying an already built system.
pub fn classify_lts(lts: &Lts) -> Classification {
    let norms = weak_norms(lts);
    let depths = weak_depths(lts);
    let root = lts.initial();
    let weakly_normed = norms[root].is_finite();
    let weakly_bounded = depths[root].is_finite();

    let totally_normed = weakly_normed && {
        // Every reachable state of norm zero must be equivalent to the
        // deadlocked process. Branching and weak bisimilarity necessarily
        // agree on that test; compute both and insist that they do.
        let branching = nil_states(lts, Semantics::Branching);
        let weak = nil_states(lts, Semantics::Weak);
        assert_eq!(
            branching, weak,
            "branching and weak agreement on deadlock equivalence"
        );
        (0..lts.num_states())
            .all(|s| norms[s] != NormValue::Finite(0) || branching[s])
    };

    Classification {
        weak_norm: norms[root],
        weak_depth: depths[root],
        weakly_normed,
        totally_normed,
        weakly_bounded,
    }
}

/// For each state, whether it is bisimilar to the deadlocked process under
/// the given semantics. Computed with one partition refinement over the
/// system extended with a fresh deadlocked state.
fn nil_states(l: &Lts, semantics: Semantics) -> Vec<bool> {
    let n = l.num_states();
    let labels = graph::Graph::intern_labels(&[l]);
    let mut label_id = std::collections::HashMap::new();
    for (i, a) in labels.iter().enumerate() {
        label_id.insert(a.clone(), i as u16);
    }
    let edges: Vec<(u32, u16, u32)> = l
        .transitions()
        .iter()
        .map(|&(src, ref act, dst)| (src as u32, label_id[act], dst as u32))
        .collect();
    // State n is the fresh deadlocked reference point.
    let g = graph::Graph::new(n + 1, labels, edges);
    let block = crate::equiv::partition_graph(&g, semantics);
    let zero = block[n];
    (0..n).map(|s| block[s] == zero).collect()
}
