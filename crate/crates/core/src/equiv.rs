//! Strong, branching, and weak bisimilarity.
//!
//! All three are computed as coarsest stable partitions by signature
//! refinement: states are repeatedly regrouped by the set of observations
//! they can make relative to the current partition until nothing splits.
//! For the branching variant a state inherits the observations of states it
//! reaches by silent steps inside its own block; the weak variant refines the
//! saturated system instead.

use std::collections::HashMap;

use crate::graph::{scc, Graph, SILENT};
use crate::lts::{build_lts, LimitExceeded, Lts, StateId};
use crate::syntax::{Action, ProcessExpr};

/// Which equivalence to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Strong,
    Branching,
    Weak,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Strong => "strong",
            Semantics::Branching => "branching",
            Semantics::Weak => "weak",
        }
    }
}

impl std::fmt::Display for Semantics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strong" => Ok(Semantics::Strong),
            "branching" => Ok(Semantics::Branching),
            "weak" => Ok(Semantics::Weak),
            other => Err(format!(
                "unknown semantics {other:?}, expected strong, branching, or weak"
            )),
        }
    }
}

/// A partition of the states of a transition system into equivalence blocks.
///
/// Blocks are sorted internally and ordered by their smallest member, so the
/// numbering is stable across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<StateId>>,
}

impl Partition {
    pub(crate) fn from_raw(raw: &[u32]) -> Partition {
        let mut renumber: HashMap<u32, usize> = HashMap::new();
        let mut block_of = Vec::with_capacity(raw.len());
        let mut blocks: Vec<Vec<StateId>> = Vec::new();
        for (state, &b) in raw.iter().enumerate() {
            let id = *renumber.entry(b).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            block_of.push(id);
            blocks[id].push(state);
        }
        Partition { block_of, blocks }
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, s: StateId) -> usize {
        self.block_of[s]
    }

    pub fn same_block(&self, a: StateId, b: StateId) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    /// True if every block of `self` is contained in a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|block| {
            let target = coarser.block_of[block[0]];
            block.iter().all(|&s| coarser.block_of[s] == target)
        })
    }
}

/// Groups states by `(current block, signature)`, in state order so block ids
/// are deterministic. Returns the new assignment and block count.
fn regroup<K: std::hash::Hash + Eq>(block: &[u32], sigs: Vec<K>) -> (Vec<u32>, usize) {
    let mut ids: HashMap<(u32, K), u32> = HashMap::new();
    let mut next = Vec::with_capacity(block.len());
    for (state, sig) in sigs.into_iter().enumerate() {
        let fresh = ids.len() as u32;
        let id = *ids.entry((block[state], sig)).or_insert(fresh);
        next.push(id);
    }
    let count = ids.len();
    (next, count)
}

pub(crate) fn strong_partition(g: &Graph) -> Vec<u32> {
    let mut block = vec![0u32; g.n];
    let mut num_blocks = 1usize;
    loop {
        let sigs: Vec<Vec<(u16, u32)>> = (0..g.n)
            .map(|s| {
                let mut sig: Vec<(u16, u32)> = g
                    .out(s)
                    .iter()
                    .map(|&(_, label, dst)| (label, block[dst as usize]))
                    .collect();
                sig.sort_unstable();
                sig.dedup();
                sig
            })
            .collect();
        let (next, count) = regroup(&block, sigs);
        if count == num_blocks {
            return block;
        }
        block = next;
        num_blocks = count;
    }
}

/// One refinement round of the branching signature: the observations a state
/// can make after silent steps that stay inside its current block, skipping
/// silent self-block moves.
fn branching_signatures(g: &Graph, block: &[u32]) -> Vec<Vec<(u16, u32)>> {
    // Silent edges that stay within a block are the channel through which
    // signatures propagate backwards.
    let inert: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .filter(|&&(src, label, dst)| {
            label == SILENT && block[src as usize] == block[dst as usize]
        })
        .map(|&(src, _, dst)| (src, dst))
        .collect();
    let (comp, comp_count) = scc(g.n, &inert);

    let mut members: Vec<Vec<u32>> = vec![Vec::new(); comp_count as usize];
    for s in 0..g.n as u32 {
        members[comp[s as usize] as usize].push(s);
    }

    // Component ids come out in reverse topological order, so successors of a
    // component along inert edges are already finished when it is processed.
    let mut comp_sigs: Vec<Vec<(u16, u32)>> = vec![Vec::new(); comp_count as usize];
    for c in 0..comp_count as usize {
        let mut sig: Vec<(u16, u32)> = Vec::new();
        for &s in &members[c] {
            let su = s as usize;
            for &(_, label, dst) in g.out(su) {
                let same_block = block[dst as usize] == block[su];
                if label == SILENT && same_block {
                    if comp[dst as usize] != comp[su] {
                        sig.extend_from_slice(&comp_sigs[comp[dst as usize] as usize]);
                    }
                } else {
                    sig.push((label, block[dst as usize]));
                }
            }
        }
        sig.sort_unstable();
        sig.dedup();
        comp_sigs[c] = sig;
    }

    (0..g.n)
        .map(|s| comp_sigs[comp[s] as usize].clone())
        .collect()
}

pub(crate) fn branching_partition(g: &Graph) -> Vec<u32> {
    let mut block = vec![0u32; g.n];
    let mut num_blocks = 1usize;
    loop {
        let sigs = branching_signatures(g, &block);
        let (next, count) = regroup(&block, sigs);
        if count == num_blocks {
            return block;
        }
        block = next;
        num_blocks = count;
    }
}

pub(crate) fn partition_graph(g: &Graph, semantics: Semantics) -> Vec<u32> {
    match semantics {
        Semantics::Strong => strong_partition(g),
        Semantics::Branching => branching_partition(g),
        Semantics::Weak => strong_partition(&g.saturate()),
    }
}

/// Coarsest strong bisimulation of the system.
pub fn strong_bisim(l: &Lts) -> Partition {
    Partition::from_raw(&strong_partition(&Graph::from_lts(l)))
}

/// Coarsest branching bisimulation of the system.
pub fn branching_bisim(l: &Lts) -> Partition {
    Partition::from_raw(&branching_partition(&Graph::from_lts(l)))
}

/// Coarsest weak bisimulation of the system.
pub fn weak_bisim(l: &Lts) -> Partition {
    Partition::from_raw(&partition_graph(&Graph::from_lts(l), Semantics::Weak))
}

pub fn bisim(l: &Lts, semantics: Semantics) -> Partition {
    Partition::from_raw(&partition_graph(&Graph::from_lts(l), semantics))
}

/// A state index passed to [`check_relation`] was out of range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("state {state} out of range: the system has {num_states} states")]
pub struct StateOutOfRange {
    pub state: StateId,
    pub num_states: usize,
}

/// Outcome of checking a candidate relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationVerdict {
    Ok,
    Violation {
        pair: (StateId, StateId),
        action: Action,
        reason: String,
    },
}

impl RelationVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, RelationVerdict::Ok)
    }
}

/// Checks whether the symmetric closure of `pairs` satisfies the transfer
/// condition of the chosen equivalence for every pair and transition.
///
/// The relation is taken as given: reflexive pairs are not added implicitly.
/// The first violation in lexicographic `(state, state, action)` order is
/// reported.
pub fn check_relation(
    l: &Lts,
    pairs: &[(StateId, StateId)],
    semantics: Semantics,
) -> Result<RelationVerdict, StateOutOfRange> {
    let n = l.num_states();
    for &(p, q) in pairs {
        for s in [p, q] {
            if s >= n {
                return Err(StateOutOfRange {
                    state: s,
                    num_states: n,
                });
            }
        }
    }
    let mut relation: Vec<(StateId, StateId)> = Vec::with_capacity(pairs.len() * 2);
    for &(p, q) in pairs {
        relation.push((p, q));
        relation.push((q, p));
    }
    relation.sort_unstable();
    relation.dedup();
    let related =
        |p: StateId, q: StateId| -> bool { relation.binary_search(&(p, q)).is_ok() };

    let mut closures: Vec<Option<Vec<StateId>>> = vec![None; n];
    let closure = |s: StateId, cache: &mut Vec<Option<Vec<StateId>>>| -> Vec<StateId> {
        if cache[s].is_none() {
            cache[s] = Some(l.tau_reach(s));
        }
        cache[s].clone().unwrap()
    };

    for &(p, q) in &relation {
        for (_, act, p2) in l.out(p) {
            let matched = match semantics {
                Semantics::Strong => l
                    .out(q)
                    .iter()
                    .any(|(_, b, q2)| b == act && related(*p2, *q2)),
                Semantics::Branching => {
                    let mut ok = false;
                    for qq in closure(q, &mut closures) {
                        if !related(p, qq) {
                            continue;
                        }
                        if act.is_silent() && related(*p2, qq) {
                            ok = true;
                            break;
                        }
                        if l.out(qq)
                            .iter()
                            .any(|(_, b, q2)| b == act && related(*p2, *q2))
                        {
                            ok = true;
                            break;
                        }
                    }
                    ok
                }
                Semantics::Weak => {
                    let mut ok = false;
                    'search: for qq in closure(q, &mut closures) {
                        if act.is_silent() && related(*p2, qq) {
                            ok = true;
                            break;
                        }
                        for (_, b, q3) in l.out(qq) {
                            if b != act {
                                continue;
                            }
                            for q2 in closure(*q3, &mut closures) {
                                if related(*p2, q2) {
                                    ok = true;
                                    break 'search;
                                }
                            }
                        }
                    }
                    ok
                }
            };
            if !matched {
                return Ok(RelationVerdict::Violation {
                    pair: (p, q),
                    action: act.clone(),
                    reason: format!(
                        "state {q} cannot answer {p} --{}--> {p2} under {} semantics",
                        act.label(),
                        semantics
                    ),
                });
            }
        }
    }
    Ok(RelationVerdict::Ok)
}

/// Decides whether two expressions are equivalent under the chosen semantics,
/// exploring both state spaces with the given cap.
pub fn equivalent_with_limit(
    p: &ProcessExpr,
    q: &ProcessExpr,
    semantics: Semantics,
    state_limit: usize,
) -> Result<bool, LimitExceeded> {
    let lp = build_lts(p, state_limit)?;
    let lq = build_lts(q, state_limit)?;
    let (g, offset) = Graph::from_lts_pair(&lp, &lq);
    let raw = partition_graph(&g, semantics);
    Ok(raw[lp.initial()] == raw[offset + lq.initial()])
}

/// [`equivalent_with_limit`] with the default state cap.
pub fn equivalent(
    p: &ProcessExpr,
    q: &ProcessExpr,
    semantics: Semantics,
) -> Result<bool, LimitExceeded> {
    equivalent_with_limit(p, q, semantics, crate::lts::default_state_limit())
}
