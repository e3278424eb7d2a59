//! Labelled transition systems generated from process expressions.
//!
//! States are expressions deduplicated by structural equality and numbered in
//! breadth-first discovery order from the root, which keeps state ids and all
//! exports deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::syntax::{format_expr, Action, ProcessExpr};

pub type StateId = usize;

/// Default cap on explored states.
pub const DEFAULT_STATE_LIMIT: usize = 100_000;

/// Environment variable that overrides [`DEFAULT_STATE_LIMIT`].
pub const STATE_LIMIT_ENV: &str = "PARDEC_STATE_LIMIT";

/// The state cap to use when the caller does not pass one: the value of
/// `PARDEC_STATE_LIMIT` if set and parseable, the default otherwise.
pub fn default_state_limit() -> usize {
    std::env::var(STATE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_STATE_LIMIT)
}

/// State-space exploration hit the configured cap.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("state limit exceeded: more than {limit} states reachable")]
pub struct LimitExceeded {
    pub limit: usize,
}

/// Rejected input to [`Lts::from_parts`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid transition system: {reason}")]
pub struct InvalidLts {
    pub reason: String,
}

/// A finite labelled transition system over process expressions.
#[derive(Debug, Clone)]
pub struct Lts {
    states: Vec<ProcessExpr>,
    initial: StateId,
    /// Sorted by `(src, action, dst)` and deduplicated.
    transitions: Vec<(StateId, Action, StateId)>,
    /// CSR offsets: transitions of state `s` live at `out_index[s]..out_index[s+1]`.
    out_index: Vec<usize>,
}

/// Derives the one-step transitions of an expression.
///
/// Order follows the operational rules: a prefix fires; a choice yields the
/// derivatives of its left then right argument; a merge interleaves, keeping
/// the untouched side in place; an iteration loops on its own action and
/// additionally offers every derivative of its body. Duplicate
/// (action, target) pairs are dropped, keeping first occurrences.
pub fn successors(e: &ProcessExpr) -> Vec<(Action, ProcessExpr)> {
    let mut out = Vec::new();
    collect_successors(e, &mut out);
    let mut deduped: Vec<(Action, ProcessExpr)> = Vec::with_capacity(out.len());
    for step in out {
        if !deduped.contains(&step) {
            deduped.push(step);
        }
    }
    deduped
}

fn collect_successors(e: &ProcessExpr, out: &mut Vec<(Action, ProcessExpr)>) {
    match e {
        ProcessExpr::Nil => {}
        ProcessExpr::Prefix(act, body) => out.push((act.clone(), (**body).clone())),
        ProcessExpr::Choice(l, r) => {
            collect_successors(l, out);
            collect_successors(r, out);
        }
        ProcessExpr::Merge(l, r) => {
            let mut left = Vec::new();
            collect_successors(l, &mut left);
            for (act, l2) in left {
                out.push((act, ProcessExpr::merge(l2, (**r).clone())));
            }
            let mut right = Vec::new();
            collect_successors(r, &mut right);
            for (act, r2) in right {
                out.push((act, ProcessExpr::merge((**l).clone(), r2)));
            }
        }
        ProcessExpr::Iter(act, body) => {
            out.push((act.clone(), e.clone()));
            collect_successors(body, out);
        }
    }
}

/// Explores the state space reachable from `root` breadth-first, erroring out
/// once more than `state_limit` distinct states appear.
pub fn build_lts(root: &ProcessExpr, state_limit: usize) -> Result<Lts, LimitExceeded> {
    let mut index: HashMap<ProcessExpr, StateId> = HashMap::new();
    let mut states: Vec<ProcessExpr> = Vec::new();
    let mut transitions: Vec<(StateId, Action, StateId)> = Vec::new();
    let mut queue: VecDeque<StateId> = VecDeque::new();

    index.insert(root.clone(), 0);
    states.push(root.clone());
    queue.push_back(0);

    while let Some(src) = queue.pop_front() {
        let expr = states[src].clone();
        for (act, target) in successors(&expr) {
            let dst = match index.get(&target) {
                Some(&id) => id,
                None => {
                    if states.len() >= state_limit {
                        return Err(LimitExceeded { limit: state_limit });
                    }
                    let id = states.len();
                    index.insert(target.clone(), id);
                    states.push(target);
                    queue.push_back(id);
                    id
                }
            };
            transitions.push((src, act, dst));
        }
    }

    Ok(Lts::assemble(states, 0, transitions))
}

impl Lts {
    fn assemble(
        states: Vec<ProcessExpr>,
        initial: StateId,
        mut transitions: Vec<(StateId, Action, StateId)>,
    ) -> Lts {
        transitions.sort();
        transitions.dedup();
        let mut out_index = vec![0usize; states.len() + 1];
        for &(src, _, _) in &transitions {
            out_index[src + 1] += 1;
        }
        for i in 0..states.len() {
            out_index[i + 1] += out_index[i];
        }
        Lts {
            states,
            initial,
            transitions,
            out_index,
        }
    }

    /// Builds an LTS from explicit parts, validating that states are pairwise
    /// distinct, indices are in range, and every state is reachable from the
    /// initial one.
    pub fn from_parts(
        states: Vec<ProcessExpr>,
        initial: StateId,
        transitions: Vec<(StateId, Action, StateId)>,
    ) -> Result<Lts, InvalidLts> {
        if states.is_empty() {
            return Err(InvalidLts {
                reason: "no states".into(),
            });
        }
        if initial >= states.len() {
            return Err(InvalidLts {
                reason: format!("initial state {initial} out of range"),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for s in &states {
            if !seen.insert(s) {
                return Err(InvalidLts {
                    reason: format!("duplicate state {}", format_expr(s)),
                });
            }
        }
        for &(src, _, dst) in &transitions {
            if src >= states.len() || dst >= states.len() {
                return Err(InvalidLts {
                    reason: format!("transition ({src}, _, {dst}) out of range"),
                });
            }
        }
        let lts = Lts::assemble(states, initial, transitions);
        let mut visited = vec![false; lts.num_states()];
        let mut queue = VecDeque::from([initial]);
        visited[initial] = true;
        while let Some(s) = queue.pop_front() {
            for &(_, _, dst) in lts.out(s) {
                if !visited[dst] {
                    visited[dst] = true;
                    queue.push_back(dst);
                }
            }
        }
        if let Some(unreached) = visited.iter().position(|v| !v) {
            return Err(InvalidLts {
                reason: format!("state {unreached} unreachable from initial"),
            });
        }
        Ok(lts)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[ProcessExpr] {
        &self.states
    }

    pub fn state(&self, s: StateId) -> &ProcessExpr {
        &self.states[s]
    }

    /// Index of a structurally equal state, if present.
    pub fn find_state(&self, e: &ProcessExpr) -> Option<StateId> {
        self.states.iter().position(|s| s == e)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn transitions(&self) -> &[(StateId, Action, StateId)] {
        &self.transitions
    }

    /// Outgoing transitions of `s`, sorted by action then target.
    pub fn out(&self, s: StateId) -> &[(StateId, Action, StateId)] {
        &self.transitions[self.out_index[s]..self.out_index[s + 1]]
    }

    pub fn is_deadlocked(&self, s: StateId) -> bool {
        self.out(s).is_empty()
    }

    /// States reachable from `s` through internal steps only, including `s`,
    /// sorted ascending.
    pub fn tau_reach(&self, s: StateId) -> Vec<StateId> {
        assert!(s < self.num_states(), "state {s} out of range");
        let mut visited = vec![false; self.num_states()];
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(_, ref act, dst) in self.out(u) {
                if act.is_silent() && !visited[dst] {
                    visited[dst] = true;
                    queue.push_back(dst);
                }
            }
        }
        (0..self.num_states()).filter(|&u| visited[u]).collect()
    }

    /// The saturated system over the same states: a visible transition for
    /// every internal-visible-internal composite, and an internal transition
    /// for every internal path, reflexive loops included.
    pub fn weak_saturate(&self) -> Lts {
        let closures: Vec<Vec<StateId>> =
            (0..self.num_states()).map(|s| self.tau_reach(s)).collect();
        let mut sat: BTreeSet<(StateId, Action, StateId)> = BTreeSet::new();
        for s in 0..self.num_states() {
            for &t in &closures[s] {
                sat.insert((s, Action::Silent, t));
            }
            for &u in &closures[s] {
                for &(_, ref act, v) in self.out(u) {
                    if act.is_silent() {
                        continue;
                    }
                    for &t in &closures[v] {
                        sat.insert((s, act.clone(), t));
                    }
                }
            }
        }
        Lts::assemble(self.states.clone(), self.initial, sat.into_iter().collect())
    }

    /// Graphviz rendering: one node per state labelled with its expression
    /// (the initial state double-circled), one edge per transition. Output is
    /// ordered by state index, then action, then target.
    pub fn export_dot(&self) -> String {
        let mut dot = String::from("digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (i, state) in self.states.iter().enumerate() {
            let label = format_expr(state).replace('\\', "\\\\").replace('"', "\\\"");
            if i == self.initial {
                let _ = writeln!(dot, "  s{i} [label=\"{label}\", shape=doublecircle];");
            } else {
                let _ = writeln!(dot, "  s{i} [label=\"{label}\"];");
            }
        }
        for (src, act, dst) in &self.transitions {
            let _ = writeln!(dot, "  s{src} -> s{dst} [label=\"{}\"];", act.label());
        }
        dot.push_str("}\n");
        dot
    }

    /// JSON rendering with states as canonical expression strings and
    /// transitions as `[source, label, target]` triples in sorted order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "states": self.states.iter().map(format_expr).collect::<Vec<_>>(),
            "initial": self.initial,
            "transitions": self.transitions.iter()
                .map(|(src, act, dst)| {
                    serde_json::json!([src, act.label(), dst])
                })
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expr;

    fn p(text: &str) -> ProcessExpr {
        parse_expr(text).unwrap()
    }

    #[test]
    fn prefix_fires_once() {
        let steps = successors(&p("a.b.0"));
        assert_eq!(steps, vec![(Action::visible("a").unwrap(), p("b.0"))]);
    }

    #[test]
    fn merge_interleaves_componentwise() {
        let steps = successors(&p("a.0 || b.0"));
        assert_eq!(
            steps,
            vec![
                (Action::visible("a").unwrap(), p("0 || b.0")),
                (Action::visible("b").unwrap(), p("a.0 || 0")),
            ]
        );
    }

    #[test]
    fn iteration_loops_and_exits_through_body() {
        let steps = successors(&p("a*tau.b.0"));
        assert_eq!(
            steps,
            vec![
                (Action::visible("a").unwrap(), p("a*tau.b.0")),
                (Action::Silent, p("b.0")),
            ]
        );
    }

    #[test]
    fn choice_offers_both_sides_and_duplicates_collapse() {
        let steps = successors(&p("a.0 + b.0"));
        assert_eq!(steps.len(), 2);
        let steps = successors(&p("a.0 + a.0"));
        assert_eq!(steps, vec![(Action::visible("a").unwrap(), p("0"))]);
    }

    #[test]
    fn nil_is_deadlocked() {
        assert!(successors(&ProcessExpr::Nil).is_empty());
    }

    #[test]
    fn example_system_has_nine_states_and_seventeen_transitions() {
        let lts = build_lts(&p("a*tau.b.0 || a*tau.b.0"), DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(lts.num_states(), 9);
        assert_eq!(lts.transitions().len(), 17);
    }

    #[test]
    fn state_limit_is_enforced() {
        let err = build_lts(&p("a*tau.b.0 || a*tau.b.0"), 4).unwrap_err();
        assert_eq!(err.limit, 4);
        // exactly at the limit is fine
        assert!(build_lts(&p("a*tau.b.0 || a*tau.b.0"), 9).is_ok());
    }

    #[test]
    fn tau_reach_follows_internal_steps_only() {
        let lts = build_lts(&p("a*tau.b.0 || a*tau.b.0"), DEFAULT_STATE_LIMIT).unwrap();
        let reach = lts.tau_reach(lts.initial());
        let got: Vec<String> = reach.iter().map(|&s| format_expr(lts.state(s))).collect();
        let want = [
            "a*tau.b.0 || a*tau.b.0",
            "b.0 || a*tau.b.0",
            "a*tau.b.0 || b.0",
            "b.0 || b.0",
        ];
        assert_eq!(got.len(), 4);
        for w in want {
            assert!(got.iter().any(|g| g == w), "missing {w}");
        }
    }

    #[test]
    fn iteration_with_silent_label_only_loops() {
        let lts = build_lts(&p("tau*0"), DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(lts.num_states(), 1);
        assert_eq!(lts.transitions(), &[(0, Action::Silent, 0)]);
        assert_eq!(lts.tau_reach(0), vec![0]);
    }

    #[test]
    fn saturation_composes_internal_and_visible_steps() {
        let lts = build_lts(&p("tau.a.0"), DEFAULT_STATE_LIMIT).unwrap();
        let sat = lts.weak_saturate();
        let a = Action::visible("a").unwrap();
        // state 0 = tau.a.0, 1 = a.0, 2 = 0
        let want = vec![
            (0, Action::Silent, 0),
            (0, Action::Silent, 1),
            (0, a.clone(), 2),
            (1, Action::Silent, 1),
            (1, a.clone(), 2),
            (2, Action::Silent, 2),
        ];
        assert_eq!(sat.transitions(), &want[..]);
    }

    #[test]
    fn saturating_deadlock_adds_reflexive_internal_loop() {
        let lts = build_lts(&ProcessExpr::Nil, DEFAULT_STATE_LIMIT).unwrap();
        let sat = lts.weak_saturate();
        assert_eq!(sat.transitions(), &[(0, Action::Silent, 0)]);
    }

    #[test]
    fn dot_export_is_deterministic_and_complete() {
        let lts = build_lts(&p("a.0 || b.0"), DEFAULT_STATE_LIMIT).unwrap();
        let dot = lts.export_dot();
        assert_eq!(dot, lts.export_dot());
        assert!(dot.starts_with("digraph lts {"));
        assert!(dot.contains("s0 [label=\"a.0 || b.0\", shape=doublecircle];"));
        assert_eq!(dot.matches(" -> ").count(), lts.transitions().len());
    }

    #[test]
    fn json_export_shape() {
        let lts = build_lts(&p("a.0"), DEFAULT_STATE_LIMIT).unwrap();
        let v = lts.to_json();
        assert_eq!(v["initial"], 0);
        assert_eq!(v["states"].as_array().unwrap().len(), 2);
        assert_eq!(v["transitions"][0][1], "a");
    }

    #[test]
    fn from_parts_rejects_unreachable_states() {
        let states = vec![p("a.0"), p("b.0")];
        let err = Lts::from_parts(states, 0, vec![]).unwrap_err();
        assert!(err.reason.contains("unreachable"));
    }

    #[test]
    fn state_limit_env_override_is_read() {
        // not set in the test environment: default applies
        if std::env::var(STATE_LIMIT_ENV).is_err() {
            assert_eq!(default_state_limit(), DEFAULT_STATE_LIMIT);
        }
    }
}
