//! Seeded random generation of expressions, transition systems, and
//! equivalent expression pairs, used by the randomized test suites.

use rand::Rng;

use crate::lts::{build_lts, Lts};
use crate::syntax::{Action, ProcessExpr};

/// Configuration for random expression sampling.
#[derive(Debug, Clone)]
pub struct ExprGen {
    /// Visible action names to draw from.
    pub actions: Vec<String>,
    /// Maximum nesting depth of the syntax tree.
    pub max_depth: usize,
    /// Restrict iteration labels to the silent action. All cycles in this
    /// calculus are self-loops, and the only visible self-loops come from
    /// visibly labelled iteration, so this restriction makes every sample
    /// weakly bounded.
    pub silent_iteration_only: bool,
    /// Rejection-sample until the reachable transition system has at most
    /// this many states.
    pub max_states: usize,
}

impl Default for ExprGen {
    fn default() -> Self {
        ExprGen {
            actions: vec!["a".into(), "b".into(), "c".into()],
            max_depth: 6,
            silent_iteration_only: false,
            max_states: 150,
        }
    }
}

impl ExprGen {
    /// Draw one expression whose transition system fits `max_states`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> ProcessExpr {
        for _ in 0..10_000 {
            let e = self.node(rng, self.max_depth);
            if build_lts(&e, self.max_states).is_ok() {
                return e;
            }
        }
        ProcessExpr::nil()
    }

    fn visible<R: Rng>(&self, rng: &mut R) -> Action {
        let name = &self.actions[rng.gen_range(0..self.actions.len())];
        Action::visible(name).expect("configured action names must be valid")
    }

    fn action<R: Rng>(&self, rng: &mut R) -> Action {
        if rng.gen_ratio(1, 4) {
            Action::silent()
        } else {
            self.visible(rng)
        }
    }

    fn node<R: Rng>(&self, rng: &mut R, depth: usize) -> ProcessExpr {
        if depth == 0 {
            return if rng.gen_ratio(2, 5) {
                ProcessExpr::nil()
            } else {
                ProcessExpr::prefix(self.action(rng), ProcessExpr::nil())
            };
        }
        match rng.gen_range(0..10) {
            0 => ProcessExpr::nil(),
            1..=3 => ProcessExpr::prefix(self.action(rng), self.node(rng, depth - 1)),
            4 | 5 => ProcessExpr::choice(self.node(rng, depth - 1), self.node(rng, depth - 1)),
            6 | 7 => ProcessExpr::merge(self.node(rng, depth - 1), self.node(rng, depth - 1)),
            _ => {
                let label = if self.silent_iteration_only {
                    Action::silent()
                } else {
                    self.action(rng)
                };
                ProcessExpr::iter(label, self.node(rng, depth - 1))
            }
        }
    }
}

/// A random transition system: a spanning tree over `1..=max_states`
/// states rooted at the initial state (so everything is reachable) plus a
/// random batch of extra edges, labelled from `alphabet` and the silent
/// action. States carry synthetic distinct expressions.
pub fn random_lts<R: Rng>(rng: &mut R, max_states: usize, alphabet: &[&str]) -> Lts {
    assert!(max_states >= 1);
    let n = rng.gen_range(1..=max_states);
    let pick_label = |rng: &mut R| -> Action {
        let k = rng.gen_range(0..=alphabet.len());
        if k == 0 {
            Action::silent()
        } else {
            Action::visible(alphabet[k - 1]).expect("alphabet names must be valid")
        }
    };
    let mut transitions = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        transitions.push((parent, pick_label(rng), i));
    }
    let extra = rng.gen_range(0..=2 * n);
    for _ in 0..extra {
        let src = rng.gen_range(0..n);
        let dst = rng.gen_range(0..n);
        transitions.push((src, pick_label(rng), dst));
    }
    // Synthetic pairwise distinct state expressions: prefix chains of
    // increasing length.
    let marker = Action::visible("s").unwrap();
    let mut states = Vec::with_capacity(n);
    let mut chain = ProcessExpr::nil();
    for _ in 0..n {
        states.push(chain.clone());
        chain = ProcessExpr::prefix(marker.clone(), chain);
    }
    Lts::from_parts(states, 0, transitions).expect("generated system is well formed")
}

/// Produce an expression equivalent to `e` under branching (and hence
/// weak) bisimilarity by applying one to three sound rewrites:
///
/// - wrapping a subterm in a silent prefix, only at positions whose
///   ancestors are all prefixes or merges (under choice or iteration the
///   initial silent step would be observable);
/// - swapping the operands of a choice or merge (strong equivalence);
/// - padding a subterm with an inert merge or choice against the
///   deadlocked process (strong equivalence);
/// - duplicating a subterm as a choice with itself (strong equivalence).
///
/// The strong rewrites are congruences everywhere; the silent wrap is
/// restricted to contexts where branching bisimilarity is preserved.
pub fn equivalent_variant<R: Rng>(rng: &mut R, e: &ProcessExpr) -> ProcessExpr {
    let mut cur = e.clone();
    for _ in 0..rng.gen_range(1..=3) {
        cur = rewrite_once(rng, &cur);
    }
    cur
}

#[derive(Clone, Copy)]
enum Rewrite {
    TauWrap,
    Swap,
    PadMerge,
    PadChoice,
    Duplicate,
}

fn rewrite_once<R: Rng>(rng: &mut R, e: &ProcessExpr) -> ProcessExpr {
    let mut moves: Vec<(Rewrite, usize)> = Vec::new();
    collect_moves(e, true, &mut 0, &mut moves);
    let (kind, target) = moves[rng.gen_range(0..moves.len())];
    let mut next_id = 0;
    transform_at(e, target, &mut next_id, &mut |sub| match kind {
        Rewrite::TauWrap => ProcessExpr::prefix(Action::silent(), sub),
        Rewrite::Swap => match sub {
            ProcessExpr::Choice(l, r) => ProcessExpr::Choice(r, l),
            ProcessExpr::Merge(l, r) => ProcessExpr::Merge(r, l),
            other => other,
        },
        Rewrite::PadMerge => ProcessExpr::merge(sub, ProcessExpr::nil()),
        Rewrite::PadChoice => ProcessExpr::choice(sub, ProcessExpr::nil()),
        Rewrite::Duplicate => ProcessExpr::choice(sub.clone(), sub),
    })
}

/// Enumerate candidate rewrites. `safe` tracks whether every ancestor of
/// the current node is a prefix or a merge, which is exactly when an
/// inserted silent prefix is unobservable.
fn collect_moves(
    e: &ProcessExpr,
    safe: bool,
    next_id: &mut usize,
    moves: &mut Vec<(Rewrite, usize)>,
) {
    let id = *next_id;
    *next_id += 1;
    if safe {
        moves.push((Rewrite::TauWrap, id));
    }
    moves.push((Rewrite::PadMerge, id));
    moves.push((Rewrite::PadChoice, id));
    moves.push((Rewrite::Duplicate, id));
    match e {
        ProcessExpr::Nil => {}
        ProcessExpr::Prefix(_, body) => collect_moves(body, safe, next_id, moves),
        ProcessExpr::Choice(l, r) => {
            moves.push((Rewrite::Swap, id));
            collect_moves(l, false, next_id, moves);
            collect_moves(r, false, next_id, moves);
        }
        ProcessExpr::Merge(l, r) => {
            moves.push((Rewrite::Swap, id));
            collect_moves(l, safe, next_id, moves);
            collect_moves(r, safe, next_id, moves);
        }
        ProcessExpr::Iter(_, body) => collect_moves(body, false, next_id, moves),
    }
}

fn transform_at(
    e: &ProcessExpr,
    target: usize,
    next_id: &mut usize,
    f: &mut impl FnMut(ProcessExpr) -> ProcessExpr,
) -> ProcessExpr {
    let id = *next_id;
    *next_id += 1;
    if id == target {
        return f(e.clone());
    }
    match e {
        ProcessExpr::Nil => ProcessExpr::Nil,
        ProcessExpr::Prefix(a, body) => {
            ProcessExpr::prefix(a.clone(), transform_at(body, target, next_id, f))
        }
        ProcessExpr::Choice(l, r) => {
            let l = transform_at(l, target, next_id, f);
            let r = transform_at(r, target, next_id, f);
            ProcessExpr::choice(l, r)
        }
        ProcessExpr::Merge(l, r) => {
            let l = transform_at(l, target, next_id, f);
            let r = transform_at(r, target, next_id, f);
            ProcessExpr::merge(l, r)
        }
        ProcessExpr::Iter(a, body) => {
            ProcessExpr::iter(a.clone(), transform_at(body, target, next_id, f))
        }
    }
}
