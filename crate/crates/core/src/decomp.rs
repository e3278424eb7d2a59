//! Parallel decomposition of processes into indecomposable components.
//!
//! A decomposition of an expression is a finite multiset of
//! indecomposable bisimilarity classes whose composition in the quotient
//! monoid is the class of the expression. The search enumerates
//! non-decreasing sequences of indecomposable classes with defined
//! partial products, pruned by two additivity laws: weak depth is
//! additive over merge and invariant across a class, so for a weakly
//! bounded target the depth is both a budget and an exact bound on the
//! number of components; weak norm is additive as well, but only
//! class-invariant on totally normed systems, so the norm budget is
//! applied just there.
//!
//! Verdicts on systems that are not totally normed carry a caveat flag:
//! the carrier of the quotient is only guaranteed to contain every
//! potential component for totally normed processes, where components can
//! be exhibited by running the rest of the system down to an inert state.

use crate::equiv::Semantics;
use crate::lts::default_state_limit;
use crate::monoid::{process_quotient, ElemId, Multiset, ProcessQuotient, QuotientError};
use crate::norms::{classify_lts, NormValue};
use crate::order::{pair_is_minimal, DEFAULT_DECOMP_BOUND};
use crate::syntax::ProcessExpr;

/// Whether the class of `e` is indecomposable in its quotient monoid:
/// not the identity and not a composition of two non-identity classes.
pub fn is_indecomposable(e: &ProcessExpr, semantics: Semantics) -> Result<bool, QuotientError> {
    is_indecomposable_with_limit(e, semantics, default_state_limit())
}

pub fn is_indecomposable_with_limit(
    e: &ProcessExpr,
    semantics: Semantics,
    state_limit: usize,
) -> Result<bool, QuotientError> {
    let q = process_quotient(e, semantics, state_limit)?;
    Ok(q.monoid().is_indecomposable_elem(q.root_class()))
}

/// All decompositions of one expression, as class multisets and as
/// vectors of representative expressions (sorted by class index).
#[derive(Debug, Clone)]
pub struct Decompositions {
    pub class_decompositions: Vec<Multiset>,
    pub decompositions: Vec<Vec<ProcessExpr>>,
    /// The search was cut at its cardinality bound with viable extensions
    /// remaining, so the list may be incomplete.
    pub truncated: bool,
    /// The system is not totally normed, so the quotient carrier is not
    /// guaranteed to contain every potential component.
    pub caveat: bool,
}

pub fn parallel_decompositions(
    e: &ProcessExpr,
    semantics: Semantics,
) -> Result<Decompositions, QuotientError> {
    parallel_decompositions_with_limit(e, semantics, default_state_limit())
}

pub fn parallel_decompositions_with_limit(
    e: &ProcessExpr,
    semantics: Semantics,
    state_limit: usize,
) -> Result<Decompositions, QuotientError> {
    let q = process_quotient(e, semantics, state_limit)?;
    Ok(decompositions_in(&q, q.root_class()))
}

/// Decompositions of an arbitrary class of an already built quotient.
pub fn decompositions_in(q: &ProcessQuotient, target: ElemId) -> Decompositions {
    let classification = classify_lts(q.lts());
    let caveat = !classification.totally_normed;

    // Depth is additive over composition and every non-identity class has
    // depth at least one, so a finite target depth bounds the number of
    // components exactly.
    let depth_budget = match q.class_depth(target) {
        NormValue::Finite(d) => Some(d),
        NormValue::Infinite => None,
    };
    let bound = depth_budget.map_or(DEFAULT_DECOMP_BOUND, |d| d as usize);
    let norm_budget = if classification.totally_normed {
        match q.class_norm(target) {
            NormValue::Finite(n) => Some(n),
            NormValue::Infinite => None,
        }
    } else {
        None
    };

    let m = q.monoid();
    let indec = m.indecomposables();
    let search = Search {
        q,
        indec: &indec,
        target,
        bound,
        norm_budget,
        depth_budget,
    };
    let mut found = Vec::new();
    let mut truncated = false;
    let mut parts = Vec::new();
    search.dfs(0, m.identity(), 0, 0, &mut parts, &mut found, &mut truncated);

    let decompositions = found
        .iter()
        .map(|ms| {
            ms.expand()
                .into_iter()
                .map(|c| q.representative(c).clone())
                .collect()
        })
        .collect();
    Decompositions {
        class_decompositions: found,
        decompositions,
        truncated,
        caveat,
    }
}

struct Search<'a> {
    q: &'a ProcessQuotient,
    indec: &'a [ElemId],
    target: ElemId,
    bound: usize,
    norm_budget: Option<u64>,
    depth_budget: Option<u64>,
}

impl Search<'_> {
    /// Can `p` extend a partial composition `acc` within the budgets?
    /// Returns the product and the budget increments.
    fn step(&self, acc: ElemId, used_norm: u64, used_depth: u64, p: ElemId) -> Option<(ElemId, u64, u64)> {
        let dn = match (self.norm_budget, self.q.class_norm(p)) {
            (None, _) => 0,
            (Some(budget), NormValue::Finite(n)) if used_norm + n <= budget => n,
            _ => return None,
        };
        let dd = match (self.depth_budget, self.q.class_depth(p)) {
            (None, _) => 0,
            (Some(budget), NormValue::Finite(d)) if used_depth + d <= budget => d,
            _ => return None,
        };
        let next = self.q.monoid().compose(acc, p)?;
        Some((next, dn, dd))
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        start: usize,
        acc: ElemId,
        used_norm: u64,
        used_depth: u64,
        parts: &mut Vec<ElemId>,
        found: &mut Vec<Multiset>,
        truncated: &mut bool,
    ) {
        if acc == self.target {
            found.push(Multiset::from_elems(parts));
        }
        if parts.len() >= self.bound {
            if self.indec[start..]
                .iter()
                .any(|&p| self.step(acc, used_norm, used_depth, p).is_some())
            {
                *truncated = true;
            }
            return;
        }
        for i in start..self.indec.len() {
            let p = self.indec[i];
            if let Some((next, dn, dd)) = self.step(acc, used_norm, used_depth, p) {
                parts.push(p);
                self.dfs(
                    i,
                    next,
                    used_norm + dn,
                    used_depth + dd,
                    parts,
                    found,
                    truncated,
                );
                parts.pop();
            }
        }
    }
}

/// Verdict of the uniqueness check for one expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompStatus {
    /// Exactly one decomposition.
    Unique,
    /// At least two; `first`/`second` hold a minimal witnessing pair.
    Multiple,
    /// No decomposition exists within the search bound.
    None,
    /// The search was cut before the verdict could be decided.
    Truncated,
}

impl std::fmt::Display for DecompStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DecompStatus::Unique => "unique",
            DecompStatus::Multiple => "multiple",
            DecompStatus::None => "none",
            DecompStatus::Truncated => "truncated",
        })
    }
}

#[derive(Debug, Clone)]
pub struct DecompVerdict {
    pub status: DecompStatus,
    /// The decomposition (unique case) or the first of the witnessing
    /// pair (multiple case), as representative expressions.
    pub first: Option<Vec<ProcessExpr>>,
    pub second: Option<Vec<ProcessExpr>>,
    pub first_classes: Option<Multiset>,
    pub second_classes: Option<Multiset>,
    pub caveat: bool,
}

pub fn check_unique(
    e: &ProcessExpr,
    semantics: Semantics,
) -> Result<DecompVerdict, QuotientError> {
    check_unique_with_limit(e, semantics, default_state_limit())
}

pub fn check_unique_with_limit(
    e: &ProcessExpr,
    semantics: Semantics,
    state_limit: usize,
) -> Result<DecompVerdict, QuotientError> {
    let q = process_quotient(e, semantics, state_limit)?;
    Ok(check_unique_in(&q, q.root_class()))
}

/// Uniqueness verdict for an arbitrary class of an already built
/// quotient. When several decompositions exist, the reported pair is
/// minimal in the componentwise decomposition extension, with ties broken
/// lexicographically by the expansions.
pub fn check_unique_in(q: &ProcessQuotient, target: ElemId) -> DecompVerdict {
    let d = decompositions_in(q, target);
    let expand = |ms: &Multiset| -> Vec<ProcessExpr> {
        ms.expand()
            .into_iter()
            .map(|c| q.representative(c).clone())
            .collect()
    };
    let found = &d.class_decompositions;
    if found.len() >= 2 {
        // Two decompositions refute uniqueness even if the search was
        // truncated. Prefer a pair with no violating pair strictly below
        // it; the enumeration order is already lexicographic.
        let mut pick = (0, 1);
        'outer: for i in 0..found.len() {
            for j in 0..found.len() {
                if i != j && pair_is_minimal(q.monoid(), q.order(), &found[i], &found[j]) {
                    pick = (i, j);
                    break 'outer;
                }
            }
        }
        let (i, j) = pick;
        return DecompVerdict {
            status: DecompStatus::Multiple,
            first: Some(expand(&found[i])),
            second: Some(expand(&found[j])),
            first_classes: Some(found[i].clone()),
            second_classes: Some(found[j].clone()),
            caveat: d.caveat,
        };
    }
    if d.truncated {
        return DecompVerdict {
            status: DecompStatus::Truncated,
            first: found.first().map(|ms| expand(ms)),
            second: None,
            first_classes: found.first().cloned(),
            second_classes: None,
            caveat: d.caveat,
        };
    }
    match found.first() {
        Some(ms) => DecompVerdict {
            status: DecompStatus::Unique,
            first: Some(expand(ms)),
            second: None,
            first_classes: Some(ms.clone()),
            second_classes: None,
            caveat: d.caveat,
        },
        None => DecompVerdict {
            status: DecompStatus::None,
            first: None,
            second: None,
            first_classes: None,
            second_classes: None,
            caveat: d.caveat,
        },
    }
}
