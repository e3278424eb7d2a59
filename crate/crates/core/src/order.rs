//! The reachability order on a quotient monoid and the axioms that make
//! such an order useful for decomposition arguments.
//!
//! A class `x` lies below a class `y` when some state of `y` can reach a
//! state of `x` in the transition system; the order is the reflexive
//! transitive closure of that step relation, computed on the class graph.
//!
//! [`check_axioms`] verifies, by exhaustive search over the finite
//! carrier, the properties a decomposition order is expected to have:
//! antisymmetry (so the preorder is a partial order and, being finite,
//! well founded), the identity being least, compatibility and strict
//! compatibility with composition, precompositionality, and the
//! Archimedean property. Power cancellation is checked the same way even
//! though it is a consequence of the axioms rather than an axiom itself:
//! on carriers that violate some axiom it can fail, and the check reports
//! exactly where.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::monoid::{ElemId, Multiset, PartialMonoid, ProcessQuotient};

/// Default cardinality bound for decomposition searches used by the
/// relations in this module.
pub const DEFAULT_DECOMP_BOUND: usize = 16;

/// A violation detected while constructing an order relation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("relation is not {property} at elements {elements:?}")]
pub struct OrderViolation {
    pub property: &'static str,
    pub elements: Vec<ElemId>,
}

/// A reflexive transitive relation on a finite carrier, stored as one
/// bitset of predecessors per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRel {
    n: usize,
    words: usize,
    /// `rows[y]` holds the bitset of all `x` with `x ⪯ y`.
    rows: Vec<u64>,
}

impl OrderRel {
    /// The identity relation: every element related only to itself.
    pub fn discrete(n: usize) -> OrderRel {
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for x in 0..n {
            rows[x * words + x / 64] |= 1 << (x % 64);
        }
        OrderRel { n, words, rows }
    }

    /// Build from a predicate, verifying reflexivity and transitivity.
    pub fn from_leq_fn(
        n: usize,
        leq: impl Fn(ElemId, ElemId) -> bool,
    ) -> Result<OrderRel, OrderViolation> {
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for y in 0..n {
            for x in 0..n {
                if leq(x, y) {
                    rows[y * words + x / 64] |= 1 << (x % 64);
                }
            }
        }
        let rel = OrderRel { n, words, rows };
        for x in 0..n {
            if !rel.leq(x, x) {
                return Err(OrderViolation {
                    property: "reflexive",
                    elements: vec![x],
                });
            }
        }
        for z in 0..n {
            for y in rel.predecessors(z) {
                // Everything below y must already be below z.
                let yr = &rel.rows[y * rel.words..(y + 1) * rel.words];
                let zr = &rel.rows[z * rel.words..(z + 1) * rel.words];
                if let Some(w) = (0..rel.words).find(|&w| yr[w] & !zr[w] != 0) {
                    let bit = (yr[w] & !zr[w]).trailing_zeros() as usize;
                    return Err(OrderViolation {
                        property: "transitive",
                        elements: vec![w * 64 + bit, y, z],
                    });
                }
            }
        }
        Ok(rel)
    }

    /// Reflexive transitive closure of a step relation given as edges
    /// `(above, below)`.
    fn from_steps(n: usize, steps: &[(ElemId, ElemId)]) -> OrderRel {
        let mut succ: Vec<Vec<ElemId>> = vec![Vec::new(); n];
        for &(above, below) in steps {
            succ[above].push(below);
        }
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        let mut stack = Vec::new();
        let mut seen = vec![false; n];
        for y in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            stack.push(y);
            seen[y] = true;
            while let Some(v) = stack.pop() {
                rows[y * words + v / 64] |= 1 << (v % 64);
                for &w in &succ[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        OrderRel { n, words, rows }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `x ⪯ y`.
    pub fn leq(&self, x: ElemId, y: ElemId) -> bool {
        self.rows[y * self.words + x / 64] >> (x % 64) & 1 == 1
    }

    /// `x ≺ y`: below but not equivalent. Defined via mutual relation so
    /// it stays meaningful even when antisymmetry has not been verified.
    pub fn lt(&self, x: ElemId, y: ElemId) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    /// All `x` with `x ⪯ y`, ascending.
    pub fn predecessors(&self, y: ElemId) -> Vec<ElemId> {
        (0..self.n).filter(|&x| self.leq(x, y)).collect()
    }

    /// Elements strictly below `y`; empty exactly when `y` is minimal.
    pub fn strictly_below(&self, y: ElemId) -> Vec<ElemId> {
        (0..self.n).filter(|&x| self.lt(x, y)).collect()
    }
}

/// The order on quotient classes: `x ⪯ y` when a state of class `y`
/// reaches a state of class `x`.
///
/// Because the semantics is compatible with the transition relation,
/// reachability between classes does not depend on the chosen members, so
/// the closure of class-level steps is well defined.
pub fn reachability_order(q: &ProcessQuotient) -> OrderRel {
    let n = q.num_classes();
    let mut steps: Vec<(ElemId, ElemId)> = q
        .lts()
        .transitions()
        .iter()
        .map(|&(src, _, dst)| (q.class_of_state(src), q.class_of_state(dst)))
        .collect();
    steps.sort_unstable();
    steps.dedup();
    OrderRel::from_steps(n, &steps)
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomResult {
    Pass,
    /// No violation found, but an exponent search hit its cap before the
    /// power sequence resolved, so the verdict is not exhaustive.
    CappedPass,
    /// Violated; the witness layout depends on the axiom and is given in
    /// [`check_axioms`].
    Fail { witness: Vec<usize> },
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        !matches!(self, AxiomResult::Fail { .. })
    }
}

/// Results for all checked properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub well_founded: AxiomResult,
    pub least_identity: AxiomResult,
    pub compatible: AxiomResult,
    pub strictly_compatible: AxiomResult,
    pub precompositional: AxiomResult,
    pub archimedean: AxiomResult,
    pub power_cancellation: AxiomResult,
}

impl AxiomReport {
    /// The five core order axioms (strict compatibility and power
    /// cancellation are reported but not required here).
    pub fn core_passed(&self) -> bool {
        self.well_founded.passed()
            && self.least_identity.passed()
            && self.compatible.passed()
            && self.precompositional.passed()
            && self.archimedean.passed()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &AxiomResult)> {
        [
            ("well_founded", &self.well_founded),
            ("least_identity", &self.least_identity),
            ("compatible", &self.compatible),
            ("strictly_compatible", &self.strictly_compatible),
            ("precompositional", &self.precompositional),
            ("archimedean", &self.archimedean),
            ("power_cancellation", &self.power_cancellation),
        ]
        .into_iter()
    }
}

/// Check the order axioms on `(m, o)` by exhaustive search.
///
/// Witness layouts on failure:
/// - `well_founded`: `[a, b]` with `a ⪯ b`, `b ⪯ a`, `a ≠ b` (the finite
///   carrier makes well-foundedness equivalent to antisymmetry);
/// - `least_identity`: `[x]` with the identity not below `x`;
/// - `compatible`: `[x, y, z]` with `x ⪯ y`, `y∘z` defined, but `x∘z`
///   undefined or not below `y∘z`;
/// - `strictly_compatible`: as compatible with both orders strict;
/// - `precompositional`: `[x, y, z]` with `x ⪯ y∘z` but no `x' ⪯ y`,
///   `z' ⪯ z` with `x'∘z' = x`;
/// - `archimedean`: `[x, y]` with `x` not the identity and every positive
///   power of `x` below `y`;
/// - `power_cancellation`: `[p, k, x, y]` with `p` indecomposable, `p` not
///   strictly below `x` or `y`, and `p^k∘x = p^k∘y` while `x ≠ y`.
///
/// `power_cap` bounds the exponent searches for the last two checks; a
/// sequence of powers that neither becomes undefined nor repeats within
/// the cap downgrades a pass to [`AxiomResult::CappedPass`].
pub fn check_axioms(m: &PartialMonoid, o: &OrderRel, power_cap: usize) -> AxiomReport {
    assert_eq!(m.size(), o.len(), "carrier sizes must agree");
    AxiomReport {
        well_founded: check_well_founded(o),
        least_identity: check_least_identity(m, o),
        compatible: check_compatible(m, o, false),
        strictly_compatible: check_compatible(m, o, true),
        precompositional: check_precompositional(m, o),
        archimedean: check_archimedean(m, o, power_cap),
        power_cancellation: power_cancellation(m, o, power_cap),
    }
}

fn check_well_founded(o: &OrderRel) -> AxiomResult {
    for a in 0..o.len() {
        for b in a + 1..o.len() {
            if o.leq(a, b) && o.leq(b, a) {
                return AxiomResult::Fail { witness: vec![a, b] };
            }
        }
    }
    AxiomResult::Pass
}

fn check_least_identity(m: &PartialMonoid, o: &OrderRel) -> AxiomResult {
    for x in 0..m.size() {
        if !o.leq(m.identity(), x) {
            return AxiomResult::Fail { witness: vec![x] };
        }
    }
    AxiomResult::Pass
}

fn check_compatible(m: &PartialMonoid, o: &OrderRel, strict: bool) -> AxiomResult {
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            let premise = if strict { o.lt(x, y) } else { o.leq(x, y) };
            if !premise {
                continue;
            }
            for z in 0..n {
                let Some(yz) = m.compose(y, z) else { continue };
                let ok = match m.compose(x, z) {
                    None => false,
                    Some(xz) => {
                        if strict {
                            o.lt(xz, yz)
                        } else {
                            o.leq(xz, yz)
                        }
                    }
                };
                if !ok {
                    return AxiomResult::Fail {
                        witness: vec![x, y, z],
                    };
                }
            }
        }
    }
    AxiomResult::Pass
}

fn check_precompositional(m: &PartialMonoid, o: &OrderRel) -> AxiomResult {
    let n = m.size();
    let words = n.div_ceil(64);
    // reach[z][y'] = bitset of { y'∘z' : z' ⪯ z }, so the candidate set
    // for a pair (y, z) is the union of reach[z][y'] over y' ⪯ y.
    let mut reach = vec![0u64; n * n * words];
    for z in 0..n {
        for yp in 0..n {
            let row = &mut reach[(z * n + yp) * words..(z * n + yp + 1) * words];
            for zp in o.predecessors(z) {
                if let Some(v) = m.compose(yp, zp) {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
        }
    }
    let mut candidates = vec![0u64; words];
    for y in 0..n {
        for z in 0..n {
            let Some(yz) = m.compose(y, z) else { continue };
            candidates.iter_mut().for_each(|w| *w = 0);
            for yp in o.predecessors(y) {
                let row = &reach[(z * n + yp) * words..(z * n + yp + 1) * words];
                for w in 0..words {
                    candidates[w] |= row[w];
                }
            }
            for x in o.predecessors(yz) {
                if candidates[x / 64] >> (x % 64) & 1 == 0 {
                    return AxiomResult::Fail {
                        witness: vec![x, y, z],
                    };
                }
            }
        }
    }
    AxiomResult::Pass
}

/// How a power sequence resolved.
enum OrbitEnd {
    /// The next power is undefined; the orbit is the full set of defined
    /// powers.
    Undefined,
    /// The sequence revisited an earlier power; the orbit is the full set
    /// of powers, all defined, repeating forever.
    Cycle,
    /// The cap was reached first; the orbit is only a prefix.
    Capped,
}

/// The positive powers of `x`, in order, up to the point where the
/// sequence goes undefined, repeats, or hits the cap.
fn power_orbit(m: &PartialMonoid, x: ElemId, cap: usize) -> (Vec<ElemId>, OrbitEnd) {
    let mut orbit = vec![x];
    let mut cur = x;
    loop {
        match m.compose(cur, x) {
            None => return (orbit, OrbitEnd::Undefined),
            Some(next) => {
                if orbit.contains(&next) {
                    return (orbit, OrbitEnd::Cycle);
                }
                if orbit.len() >= cap {
                    return (orbit, OrbitEnd::Capped);
                }
                orbit.push(next);
                cur = next;
            }
        }
    }
}

fn check_archimedean(m: &PartialMonoid, o: &OrderRel, power_cap: usize) -> AxiomResult {
    let mut capped = false;
    for x in 0..m.size() {
        if x == m.identity() {
            continue;
        }
        let (orbit, end) = power_orbit(m, x, power_cap);
        match end {
            // Some power of x is undefined, so no y is dominated by every
            // power: relations only hold between defined elements.
            OrbitEnd::Undefined => continue,
            // Only a prefix of the powers is known, so domination of that
            // prefix is inconclusive: later powers might go undefined.
            OrbitEnd::Capped => {
                capped = true;
                continue;
            }
            // The orbit is the complete, eternally defined power set.
            OrbitEnd::Cycle => {
                for y in 0..m.size() {
                    if orbit.iter().all(|&p| o.leq(p, y)) {
                        return AxiomResult::Fail { witness: vec![x, y] };
                    }
                }
            }
        }
    }
    if capped {
        AxiomResult::CappedPass
    } else {
        AxiomResult::Pass
    }
}

/// Brute-force check of the power cancellation property: for
/// indecomposable `p` with `p ⊀ x` and `p ⊀ y`, if `p^k∘x = p^k∘y` for
/// some `k ≥ 1` (both sides defined) then `x = y`.
pub fn power_cancellation(m: &PartialMonoid, o: &OrderRel, power_cap: usize) -> AxiomResult {
    let mut capped = false;
    for p in m.indecomposables() {
        let (orbit, end) = power_orbit(m, p, power_cap);
        capped |= matches!(end, OrbitEnd::Capped);
        let eligible: Vec<ElemId> = (0..m.size()).filter(|&x| !o.lt(p, x)).collect();
        for (k, &pk) in orbit.iter().enumerate() {
            for (i, &x) in eligible.iter().enumerate() {
                let Some(pkx) = m.compose(pk, x) else { continue };
                for &y in &eligible[i + 1..] {
                    if m.compose(pk, y) == Some(pkx) {
                        return AxiomResult::Fail {
                            witness: vec![p, k + 1, x, y],
                        };
                    }
                }
            }
        }
    }
    if capped {
        AxiomResult::CappedPass
    } else {
        AxiomResult::Pass
    }
}

/// One-step predecessors of a decomposition `d` in the decomposition
/// extension of the order: every multiset obtained by replacing a
/// non-empty selection of occurrences in `d`, each by a decomposition of
/// some element strictly below the replaced one, such that the resulting
/// multiset still has a defined generalised product.
///
/// One step already yields all strict predecessors: composing two
/// replacement steps is again a single replacement step.
pub fn dec_ext_predecessors(m: &PartialMonoid, o: &OrderRel, d: &Multiset) -> Vec<Multiset> {
    // Replacement menu per distinct element of d: decompositions of all
    // elements strictly below it.
    let mut menus: HashMap<ElemId, Vec<Multiset>> = HashMap::new();
    for (p, _) in d.iter() {
        let mut menu = Vec::new();
        for x in 0..m.size() {
            if o.lt(x, p) {
                menu.extend(m.decompositions_of(x, DEFAULT_DECOMP_BOUND).decompositions);
            }
        }
        menus.insert(p, menu);
    }

    let items: Vec<(ElemId, usize)> = d.iter().collect();
    let mut results: BTreeSet<Multiset> = BTreeSet::new();
    let mut acc = Multiset::empty();
    replace_rec(m, &items, &menus, 0, false, &mut acc, &mut results);
    results.into_iter().collect()
}

fn replace_rec(
    m: &PartialMonoid,
    items: &[(ElemId, usize)],
    menus: &HashMap<ElemId, Vec<Multiset>>,
    idx: usize,
    replaced_any: bool,
    acc: &mut Multiset,
    results: &mut BTreeSet<Multiset>,
) {
    if idx == items.len() {
        if replaced_any && m.compose_multiset(acc).is_some() {
            results.insert(acc.clone());
        }
        return;
    }
    let (p, mult) = items[idx];
    let menu = &menus[&p];
    // Choose how many occurrences to replace and, for those, a
    // combination (with repetition) of menu entries.
    for keep in 0..=mult {
        let replace = mult - keep;
        let mut base = acc.clone();
        base.insert(p, keep);
        combos_rec(
            m,
            items,
            menus,
            idx,
            replaced_any || replace > 0,
            menu,
            replace,
            0,
            &mut base,
            results,
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn combos_rec(
    m: &PartialMonoid,
    items: &[(ElemId, usize)],
    menus: &HashMap<ElemId, Vec<Multiset>>,
    idx: usize,
    replaced_any: bool,
    menu: &[Multiset],
    remaining: usize,
    start: usize,
    acc: &mut Multiset,
    results: &mut BTreeSet<Multiset>,
) {
    if remaining == 0 {
        let mut next = acc.clone();
        replace_rec(m, items, menus, idx + 1, replaced_any, &mut next, results);
        return;
    }
    for i in start..menu.len() {
        let mut next = acc.union(&menu[i]);
        combos_rec(
            m,
            items,
            menus,
            idx,
            replaced_any,
            menu,
            remaining - 1,
            i,
            &mut next,
            results,
        );
    }
}

/// A uniqueness counterexample: an element with two distinct
/// decompositions, minimal in the senses described at
/// [`find_minimal_counterexample`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalCounterexample {
    pub element: ElemId,
    pub first: Multiset,
    pub second: Multiset,
}

/// Find an element with two distinct decompositions, preferring one that
/// is minimal with respect to `⪯` (no element strictly below it has two
/// decompositions) and whose witnessing pair is minimal with respect to
/// the decomposition extension on both components. Ties are broken
/// lexicographically by element index, then by the expansions of the two
/// decompositions. Returns `None` when every element decomposes at most
/// one way within the default cardinality bound.
pub fn find_minimal_counterexample(
    m: &PartialMonoid,
    o: &OrderRel,
) -> Option<MinimalCounterexample> {
    let decs: Vec<Vec<Multiset>> = (0..m.size())
        .map(|x| m.decompositions_of(x, DEFAULT_DECOMP_BOUND).decompositions)
        .collect();
    let bad: Vec<ElemId> = (0..m.size()).filter(|&x| decs[x].len() >= 2).collect();
    let minimal: Vec<ElemId> = bad
        .iter()
        .copied()
        .filter(|&x| !bad.iter().any(|&y| o.lt(y, x)))
        .collect();

    for &x in &minimal {
        for (i, d1) in decs[x].iter().enumerate() {
            for (j, d2) in decs[x].iter().enumerate() {
                if i == j {
                    continue;
                }
                if pair_is_minimal(m, o, d1, d2) {
                    return Some(MinimalCounterexample {
                        element: x,
                        first: d1.clone(),
                        second: d2.clone(),
                    });
                }
            }
        }
    }
    // Fall back to the lexicographically first pair of the first minimal
    // element; reached only if every pair is dominated, which the
    // decomposition extension's acyclicity prevents in practice.
    minimal.first().map(|&x| MinimalCounterexample {
        element: x,
        first: decs[x][0].clone(),
        second: decs[x][1].clone(),
    })
}

/// No pair strictly below `(d1, d2)` in the componentwise decomposition
/// extension consists of two distinct decompositions of one element.
pub(crate) fn pair_is_minimal(
    m: &PartialMonoid,
    o: &OrderRel,
    d1: &Multiset,
    d2: &Multiset,
) -> bool {
    let mut below1 = dec_ext_predecessors(m, o, d1);
    below1.push(d1.clone());
    let mut below2 = dec_ext_predecessors(m, o, d2);
    below2.push(d2.clone());
    for c1 in &below1 {
        for c2 in &below2 {
            if c1 == d1 && c2 == d2 {
                continue;
            }
            if c1 == c2 {
                continue;
            }
            let v1 = m.compose_multiset(c1);
            if v1.is_some() && v1 == m.compose_multiset(c2) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::Semantics;
    use crate::lts::DEFAULT_STATE_LIMIT;
    use crate::monoid::{nat_mul_restricted, nat_segment, process_quotient};
    use crate::syntax::parse_expr;

    fn example_quotient() -> ProcessQuotient {
        process_quotient(
            &parse_expr("a*tau.b.0 || a*tau.b.0").unwrap(),
            Semantics::Branching,
            DEFAULT_STATE_LIMIT,
        )
        .unwrap()
    }

    #[test]
    fn from_leq_fn_validates() {
        assert!(OrderRel::from_leq_fn(3, |x, y| x <= y).is_ok());
        let err = OrderRel::from_leq_fn(3, |x, y| x == y || (x + 1 == y)).unwrap_err();
        assert_eq!(err.property, "transitive");
        let err = OrderRel::from_leq_fn(2, |x, y| x < y).unwrap_err();
        assert_eq!(err.property, "reflexive");
    }

    #[test]
    fn reachability_order_on_example_quotient() {
        let q = example_quotient();
        let o = q.order();
        // Classes: 0 = root, 1 = single loop, 2 = two committed loops,
        // 3 = one committed loop, 4 = deadlock.
        let expected_strictly_below = [
            (4usize, 0usize),
            (4, 1),
            (4, 2),
            (4, 3),
            (3, 0),
            (3, 1),
            (3, 2),
            (1, 0),
            (2, 0),
        ];
        for a in 0..5 {
            for b in 0..5 {
                let expected = a == b || expected_strictly_below.contains(&(a, b));
                assert_eq!(o.leq(a, b), expected, "leq({a}, {b})");
            }
        }
        assert!(o.lt(3, 1));
        assert!(!o.lt(1, 2) && !o.lt(2, 1));
    }

    #[test]
    fn axioms_on_example_quotient() {
        let q = example_quotient();
        let report = check_axioms(q.monoid(), q.order(), 10);
        assert_eq!(report.well_founded, AxiomResult::Pass);
        assert_eq!(report.least_identity, AxiomResult::Pass);
        assert_eq!(report.compatible, AxiomResult::Pass);
        assert_eq!(report.precompositional, AxiomResult::Pass);
        assert_eq!(report.archimedean, AxiomResult::Pass);
        // [single loop] composed with itself and with [committed loop]
        // both give the root class, so strictness fails at (3, 1, 1).
        assert_eq!(
            report.strictly_compatible,
            AxiomResult::Fail {
                witness: vec![3, 1, 1]
            }
        );
        // The same collapse breaks cancellation: 1∘1 = 1∘3 yet 1 ≠ 3.
        assert_eq!(
            report.power_cancellation,
            AxiomResult::Fail {
                witness: vec![1, 1, 1, 3]
            }
        );
        assert!(report.core_passed());
    }

    #[test]
    fn axioms_fail_on_unnormed_loop() {
        let q = process_quotient(
            &parse_expr("a*0").unwrap(),
            Semantics::Branching,
            DEFAULT_STATE_LIMIT,
        )
        .unwrap();
        let report = check_axioms(q.monoid(), q.order(), 10);
        // The adjoined identity is unreachable, so it is not least; and
        // the loop class absorbs itself, so its powers sit below itself.
        assert_eq!(report.least_identity, AxiomResult::Fail { witness: vec![0] });
        assert_eq!(
            report.archimedean,
            AxiomResult::Fail {
                witness: vec![0, 0]
            }
        );
        assert_eq!(report.well_founded, AxiomResult::Pass);
        assert!(!report.core_passed());
    }

    #[test]
    fn axioms_on_standard_monoids() {
        let m = nat_segment(6);
        let o = OrderRel::from_leq_fn(7, |x, y| x <= y).unwrap();
        let report = check_axioms(&m, &o, 10);
        assert!(report.core_passed());
        assert_eq!(report.strictly_compatible, AxiomResult::Pass);
        assert_eq!(report.power_cancellation, AxiomResult::Pass);

        let m = nat_mul_restricted(20);
        let o = OrderRel::from_leq_fn(20, |x, y| (y + 1) % (x + 1) == 0).unwrap();
        let report = check_axioms(&m, &o, 10);
        assert!(report.core_passed());
        assert_eq!(report.power_cancellation, AxiomResult::Pass);
    }

    #[test]
    fn archimedean_cap_reports_capped_pass() {
        // In the divisibility order on {1..20}, powers of 2 resolve within
        // five steps; with a cap of 2 the sequence is unresolved.
        let m = nat_mul_restricted(20);
        let o = OrderRel::from_leq_fn(20, |x, y| (y + 1) % (x + 1) == 0).unwrap();
        let report = check_axioms(&m, &o, 2);
        assert_eq!(report.archimedean, AxiomResult::CappedPass);
    }

    #[test]
    fn decomposition_extension_predecessors_of_example_root() {
        let q = example_quotient();
        let two_singles = Multiset::from_elems(&[1, 1]);
        let preds = dec_ext_predecessors(q.monoid(), q.order(), &two_singles);
        let expected: Vec<Multiset> = vec![
            Multiset::empty(),
            Multiset::from_elems(&[1]),
            Multiset::from_elems(&[1, 3]),
            Multiset::from_elems(&[3]),
            Multiset::from_elems(&[3, 3]),
        ];
        for e in &expected {
            assert!(preds.contains(e), "missing predecessor {e}");
        }
        assert_eq!(preds.len(), expected.len());
        assert!(!preds.contains(&two_singles));
    }

    #[test]
    fn minimal_counterexample_on_example_quotient() {
        let q = example_quotient();
        let ce = find_minimal_counterexample(q.monoid(), q.order()).unwrap();
        assert_eq!(ce.element, 0);
        assert_eq!(ce.first, Multiset::from_elems(&[1, 1]));
        assert_eq!(ce.second, Multiset::from_elems(&[1, 3]));
    }

    #[test]
    fn no_counterexample_in_unique_monoid() {
        let m = nat_segment(8);
        let o = OrderRel::from_leq_fn(9, |x, y| x <= y).unwrap();
        assert!(find_minimal_counterexample(&m, &o).is_none());
    }
}
