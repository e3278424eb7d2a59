//! Partial commutative monoids and the monoid of bisimilarity classes of
//! a process.
//!
//! A partial commutative monoid here is a finite carrier with an identity
//! element and a partial binary composition, commutative and associative
//! in the Kleene sense: two composite expressions are interchangeable
//! exactly when both are defined and equal, or both are undefined. The
//! laws are verified whenever a monoid is constructed; tables that arise
//! by restricting a larger total composition to a finite carrier get a
//! weaker associativity check, as explained on `from_restriction_table`.
//!
//! [`process_quotient`] builds such a monoid from an expression: elements
//! are the bisimilarity classes of the states reachable from the
//! expression (plus the class of the deadlocked process, adjoined if no
//! reachable state is equivalent to it), and composition of two classes is
//! the class of the merge of their representatives when that class is
//! again in the carrier, undefined otherwise.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::equiv::{partition_graph, Partition, Semantics};
use crate::graph::Graph;
use crate::lts::{build_lts, LimitExceeded, Lts, StateId};
use crate::norms::{weak_depths, NormValue};
use crate::order::{reachability_order, OrderRel};
use crate::syntax::{format_expr, ProcessExpr};

/// Index of an element in a monoid's carrier.
pub type ElemId = usize;

/// A finite multiset of carrier elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset {
    counts: BTreeMap<ElemId, usize>,
}

impl Multiset {
    pub fn empty() -> Multiset {
        Multiset::default()
    }

    pub fn singleton(x: ElemId) -> Multiset {
        Multiset::from_elems(&[x])
    }

    pub fn from_elems(elems: &[ElemId]) -> Multiset {
        let mut m = Multiset::empty();
        for &x in elems {
            m.insert(x, 1);
        }
        m
    }

    pub fn insert(&mut self, x: ElemId, k: usize) {
        if k > 0 {
            *self.counts.entry(x).or_insert(0) += k;
        }
    }

    pub fn multiplicity(&self, x: ElemId) -> usize {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    pub fn cardinality(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Distinct elements with their multiplicities, in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (ElemId, usize)> + '_ {
        self.counts.iter().map(|(&x, &k)| (x, k))
    }

    /// The elements in ascending order, repeated per multiplicity.
    pub fn expand(&self) -> Vec<ElemId> {
        let mut out = Vec::with_capacity(self.cardinality());
        for (x, k) in self.iter() {
            out.extend(std::iter::repeat(x).take(k));
        }
        out
    }

    /// Multiset union (multiplicities add).
    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (x, k) in other.iter() {
            out.insert(x, k);
        }
        out
    }

    /// Multiset difference, truncated at zero.
    pub fn difference(&self, other: &Multiset) -> Multiset {
        let mut out = Multiset::empty();
        for (x, k) in self.iter() {
            let rest = k.saturating_sub(other.multiplicity(x));
            out.insert(x, rest);
        }
        out
    }

    pub fn is_sub_multiset_of(&self, other: &Multiset) -> bool {
        self.iter().all(|(x, k)| k <= other.multiplicity(x))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.expand().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// A monoid law that failed to hold, with the offending elements.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{law} violated at elements {elements:?}")]
pub struct MonoidLawViolation {
    pub law: &'static str,
    pub elements: Vec<ElemId>,
}

/// A finite partial commutative monoid given by its composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMonoid {
    labels: Vec<String>,
    identity: ElemId,
    table: Vec<Option<ElemId>>,
}

/// Result of enumerating the decompositions of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSearch {
    /// Multisets of indecomposable elements whose generalised product is
    /// the requested element, in lexicographic order of their expansions.
    pub decompositions: Vec<Multiset>,
    /// The search tree was cut at the cardinality bound while an extension
    /// with a defined partial product remained.
    pub truncated: bool,
}

/// Whether every element of a monoid decomposes uniquely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniquenessVerdict {
    Unique,
    Multiple {
        element: ElemId,
        first: Multiset,
        second: Multiset,
    },
    Missing {
        element: ElemId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub verdict: UniquenessVerdict,
    /// Some decomposition search hit its cardinality bound, so the verdict
    /// may be incomplete.
    pub truncated: bool,
}

impl PartialMonoid {
    /// Build a monoid from a row-major composition table and verify the
    /// commutativity, identity, and associativity laws (the latter in the
    /// Kleene sense: both sides undefined also counts as agreement).
    pub fn from_table(
        labels: Vec<String>,
        identity: ElemId,
        table: Vec<Option<ElemId>>,
    ) -> Result<PartialMonoid, MonoidLawViolation> {
        let m = Self::assemble(labels, identity, table);
        m.check_laws()?;
        Ok(m)
    }

    /// Build a monoid whose table is the restriction of some total
    /// commutative composition to a finite carrier. Such a restriction can
    /// lose an intermediate product while the full product stays inside the
    /// carrier, so associativity is only required where both bracketings
    /// are defined; identity and commutativity are still checked in full.
    pub(crate) fn from_restriction_table(
        labels: Vec<String>,
        identity: ElemId,
        table: Vec<Option<ElemId>>,
    ) -> Result<PartialMonoid, MonoidLawViolation> {
        let m = Self::assemble(labels, identity, table);
        m.check_restriction_laws()?;
        Ok(m)
    }

    fn assemble(
        labels: Vec<String>,
        identity: ElemId,
        table: Vec<Option<ElemId>>,
    ) -> PartialMonoid {
        let n = labels.len();
        assert!(n > 0, "carrier must be non-empty");
        assert!(identity < n, "identity out of range");
        assert_eq!(table.len(), n * n, "table must be {n}x{n}");
        for entry in table.iter().flatten() {
            assert!(*entry < n, "table entry out of range");
        }
        PartialMonoid {
            labels,
            identity,
            table,
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    pub fn label(&self, x: ElemId) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn compose(&self, a: ElemId, b: ElemId) -> Option<ElemId> {
        self.table[a * self.size() + b]
    }

    /// Generalised product: left fold of composition over the sequence.
    /// The empty product is the identity.
    pub fn compose_all(&self, xs: &[ElemId]) -> Option<ElemId> {
        let mut acc = self.identity;
        for &x in xs {
            acc = self.compose(acc, x)?;
        }
        Some(acc)
    }

    /// Generalised product of a multiset, folding in ascending element
    /// order. By commutativity and associativity the order is immaterial.
    pub fn compose_multiset(&self, d: &Multiset) -> Option<ElemId> {
        self.compose_all(&d.expand())
    }

    /// `x` composed with itself `k` times; the zeroth power is the
    /// identity.
    pub fn power(&self, x: ElemId, k: usize) -> Option<ElemId> {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.compose(acc, x)?;
        }
        Some(acc)
    }

    /// Elements that are not the identity and not a composition of two
    /// non-identity elements, in ascending order.
    pub fn indecomposables(&self) -> Vec<ElemId> {
        (0..self.size())
            .filter(|&x| self.is_indecomposable_elem(x))
            .collect()
    }

    pub fn is_indecomposable_elem(&self, x: ElemId) -> bool {
        if x == self.identity {
            return false;
        }
        for a in 0..self.size() {
            if a == self.identity {
                continue;
            }
            for b in a..self.size() {
                if b == self.identity {
                    continue;
                }
                if self.compose(a, b) == Some(x) {
                    return false;
                }
            }
        }
        true
    }

    /// All multisets of indecomposables of cardinality at most `bound`
    /// whose generalised product is `x`.
    ///
    /// The search walks non-decreasing sequences of indecomposables whose
    /// partial products stay defined, so each multiset is produced exactly
    /// once, in lexicographic order of expansions.
    pub fn decompositions_of(&self, x: ElemId, bound: usize) -> DecompositionSearch {
        let indec = self.indecomposables();
        let mut found = Vec::new();
        let mut truncated = false;
        let mut parts = Vec::new();
        self.decomp_dfs(
            x,
            &indec,
            0,
            self.identity,
            bound,
            &mut parts,
            &mut found,
            &mut truncated,
        );
        DecompositionSearch {
            decompositions: found,
            truncated,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn decomp_dfs(
        &self,
        x: ElemId,
        indec: &[ElemId],
        start: usize,
        acc: ElemId,
        bound: usize,
        parts: &mut Vec<ElemId>,
        found: &mut Vec<Multiset>,
        truncated: &mut bool,
    ) {
        if acc == x {
            found.push(Multiset::from_elems(parts));
        }
        if parts.len() >= bound {
            if indec[start..]
                .iter()
                .any(|&p| self.compose(acc, p).is_some())
            {
                *truncated = true;
            }
            return;
        }
        for i in start..indec.len() {
            if let Some(next) = self.compose(acc, indec[i]) {
                parts.push(indec[i]);
                self.decomp_dfs(x, indec, i, next, bound, parts, found, truncated);
                parts.pop();
            }
        }
    }

    /// Check that every element has exactly one decomposition into
    /// indecomposables, searching up to the given cardinality bound.
    pub fn has_unique_decomposition(&self, bound: usize) -> UniquenessReport {
        let mut truncated = false;
        for x in 0..self.size() {
            let search = self.decompositions_of(x, bound);
            truncated |= search.truncated;
            let mut decs = search.decompositions;
            if decs.len() >= 2 {
                let second = decs.swap_remove(1);
                let first = decs.swap_remove(0);
                return UniquenessReport {
                    verdict: UniquenessVerdict::Multiple {
                        element: x,
                        first,
                        second,
                    },
                    truncated,
                };
            }
            if decs.is_empty() {
                return UniquenessReport {
                    verdict: UniquenessVerdict::Missing { element: x },
                    truncated,
                };
            }
        }
        UniquenessReport {
            verdict: UniquenessVerdict::Unique,
            truncated,
        }
    }

    pub fn check_laws(&self) -> Result<(), MonoidLawViolation> {
        let n = self.size();
        let e = self.identity;
        for x in 0..n {
            if self.compose(e, x) != Some(x) || self.compose(x, e) != Some(x) {
                return Err(MonoidLawViolation {
                    law: "identity",
                    elements: vec![x],
                });
            }
        }
        for a in 0..n {
            for b in a..n {
                if self.compose(a, b) != self.compose(b, a) {
                    return Err(MonoidLawViolation {
                        law: "commutativity",
                        elements: vec![a, b],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.compose(a, b);
                for c in 0..n {
                    let left = ab.and_then(|x| self.compose(x, c));
                    let right = self.compose(b, c).and_then(|x| self.compose(a, x));
                    if left != right {
                        return Err(MonoidLawViolation {
                            law: "associativity",
                            elements: vec![a, b, c],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Like `check_laws`, but associativity counts as satisfied whenever
    /// either bracketing is undefined. See `from_restriction_table`.
    fn check_restriction_laws(&self) -> Result<(), MonoidLawViolation> {
        let n = self.size();
        let e = self.identity;
        for x in 0..n {
            if self.compose(e, x) != Some(x) || self.compose(x, e) != Some(x) {
                return Err(MonoidLawViolation {
                    law: "identity",
                    elements: vec![x],
                });
            }
        }
        for a in 0..n {
            for b in a..n {
                if self.compose(a, b) != self.compose(b, a) {
                    return Err(MonoidLawViolation {
                        law: "commutativity",
                        elements: vec![a, b],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.compose(a, b);
                for c in 0..n {
                    let left = ab.and_then(|x| self.compose(x, c));
                    let right = self.compose(b, c).and_then(|x| self.compose(a, x));
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            return Err(MonoidLawViolation {
                                law: "associativity",
                                elements: vec![a, b, c],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The additive monoid on the segment `{0, ..., n}`: composition is
/// addition, defined when the sum stays within the segment.
pub fn nat_segment(n: usize) -> PartialMonoid {
    let size = n + 1;
    let labels = (0..size).map(|i| i.to_string()).collect();
    let mut table = vec![None; size * size];
    for i in 0..size {
        for j in 0..size {
            if i + j <= n {
                table[i * size + j] = Some(i + j);
            }
        }
    }
    PartialMonoid::from_table(labels, 0, table).expect("segment monoid laws")
}

/// The multiplicative monoid on `{1, ..., cap}`: composition is
/// multiplication, defined when the product stays within the range.
/// Element `id` stands for the number `id + 1`.
pub fn nat_mul_restricted(cap: usize) -> PartialMonoid {
    assert!(cap >= 1, "cap must be at least 1");
    let labels = (1..=cap).map(|v| v.to_string()).collect();
    let mut table = vec![None; cap * cap];
    for i in 0..cap {
        for j in 0..cap {
            let prod = (i + 1) * (j + 1);
            if prod <= cap {
                table[i * cap + j] = Some(prod - 1);
            }
        }
    }
    PartialMonoid::from_table(labels, 0, table).expect("restricted product monoid laws")
}

/// The monoid of multisets over the given symbols with cardinality at
/// most `card_cap`: composition is multiset union, defined when the
/// result respects the cardinality cap.
pub fn multiset_monoid(symbols: &[&str], card_cap: usize) -> PartialMonoid {
    assert!(!symbols.is_empty(), "need at least one symbol");
    let k = symbols.len();
    // Enumerate count vectors by total cardinality, then lexicographically.
    let mut vectors: Vec<Vec<usize>> = Vec::new();
    for total in 0..=card_cap {
        let mut current = vec![0; k];
        enumerate_vectors(&mut vectors, &mut current, 0, total);
    }
    let index: HashMap<Vec<usize>, usize> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let labels: Vec<String> = vectors
        .iter()
        .map(|v| {
            let mut parts = Vec::new();
            for (s, &c) in symbols.iter().zip(v) {
                parts.extend(std::iter::repeat(s.to_string()).take(c));
            }
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let size = vectors.len();
    let mut table = vec![None; size * size];
    for (i, v) in vectors.iter().enumerate() {
        for (j, w) in vectors.iter().enumerate() {
            let sum: Vec<usize> = v.iter().zip(w).map(|(a, b)| a + b).collect();
            if sum.iter().sum::<usize>() <= card_cap {
                table[i * size + j] = Some(index[&sum]);
            }
        }
    }
    PartialMonoid::from_table(labels, 0, table).expect("multiset monoid laws")
}

fn enumerate_vectors(
    out: &mut Vec<Vec<usize>>,
    current: &mut Vec<usize>,
    pos: usize,
    remaining: usize,
) {
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for c in (0..=remaining).rev() {
        current[pos] = c;
        enumerate_vectors(out, current, pos + 1, remaining - c);
    }
}

/// Failure modes of [`process_quotient`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    /// The pairwise merge graph would be too large to analyse.
    #[error("transition system with {states} states is too large for quotient analysis")]
    TooLarge { states: usize },
    #[error(transparent)]
    Laws(#[from] MonoidLawViolation),
}

/// The monoid of bisimilarity classes of an expression, with supporting
/// data: the underlying transition system, the partition of its states,
/// class representatives, the reachability order, and per-class weak
/// norms and depths.
#[derive(Debug, Clone)]
pub struct ProcessQuotient {
    lts: Lts,
    semantics: Semantics,
    partition: Partition,
    monoid: PartialMonoid,
    order: OrderRel,
    class_of_state: Vec<ElemId>,
    representatives: Vec<ProcessExpr>,
    rep_states: Vec<Option<StateId>>,
    class_norms: Vec<NormValue>,
    class_depths: Vec<NormValue>,
    root_class: ElemId,
}

/// Cap on the size of the union graph (base states plus all pairwise
/// merges), which grows quadratically in the number of reachable states.
const MAX_QUOTIENT_UNION_STATES: usize = 2_000_000;

/// Build the quotient monoid of `root` under the given semantics.
///
/// Composition of classes `[p]` and `[q]` is the class of `p' || q'` for
/// representatives `p'`, `q'` when that class is itself a class of a
/// reachable state (or the adjoined deadlock class), and undefined
/// otherwise. The choice of representatives does not matter because the
/// semantics is compatible with merge.
///
/// All pairwise merges are analysed at once: a single graph holds the
/// reachable states, one fresh deadlocked state, and one product state per
/// ordered pair, and one partition refinement over that graph yields every
/// composition entry.
pub fn process_quotient(
    root: &ProcessExpr,
    semantics: Semantics,
    state_limit: usize,
) -> Result<ProcessQuotient, QuotientError> {
    let lts = build_lts(root, state_limit)?;
    let n = lts.num_states();
    if n.saturating_mul(n) + n + 1 > MAX_QUOTIENT_UNION_STATES {
        return Err(QuotientError::TooLarge { states: n });
    }

    // Union graph: states 0..n are the reachable states, state n is a
    // fresh deadlocked state, and n + 1 + u*n + v is the merge of u and v.
    let pair_id = |u: usize, v: usize| (n + 1 + u * n + v) as u32;
    let labels = Graph::intern_labels(&[&lts]);
    let mut label_id = HashMap::new();
    for (i, a) in labels.iter().enumerate() {
        label_id.insert(a.clone(), i as u16);
    }
    let m = lts.transitions().len();
    let mut edges: Vec<(u32, u16, u32)> = Vec::with_capacity(m + 2 * m * n);
    for &(src, ref act, dst) in lts.transitions() {
        edges.push((src as u32, label_id[act], dst as u32));
    }
    for u in 0..n {
        for &(_, ref act, u2) in lts.out(u) {
            let a = label_id[act];
            for v in 0..n {
                edges.push((pair_id(u, v), a, pair_id(u2, v)));
            }
        }
    }
    for v in 0..n {
        for &(_, ref act, v2) in lts.out(v) {
            let a = label_id[act];
            for u in 0..n {
                edges.push((pair_id(u, v), a, pair_id(u, v2)));
            }
        }
    }
    let graph = Graph::new(n + 1 + n * n, labels, edges);
    let raw = partition_graph(&graph, semantics);

    // Carrier classes, numbered by their lowest reachable state; the
    // deadlock class is appended if no reachable state lies in it.
    let mut block_to_class: HashMap<u32, ElemId> = HashMap::new();
    let mut representatives: Vec<ProcessExpr> = Vec::new();
    let mut rep_states: Vec<Option<StateId>> = Vec::new();
    let mut class_of_state = vec![0usize; n];
    for s in 0..n {
        let next = representatives.len();
        let class = *block_to_class.entry(raw[s]).or_insert(next);
        if class == next {
            representatives.push(lts.state(s).clone());
            rep_states.push(Some(s));
        }
        class_of_state[s] = class;
    }
    let identity = match block_to_class.get(&raw[n]) {
        Some(&c) => c,
        None => {
            let c = representatives.len();
            block_to_class.insert(raw[n], c);
            representatives.push(ProcessExpr::nil());
            rep_states.push(None);
            c
        }
    };
    let carrier = representatives.len();

    let mut table: Vec<Option<ElemId>> = vec![None; carrier * carrier];
    for a in 0..carrier {
        for b in 0..carrier {
            table[a * carrier + b] = match (rep_states[a], rep_states[b]) {
                (Some(u), Some(v)) => {
                    block_to_class.get(&raw[pair_id(u, v) as usize]).copied()
                }
                // The adjoined deadlock class composes as the identity.
                (None, _) => Some(b),
                (_, None) => Some(a),
            };
        }
    }
    // The table restricts merge composition (total up to equivalence) to
    // the classes of reachable states. A product of two carrier classes can
    // land outside the carrier while a longer product folds back in, so the
    // strict Kleene associativity check would reject legitimate quotients;
    // associativity is guaranteed wherever both bracketings are defined.
    let monoid = PartialMonoid::from_restriction_table(
        representatives.iter().map(format_expr).collect(),
        identity,
        table,
    )?;

    // Weak depth is invariant under the equivalence, so any member's depth
    // serves as the class depth. The literal weak norm is not invariant (a
    // member may only reach divergent states equivalent to 0, never an
    // actual deadlock), so class norms are computed on the class graph
    // instead: the least number of visible steps into the identity class.
    let class_norms = class_graph_norms(&lts, &class_of_state, identity, carrier);
    let depths = weak_depths(&lts);
    let class_depths: Vec<NormValue> = rep_states
        .iter()
        .map(|rs| rs.map_or(NormValue::Finite(0), |s| depths[s]))
        .collect();

    let partition = Partition::from_raw(&raw[..n]);
    let root_class = class_of_state[lts.initial()];
    let mut q = ProcessQuotient {
        lts,
        semantics,
        partition,
        monoid,
        order: OrderRel::discrete(carrier),
        class_of_state,
        representatives,
        rep_states,
        class_norms,
        class_depths,
        root_class,
    };
    q.order = reachability_order(&q);
    Ok(q)
}

/// Least number of visible steps from each class to the identity class,
/// via a 0-1 breadth-first search over the reversed class graph.
fn class_graph_norms(
    lts: &Lts,
    class_of_state: &[ElemId],
    identity: ElemId,
    carrier: usize,
) -> Vec<NormValue> {
    let mut rev: Vec<Vec<(ElemId, bool)>> = vec![Vec::new(); carrier];
    for &(src, ref act, dst) in lts.transitions() {
        rev[class_of_state[dst]].push((class_of_state[src], !act.is_silent()));
    }
    let mut dist: Vec<Option<u64>> = vec![None; carrier];
    let mut queue = VecDeque::new();
    dist[identity] = Some(0);
    queue.push_back(identity);
    while let Some(c) = queue.pop_front() {
        let d = dist[c].unwrap();
        for &(p, visible) in &rev[c] {
            let nd = d + visible as u64;
            if dist[p].is_none_or(|old| nd < old) {
                dist[p] = Some(nd);
                if visible {
                    queue.push_back(p);
                } else {
                    queue.push_front(p);
                }
            }
        }
    }
    dist.into_iter()
        .map(|d| d.map_or(NormValue::Infinite, NormValue::Finite))
        .collect()
}

impl ProcessQuotient {
    pub fn lts(&self) -> &Lts {
        &self.lts
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    /// Partition of the reachable states; block indices agree with
    /// carrier element indices.
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn monoid(&self) -> &PartialMonoid {
        &self.monoid
    }

    pub fn order(&self) -> &OrderRel {
        &self.order
    }

    pub fn num_classes(&self) -> usize {
        self.monoid.size()
    }

    pub fn identity_class(&self) -> ElemId {
        self.monoid.identity()
    }

    pub fn root_class(&self) -> ElemId {
        self.root_class
    }

    pub fn class_of_state(&self, s: StateId) -> ElemId {
        self.class_of_state[s]
    }

    /// The representative of a class: its lowest reachable state, or a
    /// fresh deadlocked process for an adjoined identity class.
    pub fn representative(&self, c: ElemId) -> &ProcessExpr {
        &self.representatives[c]
    }

    /// The state backing the representative, if any.
    pub fn representative_state(&self, c: ElemId) -> Option<StateId> {
        self.rep_states[c]
    }

    /// Least number of visible steps from `c` to the identity class in the
    /// class graph, or infinite when the identity class is unreachable.
    /// Unlike the weak norm of an individual member, this is invariant
    /// under the equivalence, and it is additive over composition.
    pub fn class_norm(&self, c: ElemId) -> NormValue {
        self.class_norms[c]
    }

    /// Weak depth shared by every member of `c`: the length of the longest
    /// visible trace, or infinite when traces grow without bound.
    pub fn class_depth(&self, c: ElemId) -> NormValue {
        self.class_depths[c]
    }

    /// Whether the quotient is totally normed: every class has a finite
    /// norm and no class other than the identity has norm zero. In other
    /// words, every class can reach the identity class, and none but the
    /// identity can reach it on silent steps alone.
    ///
    /// On such quotients the reachability order satisfies the five core
    /// axioms checked by [`crate::order::check_axioms`] exactly.
    pub fn is_totally_normed(&self) -> bool {
        self.class_norms.iter().enumerate().all(|(c, n)| match n {
            NormValue::Finite(0) => c == self.identity_class(),
            NormValue::Finite(_) => true,
            NormValue::Infinite => false,
        })
    }

    pub fn compose(&self, a: ElemId, b: ElemId) -> Option<ElemId> {
        self.monoid.compose(a, b)
    }
}
