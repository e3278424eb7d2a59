//! Internal index-based graph shared by the equivalence, norm, and quotient
//! machinery. States are plain indices and labels are interned to small
//! integers, with the silent label always interned as 0.

use std::collections::VecDeque;

use crate::lts::Lts;
use crate::syntax::Action;

pub(crate) const SILENT: u16 = 0;

#[derive(Debug, Clone)]
pub(crate) struct Graph {
    pub n: usize,
    /// Interned labels; `labels[0]` is the silent action.
    pub labels: Vec<Action>,
    /// Sorted by source, then label, then target; deduplicated.
    edges: Vec<(u32, u16, u32)>,
    out_index: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize, labels: Vec<Action>, mut edges: Vec<(u32, u16, u32)>) -> Graph {
        debug_assert_eq!(labels.first(), Some(&Action::Silent));
        edges.sort_unstable();
        edges.dedup();
        let mut out_index = vec![0usize; n + 1];
        for &(src, _, _) in &edges {
            out_index[src as usize + 1] += 1;
        }
        for i in 0..n {
            out_index[i + 1] += out_index[i];
        }
        Graph {
            n,
            labels,
            edges,
            out_index,
        }
    }

    /// Interns the labels of the given systems; the silent action gets id 0
    /// and visible labels follow in name order.
    pub fn intern_labels(ltses: &[&Lts]) -> Vec<Action> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(Action::Silent);
        for l in ltses {
            for (_, act, _) in l.transitions() {
                set.insert(act.clone());
            }
        }
        set.into_iter().collect()
    }

    fn label_id(labels: &[Action], act: &Action) -> u16 {
        labels
            .iter()
            .position(|l| l == act)
            .expect("label was interned") as u16
    }

    pub fn from_lts(l: &Lts) -> Graph {
        let labels = Graph::intern_labels(&[l]);
        let edges = l
            .transitions()
            .iter()
            .map(|(src, act, dst)| (*src as u32, Graph::label_id(&labels, act), *dst as u32))
            .collect();
        Graph::new(l.num_states(), labels, edges)
    }

    /// Disjoint union with the second system's states shifted up; returns the
    /// graph and the offset added to the second system's state ids.
    pub fn from_lts_pair(l1: &Lts, l2: &Lts) -> (Graph, usize) {
        let labels = Graph::intern_labels(&[l1, l2]);
        let offset = l1.num_states();
        let mut edges: Vec<(u32, u16, u32)> = l1
            .transitions()
            .iter()
            .map(|(src, act, dst)| (*src as u32, Graph::label_id(&labels, act), *dst as u32))
            .collect();
        edges.extend(l2.transitions().iter().map(|(src, act, dst)| {
            (
                (src + offset) as u32,
                Graph::label_id(&labels, act),
                (dst + offset) as u32,
            )
        }));
        (Graph::new(offset + l2.num_states(), labels, edges), offset)
    }

    pub fn out(&self, s: usize) -> &[(u32, u16, u32)] {
        &self.edges[self.out_index[s]..self.out_index[s + 1]]
    }

    pub fn edges(&self) -> &[(u32, u16, u32)] {
        &self.edges
    }

    /// States reachable from `s` by silent steps, including `s`, ascending.
    pub fn tau_closure(&self, s: usize) -> Vec<u32> {
        let mut visited = vec![false; self.n];
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(_, label, dst) in self.out(u) {
                if label == SILENT && !visited[dst as usize] {
                    visited[dst as usize] = true;
                    queue.push_back(dst as usize);
                }
            }
        }
        (0..self.n as u32)
            .filter(|&u| visited[u as usize])
            .collect()
    }

    /// Weak saturation: silent edges for every silent path (reflexive loops
    /// included) and a visible edge for every silent-visible-silent composite.
    pub fn saturate(&self) -> Graph {
        let closures: Vec<Vec<u32>> = (0..self.n).map(|s| self.tau_closure(s)).collect();
        let mut edges: Vec<(u32, u16, u32)> = Vec::new();
        for s in 0..self.n {
            for &t in &closures[s] {
                edges.push((s as u32, SILENT, t));
            }
            for &u in &closures[s] {
                for &(_, label, v) in self.out(u as usize) {
                    if label == SILENT {
                        continue;
                    }
                    for &t in &closures[v as usize] {
                        edges.push((s as u32, label, t));
                    }
                }
            }
        }
        Graph::new(self.n, self.labels.clone(), edges)
    }
}

/// Strongly connected components by Tarjan's algorithm, iteratively.
///
/// Returns a component id per node and the component count. Component ids are
/// emitted in reverse topological order: every edge between distinct
/// components goes from a higher id to a lower one.
pub(crate) fn scc(n: usize, edges: &[(u32, u32)]) -> (Vec<u32>, u32) {
    const UNDEF: u32 = u32::MAX;
    let mut off = vec![0usize; n + 1];
    for &(u, _) in edges {
        off[u as usize + 1] += 1;
    }
    for i in 0..n {
        off[i + 1] += off[i];
    }
    let mut adj = vec![0u32; edges.len()];
    let mut fill = off.clone();
    for &(u, v) in edges {
        adj[fill[u as usize]] = v;
        fill[u as usize] += 1;
    }

    let mut index = vec![UNDEF; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut comp = vec![UNDEF; n];
    let mut comp_count = 0u32;
    let mut next_index = 0u32;
    let mut work: Vec<(u32, usize)> = Vec::new();

    for root in 0..n as u32 {
        if index[root as usize] != UNDEF {
            continue;
        }
        work.push((root, 0));
        while let Some(&mut (v, ref mut ei)) = work.last_mut() {
            let vu = v as usize;
            if *ei == 0 {
                index[vu] = next_index;
                low[vu] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[vu] = true;
            }
            let mut descended = false;
            while *ei < off[vu + 1] - off[vu] {
                let w = adj[off[vu] + *ei];
                *ei += 1;
                if index[w as usize] == UNDEF {
                    work.push((w, 0));
                    descended = true;
                    break;
                } else if on_stack[w as usize] {
                    low[vu] = low[vu].min(index[w as usize]);
                }
            }
            if descended {
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent as usize] = low[parent as usize].min(low[vu]);
            }
            if low[vu] == index[vu] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w as usize] = false;
                    comp[w as usize] = comp_count;
                    if w == v {
                        break;
                    }
                }
                comp_count += 1;
            }
        }
    }
    (comp, comp_count)
}
