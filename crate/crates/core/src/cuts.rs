//! Cut predicates and bottleneck structures.
//!
//! A node set `A` is a `(B, C)`-cut when deleting `A` leaves no directed path
//! from `B` to `C`. A node `v` is an *omniscient node* for `d_i` when `{v}` is a
//! `({s1, s2}, d_i)`-cut and some `u` in `I(v) ∪ {v}` is an
//! `(s_ī, {d1, d2})`-cut. It is an *`m`-bottleneck node* for `d_i` when `{v}`
//! is a `({s1, s2}, d_i)`-cut and some `M ⊆ I(v)` with `|M| = m` is an
//! `(s_ī, {d1, d2})`-cut.
//!
//! Searches are exhaustive over parent subsets, smallest first, so every
//! reported `m` is minimal for its node.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::network::{Flow, LayeredNetwork, NetworkError, NodeId};

/// Default cap on `|I(v)|` for the exhaustive subset search.
pub const DEFAULT_EXHAUSTIVE_BUDGET: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutQuery {
    /// The candidate cut `A`.
    pub removed: BTreeSet<NodeId>,
    /// `B`
    pub from: BTreeSet<NodeId>,
    /// `C`
    pub to: BTreeSet<NodeId>,
}

impl CutQuery {
    pub fn new<'a>(
        removed: impl IntoIterator<Item = &'a str>,
        from: impl IntoIterator<Item = &'a str>,
        to: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        let set = |it: &mut dyn Iterator<Item = &'a str>| it.map(NodeId::from).collect();
        CutQuery {
            removed: set(&mut removed.into_iter()),
            from: set(&mut from.into_iter()),
            to: set(&mut to.into_iter()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(
        "node `{node}` has {indegree} parents, above the exhaustive-search budget of {budget}"
    )]
    BudgetExceeded {
        node: NodeId,
        indegree: usize,
        budget: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottleneckRecord {
    pub node: NodeId,
    pub destination: Flow,
    pub minimal_m: usize,
    /// Sorted by name; `witness.len() == minimal_m`.
    pub witness: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniscientRecord {
    pub node: NodeId,
    pub destination: Flow,
    pub witness_u: NodeId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BottleneckReport {
    pub bottlenecks: Vec<BottleneckRecord>,
    pub omniscient: Vec<OmniscientRecord>,
}

impl BottleneckReport {
    pub fn is_empty(&self) -> bool {
        self.bottlenecks.is_empty() && self.omniscient.is_empty()
    }
}

/// Definition-level cut test: true iff no node of `q.to` is reachable from
/// `q.from \ q.removed` once `q.removed` is deleted.
pub fn is_cut(net: &LayeredNetwork, q: &CutQuery) -> Result<bool, NetworkError> {
    let removed = net.indices(&q.removed)?;
    let from = net.indices(&q.from)?;
    let to = net.indices(&q.to)?;
    let mut mask = vec![false; net.num_nodes()];
    for i in removed {
        mask[i] = true;
    }
    Ok(separates(net, &mask, &from, &to))
}

fn separates(net: &LayeredNetwork, removed: &[bool], from: &[usize], to: &[usize]) -> bool {
    let seen = net.reach_mask(from, removed);
    to.iter().all(|&t| !seen[t])
}

/// Dense-index view of the endpoints used by every definition.
struct Endpoints {
    sources: [usize; 2],
    destinations: [usize; 2],
}

impl Endpoints {
    fn of(net: &LayeredNetwork) -> Self {
        let i = |v: &NodeId| net.idx(v).expect("endpoints belong to the network");
        Endpoints {
            sources: [i(&net.sources()[0]), i(&net.sources()[1])],
            destinations: [i(&net.destinations()[0]), i(&net.destinations()[1])],
        }
    }

    fn source(&self, f: Flow) -> usize {
        self.sources[f.index() as usize - 1]
    }

    fn destination(&self, f: Flow) -> usize {
        self.destinations[f.index() as usize - 1]
    }
}

struct Searcher<'a> {
    net: &'a LayeredNetwork,
    ends: Endpoints,
    mask: Vec<bool>,
}

impl<'a> Searcher<'a> {
    fn new(net: &'a LayeredNetwork) -> Self {
        Searcher {
            net,
            ends: Endpoints::of(net),
            mask: vec![false; net.num_nodes()],
        }
    }

    fn cuts(&mut self, removed: &[usize], from: &[usize], to: &[usize]) -> bool {
        for &r in removed {
            self.mask[r] = true;
        }
        let result = separates(self.net, &self.mask, from, to);
        for &r in removed {
            self.mask[r] = false;
        }
        result
    }

    /// `{v}` is a `({s1, s2}, d_i)`-cut.
    fn cuts_both_sources(&mut self, v: usize, dest: Flow) -> bool {
        let sources = self.ends.sources;
        let d = self.ends.destination(dest);
        self.cuts(&[v], &sources, &[d])
    }

    /// `set` is an `(s_ī, {d1, d2})`-cut, where `i = dest`.
    fn cuts_other_source(&mut self, set: &[usize], dest: Flow) -> bool {
        let s = self.ends.source(dest.other());
        let dests = self.ends.destinations;
        self.cuts(set, &[s], &dests)
    }
}

/// Nodes in report order: by layer, then by name.
fn report_order(net: &LayeredNetwork) -> Vec<usize> {
    let mut order: Vec<usize> = (0..net.num_nodes()).collect();
    order.sort_by(|&a, &b| {
        (net.layer_index(a), net.name(a)).cmp(&(net.layer_index(b), net.name(b)))
    });
    order
}

fn sorted_parents(net: &LayeredNetwork, v: usize) -> Vec<usize> {
    let mut p = net.parent_indices(v).to_vec();
    p.sort_by(|&a, &b| net.name(a).cmp(net.name(b)));
    p
}

/// All omniscient nodes, ordered by (layer, name, destination index).
///
/// The candidate `u` is taken from the parents in name order first, then `v`
/// itself. Sources and destinations are not excluded.
pub fn detect_omniscient(net: &LayeredNetwork) -> Vec<OmniscientRecord> {
    let mut s = Searcher::new(net);
    let mut out = Vec::new();
    for v in report_order(net) {
        for dest in Flow::BOTH {
            if !s.cuts_both_sources(v, dest) {
                continue;
            }
            let mut candidates = sorted_parents(net, v);
            candidates.push(v);
            if let Some(&u) = candidates
                .iter()
                .find(|&&u| s.cuts_other_source(&[u], dest))
            {
                out.push(OmniscientRecord {
                    node: net.name(v).clone(),
                    destination: dest,
                    witness_u: net.name(u).clone(),
                });
            }
        }
    }
    out
}

/// Finds every `m`-bottleneck node with its minimal `m`, plus the omniscient
/// nodes.
///
/// For each destination and each node that is a `({s1, s2}, d_i)`-cut, parent
/// subsets are tried by increasing size and, within a size, in lexicographic
/// order of the name-sorted parents. The first hit is recorded. Nodes whose
/// in-degree exceeds `max_indegree_for_exhaustive` abort the search.
pub fn detect_bottlenecks(
    net: &LayeredNetwork,
    max_indegree_for_exhaustive: usize,
) -> Result<BottleneckReport, CutError> {
    let mut s = Searcher::new(net);
    let mut bottlenecks = Vec::new();
    for v in report_order(net) {
        for dest in Flow::BOTH {
            if !s.cuts_both_sources(v, dest) {
                continue;
            }
            let parents = sorted_parents(net, v);
            if parents.len() > max_indegree_for_exhaustive {
                return Err(CutError::BudgetExceeded {
                    node: net.name(v).clone(),
                    indegree: parents.len(),
                    budget: max_indegree_for_exhaustive,
                });
            }
            if let Some(witness) = smallest_cut_subset(&mut s, &parents, dest) {
                bottlenecks.push(BottleneckRecord {
                    node: net.name(v).clone(),
                    destination: dest,
                    minimal_m: witness.len(),
                    witness: witness.into_iter().map(|i| net.name(i).clone()).collect(),
                });
            }
        }
    }
    Ok(BottleneckReport {
        bottlenecks,
        omniscient: detect_omniscient(net),
    })
}

fn smallest_cut_subset(s: &mut Searcher<'_>, parents: &[usize], dest: Flow) -> Option<Vec<usize>> {
    let n = parents.len();
    let mut chosen = Vec::with_capacity(n);
    for size in 1..=n {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            chosen.clear();
            chosen.extend(comb.iter().map(|&c| parents[c]));
            if s.cuts_other_source(&chosen, dest) {
                return Some(chosen);
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    None
}

/// Advances `comb` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
