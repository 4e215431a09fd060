use std::collections::BTreeSet;

use dofnet_core::{Flow, LayeredNetwork, NodeId};

/// Every directed path from `from` to `to`, as node lists.
pub fn all_paths(net: &LayeredNetwork, from: &NodeId, to: &NodeId) -> Vec<Vec<NodeId>> {
    let mut out = Vec::new();
    let mut path = vec![from.clone()];
    extend(net, to, &mut path, &mut out);
    out
}

fn extend(net: &LayeredNetwork, to: &NodeId, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
    let last = path.last().unwrap().clone();
    if &last == to {
        out.push(path.clone());
        return;
    }
    for c in net.children(&last).unwrap() {
        path.push(c);
        extend(net, to, path, out);
        path.pop();
    }
}

/// `removed` is a `(from, to)`-cut iff every path from a node of `from` to a
/// node of `to` visits a node of `removed` (endpoints included).
pub fn is_cut_by_paths(
    net: &LayeredNetwork,
    removed: &BTreeSet<NodeId>,
    from: &BTreeSet<NodeId>,
    to: &BTreeSet<NodeId>,
) -> bool {
    from.iter().all(|b| {
        to.iter().all(|c| {
            all_paths(net, b, c)
                .iter()
                .all(|p| p.iter().any(|v| removed.contains(v)))
        })
    })
}

fn set<'a>(it: impl IntoIterator<Item = &'a NodeId>) -> BTreeSet<NodeId> {
    it.into_iter().cloned().collect()
}

fn single_cuts_sources(net: &LayeredNetwork, v: &NodeId, dest: Flow) -> bool {
    is_cut_by_paths(
        net,
        &set([v]),
        &set(net.sources()),
        &set([net.destination(dest)]),
    )
}

fn cuts_other(net: &LayeredNetwork, m: &BTreeSet<NodeId>, dest: Flow) -> bool {
    is_cut_by_paths(
        net,
        m,
        &set([net.source(dest.other())]),
        &set(net.destinations()),
    )
}

/// `(node, destination, minimal m)` for every node with some bottleneck
/// subset, by enumerating all parent subsets as bitmasks.
pub fn brute_force_bottlenecks(net: &LayeredNetwork) -> BTreeSet<(NodeId, Flow, usize)> {
    let mut out = BTreeSet::new();
    for v in net.nodes() {
        let parents: Vec<NodeId> = net.parents(v).unwrap().into_iter().collect();
        for dest in Flow::BOTH {
            if !single_cuts_sources(net, v, dest) {
                continue;
            }
            let best = (1u32..1 << parents.len())
                .filter(|mask| {
                    let m = (0..parents.len())
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| parents[i].clone())
                        .collect();
                    cuts_other(net, &m, dest)
                })
                .map(|mask| mask.count_ones() as usize)
                .min();
            if let Some(m) = best {
                out.insert((v.clone(), dest, m));
            }
        }
    }
    out
}

/// `(node, destination)` for every omniscient node.
pub fn brute_force_omniscient(net: &LayeredNetwork) -> BTreeSet<(NodeId, Flow)> {
    let mut out = BTreeSet::new();
    for v in net.nodes() {
        for dest in Flow::BOTH {
            if !single_cuts_sources(net, v, dest) {
                continue;
            }
            let mut candidates = net.parents(v).unwrap();
            candidates.insert(v.clone());
            if candidates.iter().any(|u| cuts_other(net, &set([u]), dest)) {
                out.insert((v.clone(), dest));
            }
        }
    }
    out
}
