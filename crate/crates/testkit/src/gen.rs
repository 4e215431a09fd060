use dofnet_core::{LayeredNetwork, NodeId};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub struct NetParams {
    /// Total node count including sources and destinations (at least 5).
    pub max_nodes: usize,
    pub max_layers: usize,
    pub max_indegree: usize,
}

impl NetParams {
    pub const SMALL: NetParams = NetParams {
        max_nodes: 10,
        max_layers: 5,
        max_indegree: 4,
    };
}

/// A random layered network with `V1 = {s1, s2}` and `Vr = {d1, d2}`.
/// Relays are named `n0, n1, ...` in layer order.
pub fn random_network(seed: u64, p: NetParams) -> LayeredNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let relay_budget = p.max_nodes - 4;
    let middle = rng.random_range(1..=(p.max_layers - 2).min(relay_budget));
    let mut widths = vec![1usize; middle];
    for _ in 0..rng.random_range(0..=relay_budget - middle) {
        let i = rng.random_range(0..middle);
        widths[i] += 1;
    }

    let mut layers: Vec<Vec<NodeId>> = vec![vec!["s1".into(), "s2".into()]];
    let mut next = 0;
    for w in widths {
        layers.push(
            (next..next + w)
                .map(|i| NodeId::new(format!("n{i}")))
                .collect(),
        );
        next += w;
    }
    layers.push(vec!["d1".into(), "d2".into()]);

    let density: f64 = rng.random_range(0.3..0.9);
    let mut edges = Vec::new();
    for pair in layers.windows(2) {
        for v in &pair[1] {
            let mut parents: Vec<&NodeId> = pair[0]
                .iter()
                .filter(|_| rng.random_bool(density))
                .collect();
            if parents.len() > p.max_indegree {
                let keep = sample(&mut rng, parents.len(), p.max_indegree);
                let mut idx: Vec<usize> = keep.into_iter().collect();
                idx.sort_unstable();
                parents = idx.into_iter().map(|i| parents[i]).collect();
            }
            edges.extend(parents.into_iter().map(|u| (u.clone(), v.clone())));
        }
    }
    LayeredNetwork::new(
        layers,
        edges,
        ["s1".into(), "s2".into()],
        ["d1".into(), "d2".into()],
    )
    .expect("generator output is layered")
}

/// Proptest strategy over [`random_network`] seeds.
pub fn arb_network(p: NetParams) -> impl Strategy<Value = LayeredNetwork> {
    any::<u64>().prop_map(move |seed| random_network(seed, p))
}
