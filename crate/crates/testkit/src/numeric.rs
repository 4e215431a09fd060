//! Genie-aided numeric simulation: every node is handed the symbol values it
//! is asked to send, and signals are plain numbers.

use std::collections::BTreeMap;

use dofnet_core::scheme::{Coefficient, SymbolId};
use dofnet_core::{ChannelRealization, LayeredNetwork, NodeId, Scheme, TransmitSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random symbol values in `[-1, 1]`.
pub fn symbol_values(sch: &Scheme, seed: u64) -> BTreeMap<SymbolId, f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (k1, k2) = sch.symbols();
    (1..=k1)
        .map(SymbolId::a)
        .chain((1..=k2).map(SymbolId::b))
        .map(|s| (s, rng.random_range(-1.0..=1.0)))
        .collect()
}

fn coef(c: &Coefficient, real: &ChannelRealization) -> f64 {
    c.gains
        .iter()
        .fold(c.weight, |acc, g| acc * real.get(g).unwrap())
}

/// Received value of every non-source node in every slot.
pub fn direct_simulate(
    net: &LayeredNetwork,
    sch: &Scheme,
    real: &ChannelRealization,
    values: &BTreeMap<SymbolId, f64>,
) -> BTreeMap<(NodeId, u32), f64> {
    let mut rx: BTreeMap<(NodeId, u32), f64> = BTreeMap::new();
    for (h, block) in sch.hops().iter().enumerate() {
        for t in 1..=sch.slots() {
            for v in &net.layers()[h + 1] {
                let mut y = 0.0;
                for u in net.parents(v).unwrap() {
                    let x = value(block.get(t, &u), &u, real, values, &rx);
                    if x != 0.0 {
                        y += real.gain(&u, v, t).unwrap() * x;
                    }
                }
                rx.insert((v.clone(), t), y);
            }
        }
    }
    rx
}

fn value(
    spec: &TransmitSpec,
    node: &NodeId,
    real: &ChannelRealization,
    values: &BTreeMap<SymbolId, f64>,
    rx: &BTreeMap<(NodeId, u32), f64>,
) -> f64 {
    match spec {
        TransmitSpec::Silent => 0.0,
        TransmitSpec::Symbol { symbol, scale } => values[symbol] * coef(scale, real),
        TransmitSpec::Replay { slot, scale } => rx[&(node.clone(), *slot)] * coef(scale, real),
        TransmitSpec::Reconstruct { target } => target
            .iter()
            .map(|t| values[&t.symbol] * coef(&t.coefficient, real))
            .sum(),
        TransmitSpec::Combo(parts) => parts
            .iter()
            .map(|(w, p)| w * value(p, node, real, values, rx))
            .sum(),
    }
}
