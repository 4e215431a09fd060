use alloc::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::network::{LayeredNetwork, NodeId};
use crate::scheme::GainRef;

/// Draws with a smaller magnitude are discarded and redrawn.
pub const MIN_GAIN_MAGNITUDE: f64 = 1e-3;

/// One realization of every gain `h_{u,v}[t]`, `t = 1..=slots`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization {
    seed: u64,
    trial: u64,
    gains: BTreeMap<(NodeId, NodeId, u32), f64>,
}

impl ChannelRealization {
    /// I.i.d. standard normal gains.
    ///
    /// Each `(edge, slot)` gets its own ChaCha8 stream keyed by
    /// `(seed, trial, edge index, slot)`, so a gain does not depend on how
    /// many other gains were drawn or in which order.
    pub fn draw(net: &LayeredNetwork, slots: u32, seed: u64, trial: u64) -> Self {
        let mut gains = BTreeMap::new();
        for (e, (u, v)) in net.edges().iter().enumerate() {
            for t in 1..=slots {
                gains.insert(
                    (u.clone(), v.clone(), t),
                    draw_gain(seed, trial, e as u64, t),
                );
            }
        }
        ChannelRealization { seed, trial, gains }
    }

    /// A realization with explicitly given gains.
    pub fn from_gains(seed: u64, gains: impl IntoIterator<Item = (GainRef, f64)>) -> Self {
        ChannelRealization {
            seed,
            trial: 0,
            gains: gains
                .into_iter()
                .map(|(g, h)| ((g.from, g.to, g.slot), h))
                .collect(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trial(&self) -> u64 {
        self.trial
    }

    pub fn gain(&self, from: &NodeId, to: &NodeId, slot: u32) -> Option<f64> {
        self.gains.get(&(from.clone(), to.clone(), slot)).copied()
    }

    pub fn get(&self, g: &GainRef) -> Option<f64> {
        self.gain(&g.from, &g.to, g.slot)
    }

    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }
}

fn draw_gain(seed: u64, trial: u64, edge: u64, slot: u32) -> f64 {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16..24].copy_from_slice(&edge.to_le_bytes());
    key[24..28].copy_from_slice(&slot.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    loop {
        let h: f64 = StandardNormal.sample(&mut rng);
        if h.abs() >= MIN_GAIN_MAGNITUDE {
            return h;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::bottleneck_family;

    #[test]
    fn deterministic_and_order_free() {
        let net = bottleneck_family(3).unwrap();
        let a = ChannelRealization::draw(&net, 3, 7, 0);
        let b = ChannelRealization::draw(&net, 3, 7, 0);
        assert_eq!(a, b);
        assert_eq!(a.len(), net.edges().len() * 3);
        // Drawing more slots leaves the earlier ones untouched.
        let c = ChannelRealization::draw(&net, 5, 7, 0);
        let g = GainRef::new("v2", "w", 2);
        assert_eq!(a.get(&g), c.get(&g));
        let d = ChannelRealization::draw(&net, 3, 7, 1);
        assert_ne!(a.get(&g), d.get(&g));
        assert!(a.gains.values().all(|h| h.abs() >= MIN_GAIN_MAGNITUDE));
    }
}
