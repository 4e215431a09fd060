use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use super::linalg::solve_in_span;
use super::{ChannelRealization, SimError, DEFAULT_RANK_TOL};
use crate::network::{Flow, LayeredNetwork, NodeId};
use crate::scheme::legality::validate_structure;
use crate::scheme::{Coefficient, GainRef, Scheme, SymbolId, TransmitSpec};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// Exact coefficient tracking, no noise.
    Noiseless,
    /// Unit-variance noise at every reception. Freshly formed signals
    /// (symbols and reconstructed forms) go out with amplitude `sqrt(power)`
    /// and replays are forwarded as received, so every reception equals
    /// `sqrt(power)` times its noiseless counterpart plus noise.
    Noisy { power: f64 },
}

/// A signal as coefficients over the symbols and the noise samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    pub symbols: Vec<f64>,
    pub noise: Vec<f64>,
}

impl Signal {
    fn zero(symbols: usize, noise: usize) -> Self {
        Signal {
            symbols: vec![0.0; symbols],
            noise: vec![0.0; noise],
        }
    }

    fn scaled(mut self, c: f64) -> Self {
        self.symbols
            .iter_mut()
            .chain(self.noise.iter_mut())
            .for_each(|x| *x *= c);
        self
    }

    fn add_scaled(&mut self, c: f64, other: &Signal) {
        for (x, y) in self.symbols.iter_mut().zip(&other.symbols) {
            *x += c * y;
        }
        for (x, y) in self.noise.iter_mut().zip(&other.noise) {
            *x += c * y;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.iter().chain(&self.noise).all(|&x| x == 0.0)
    }
}

/// Everything transmitted and received during one execution.
#[derive(Clone, Debug)]
pub struct SignalLedger {
    symbols: (u32, u32),
    slots: u32,
    mode: Mode,
    destinations: [NodeId; 2],
    received: BTreeMap<(NodeId, u32), Signal>,
    transmitted: BTreeMap<(usize, NodeId, u32), Signal>,
}

impl SignalLedger {
    pub fn symbols(&self) -> (u32, u32) {
        self.symbols
    }

    pub fn symbol_count(&self, flow: Flow) -> u32 {
        match flow {
            Flow::One => self.symbols.0,
            Flow::Two => self.symbols.1,
        }
    }

    /// Column of `s` in every symbol coefficient vector.
    pub fn column(&self, s: SymbolId) -> usize {
        match s.flow {
            Flow::One => s.index as usize - 1,
            Flow::Two => self.symbols.0 as usize + s.index as usize - 1,
        }
    }

    pub fn slots(&self) -> u32 {
        self.slots
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn destination(&self, flow: Flow) -> &NodeId {
        &self.destinations[flow.index() as usize - 1]
    }

    /// Signal received by `node` in `slot` of the block it listens to.
    pub fn received(&self, node: &NodeId, slot: u32) -> Option<&Signal> {
        self.received.get(&(node.clone(), slot))
    }

    /// All of `node`'s receptions in slot order.
    pub fn receptions(&self, node: &NodeId) -> Vec<&Signal> {
        (1..=self.slots)
            .filter_map(|t| self.received(node, t))
            .collect()
    }

    /// Signal sent by `node` in `slot` of hop block `hop` (1-based).
    pub fn transmitted(&self, hop: usize, node: &NodeId, slot: u32) -> Option<&Signal> {
        self.transmitted.get(&(hop, node.clone(), slot))
    }
}

/// Runs `sch` on `net` with gains from `real`.
pub fn execute(
    net: &LayeredNetwork,
    sch: &Scheme,
    real: &ChannelRealization,
    mode: Mode,
) -> Result<SignalLedger, SimError> {
    validate_structure(net, sch)?;
    let (k1, k2) = sch.symbols();
    let n_sym = (k1 + k2) as usize;
    let slots = sch.slots();
    let noisy = matches!(mode, Mode::Noisy { .. });
    let receivers: usize = net.layers()[1..].iter().map(Vec::len).sum();
    let n_noise = if noisy { receivers * slots as usize } else { 0 };

    let mut ledger = SignalLedger {
        symbols: (k1, k2),
        slots,
        mode,
        destinations: net.destinations().clone(),
        received: BTreeMap::new(),
        transmitted: BTreeMap::new(),
    };
    let mut noise_index = 0;
    let amplitude = match mode {
        Mode::Noiseless => 1.0,
        Mode::Noisy { power } => Float::sqrt(power),
    };

    for (h, block) in sch.hops().iter().enumerate() {
        let hop = h + 1;
        for t in 1..=slots {
            let mut sent: Vec<(&NodeId, Signal)> = Vec::new();
            for node in &net.layers()[h] {
                let spec = block.get(t, node);
                if spec.is_silent() {
                    continue;
                }
                let ctx = Ctx {
                    ledger: &ledger,
                    real,
                    node,
                    hop,
                    slot: t,
                    source: Flow::BOTH.into_iter().find(|&f| net.source(f) == node),
                    n_sym,
                    n_noise,
                    amplitude,
                };
                sent.push((node, ctx.eval(spec)?));
            }
            for receiver in &net.layers()[h + 1] {
                let mut y = Signal::zero(n_sym, n_noise);
                for (tx, x) in &sent {
                    if net.edge_index(tx, receiver).is_none() {
                        continue;
                    }
                    let g = GainRef::new((*tx).clone(), receiver.clone(), t);
                    let gain = real.get(&g).ok_or(SimError::MissingGain(g))?;
                    y.add_scaled(gain, x);
                }
                if noisy {
                    y.noise[noise_index] = 1.0;
                    noise_index += 1;
                }
                ledger.received.insert((receiver.clone(), t), y);
            }
            for (tx, x) in sent {
                ledger.transmitted.insert((hop, tx.clone(), t), x);
            }
        }
    }
    Ok(ledger)
}

struct Ctx<'a> {
    ledger: &'a SignalLedger,
    real: &'a ChannelRealization,
    node: &'a NodeId,
    hop: usize,
    slot: u32,
    source: Option<Flow>,
    n_sym: usize,
    n_noise: usize,
    amplitude: f64,
}

impl Ctx<'_> {
    fn coefficient(&self, c: &Coefficient) -> Result<f64, SimError> {
        let mut v = c.weight;
        for g in &c.gains {
            v *= self
                .real
                .get(g)
                .ok_or_else(|| SimError::MissingGain(g.clone()))?;
        }
        Ok(v)
    }

    fn eval(&self, spec: &TransmitSpec) -> Result<Signal, SimError> {
        match spec {
            TransmitSpec::Silent => Ok(Signal::zero(self.n_sym, self.n_noise)),
            TransmitSpec::Symbol { symbol, scale } => {
                let mut target = vec![0.0; self.n_sym];
                target[self.ledger.column(*symbol)] = 1.0;
                Ok(self
                    .realize(&target)?
                    .scaled(self.amplitude * self.coefficient(scale)?))
            }
            TransmitSpec::Replay { slot, scale } => {
                let y = if self.source.is_some() {
                    None
                } else {
                    self.ledger.received(self.node, *slot)
                };
                let y = y.ok_or_else(|| SimError::ReplayWithoutReception {
                    node: self.node.clone(),
                    hop: self.hop,
                    slot: self.slot,
                })?;
                Ok(y.clone().scaled(self.coefficient(scale)?))
            }
            TransmitSpec::Reconstruct { target } => {
                let mut t = vec![0.0; self.n_sym];
                for term in target {
                    t[self.ledger.column(term.symbol)] += self.coefficient(&term.coefficient)?;
                }
                Ok(self.realize(&t)?.scaled(self.amplitude))
            }
            TransmitSpec::Combo(parts) => {
                let mut out = Signal::zero(self.n_sym, self.n_noise);
                for (w, p) in parts {
                    out.add_scaled(*w, &self.eval(p)?);
                }
                Ok(out)
            }
        }
    }

    /// A combination of the node's history whose symbol part equals `target`.
    fn realize(&self, target: &[f64]) -> Result<Signal, SimError> {
        let infeasible = || SimError::ReconstructionInfeasible {
            node: self.node.clone(),
            hop: self.hop,
            slot: self.slot,
        };
        if let Some(flow) = self.source {
            // A source holds its own symbols noise-free.
            let (k1, _) = self.ledger.symbols;
            let own = |c: usize| (c < k1 as usize) == (flow == Flow::One);
            if target.iter().enumerate().any(|(c, &x)| x != 0.0 && !own(c)) {
                return Err(infeasible());
            }
            return Ok(Signal {
                symbols: target.to_vec(),
                noise: vec![0.0; self.n_noise],
            });
        }
        let history = self.ledger.receptions(self.node);
        let rows: Vec<&[f64]> = history.iter().map(|s| s.symbols.as_slice()).collect();
        let w = solve_in_span(&rows, target, DEFAULT_RANK_TOL).ok_or_else(infeasible)?;
        let mut out = Signal::zero(self.n_sym, self.n_noise);
        for (wi, s) in w.iter().zip(&history) {
            out.add_scaled(*wi, s);
        }
        // Exact symbol part; only the noise carries the solve's weights.
        out.symbols.copy_from_slice(target);
        Ok(out)
    }
}
