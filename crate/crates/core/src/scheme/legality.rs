//! Static delayed-CSIT legality checks.
//!
//! At global time `t` a node knows the gains of its own incoming edges at `t`
//! and every gain up to `t - delay`. Global time runs through the hop blocks
//! in order: slot `s` of hop `h` is `(h - 1)·T + s`.
//!
//! Besides gain timing, the checker tracks which symbols can appear in each
//! node's received signals and flags any node asked to send or reconstruct a
//! symbol it never hears. That is a necessary condition only; the simulation
//! engine performs the exact rank test.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use super::{GainRef, Scheme, SchemeError, SymbolId, TransmitSpec};
use crate::network::{Flow, LayeredNetwork, NodeId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationReason {
    /// A gain of the current slot on an edge not entering the transmitter.
    InstantaneousCrossNodeGain,
    /// A gain from a later slot.
    FutureGain,
    /// A past gain that has not reached the node yet (delays above one).
    GainNotYetLearned,
    /// Symbols the node's received signals never contain.
    MissingSymbols(Vec<SymbolId>),
    /// Replay requested by a node that receives nothing (a source).
    ReplayWithoutReception,
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationReason::InstantaneousCrossNodeGain => {
                f.write_str("instantaneous cross-node gain")
            }
            ViolationReason::FutureGain => f.write_str("future gain"),
            ViolationReason::GainNotYetLearned => f.write_str("gain not yet learned"),
            ViolationReason::MissingSymbols(syms) => {
                f.write_str("node lacks symbols")?;
                for (i, s) in syms.iter().enumerate() {
                    f.write_str(if i == 0 { " " } else { ", " })?;
                    write!(f, "{s}")?;
                }
                Ok(())
            }
            ViolationReason::ReplayWithoutReception => f.write_str("replay without reception"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub node: NodeId,
    /// 1-based hop block.
    pub hop: usize,
    pub slot: u32,
    pub gain: Option<GainRef>,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LegalityReport {
    pub violations: Vec<Violation>,
}

impl LegalityReport {
    pub fn is_legal(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `sch` against `net` under the unit-delay model.
pub fn check_csit_legality(
    net: &LayeredNetwork,
    sch: &Scheme,
) -> Result<LegalityReport, SchemeError> {
    check_csit_legality_with_delay(net, sch, 1)
}

/// Same as [`check_csit_legality`] with gains learned `delay` slots late.
pub fn check_csit_legality_with_delay(
    net: &LayeredNetwork,
    sch: &Scheme,
    delay: u32,
) -> Result<LegalityReport, SchemeError> {
    validate_structure(net, sch)?;
    let t_len = sch.slots() as u64;
    let global = |hop: usize, slot: u32| (hop as u64 - 1) * t_len + slot as u64;

    let mut violations = Vec::new();
    for (h, block) in sch.hops().iter().enumerate() {
        let hop = h + 1;
        for (slot, node, spec) in block.entries() {
            let now = global(hop, slot);
            for g in spec.gains() {
                let gain_hop = net.layer_of(&g.from)? + 1;
                let at = global(gain_hop, g.slot);
                let own = &g.to == node;
                let known = at + delay as u64 <= now || (own && at <= now);
                if known {
                    continue;
                }
                let reason = if at > now {
                    ViolationReason::FutureGain
                } else if at == now {
                    ViolationReason::InstantaneousCrossNodeGain
                } else {
                    ViolationReason::GainNotYetLearned
                };
                violations.push(Violation {
                    node: node.clone(),
                    hop,
                    slot,
                    gain: Some(g.clone()),
                    reason,
                });
            }
        }
    }

    violations.extend(symbol_support(net, sch));
    violations.sort_by(|a, b| (a.hop, a.slot, &a.node).cmp(&(b.hop, b.slot, &b.node)));
    Ok(LegalityReport { violations })
}

/// Structural agreement between a scheme and a network: block count, hop
/// placement of every scheduled node, edges and slots of every gain, symbol
/// indices and replay slots.
pub(crate) fn validate_structure(net: &LayeredNetwork, sch: &Scheme) -> Result<(), SchemeError> {
    let expected = net.num_layers() - 1;
    if sch.hops().len() != expected {
        return Err(SchemeError::HopCountMismatch {
            hops: sch.hops().len(),
            expected,
        });
    }
    for (h, block) in sch.hops().iter().enumerate() {
        for (_, node, spec) in block.entries() {
            let layer = net.layer_of(node)?;
            if layer != h {
                return Err(SchemeError::WrongHop {
                    node: node.clone(),
                    hop: h + 1,
                    layer: layer + 1,
                });
            }
            validate_spec(net, sch, spec, h + 1)?;
        }
    }
    Ok(())
}

fn validate_spec(
    net: &LayeredNetwork,
    sch: &Scheme,
    spec: &TransmitSpec,
    hop: usize,
) -> Result<(), SchemeError> {
    let slots = sch.slots();
    for g in spec.gains() {
        if net.edge_index(&g.from, &g.to).is_none() {
            return Err(SchemeError::UnknownEdge(g.from.clone(), g.to.clone()));
        }
        if g.slot == 0 || g.slot > slots {
            return Err(SchemeError::GainSlotOutOfRange {
                gain: g.clone(),
                slots,
            });
        }
    }
    let check_symbol = |s: &SymbolId| {
        if s.index == 0 || s.index > sch.symbol_count(s.flow) {
            Err(SchemeError::UnknownSymbol { symbol: *s })
        } else {
            Ok(())
        }
    };
    match spec {
        TransmitSpec::Silent => Ok(()),
        TransmitSpec::Symbol { symbol, .. } => check_symbol(symbol),
        TransmitSpec::Replay { slot: r, .. } => {
            if *r == 0 || *r > slots {
                Err(SchemeError::SlotOutOfRange {
                    hop: hop.saturating_sub(1),
                    slot: *r,
                    slots,
                })
            } else {
                Ok(())
            }
        }
        TransmitSpec::Reconstruct { target } => {
            target.iter().try_for_each(|t| check_symbol(&t.symbol))
        }
        TransmitSpec::Combo(parts) => parts
            .iter()
            .try_for_each(|(_, p)| validate_spec(net, sch, p, hop)),
    }
}

type Support = BTreeSet<SymbolId>;

/// Propagates symbol supports hop by hop and reports every send or
/// reconstruction of a symbol outside the node's received support.
fn symbol_support(net: &LayeredNetwork, sch: &Scheme) -> Vec<Violation> {
    let mut received: BTreeMap<(NodeId, u32), Support> = BTreeMap::new();
    let mut heard: BTreeMap<NodeId, Support> = BTreeMap::new();
    for f in Flow::BOTH {
        let own = (1..=sch.symbol_count(f))
            .map(|i| SymbolId::of(f, i))
            .collect();
        heard.insert(net.source(f).clone(), own);
    }

    let mut violations = Vec::new();
    for (h, block) in sch.hops().iter().enumerate() {
        for (slot, node, spec) in block.entries() {
            let mut missing = Support::new();
            let mut replay_orphan = false;
            let empty = Support::new();
            let support = spec_support(
                spec,
                node,
                h == 0,
                heard.get(node).unwrap_or(&empty),
                &received,
                &mut missing,
                &mut replay_orphan,
            );
            let mut flag = |reason| {
                violations.push(Violation {
                    node: node.clone(),
                    hop: h + 1,
                    slot,
                    gain: None,
                    reason,
                })
            };
            if !missing.is_empty() {
                flag(ViolationReason::MissingSymbols(
                    missing.into_iter().collect(),
                ));
            }
            if replay_orphan {
                flag(ViolationReason::ReplayWithoutReception);
            }
            for child in net.children(node).expect("validated node") {
                received
                    .entry((child.clone(), slot))
                    .or_default()
                    .extend(support.iter().copied());
            }
        }
        // Everything received during this block is known before the next one.
        for layer_node in &net.layers()[h + 1] {
            let all: Support = (1..=sch.slots())
                .filter_map(|s| received.get(&(layer_node.clone(), s)))
                .flat_map(|s| s.iter().copied())
                .collect();
            heard.insert(layer_node.clone(), all);
        }
    }
    violations
}

fn spec_support(
    spec: &TransmitSpec,
    node: &NodeId,
    is_source: bool,
    heard: &Support,
    received: &BTreeMap<(NodeId, u32), Support>,
    missing: &mut Support,
    replay_orphan: &mut bool,
) -> Support {
    let require = |s: SymbolId, missing: &mut Support| {
        if !heard.contains(&s) {
            missing.insert(s);
        }
    };
    match spec {
        TransmitSpec::Silent => Support::new(),
        TransmitSpec::Symbol { symbol, .. } => {
            require(*symbol, missing);
            [*symbol].into_iter().collect()
        }
        TransmitSpec::Replay { slot, .. } => {
            if is_source {
                *replay_orphan = true;
            }
            received
                .get(&(node.clone(), *slot))
                .cloned()
                .unwrap_or_default()
        }
        TransmitSpec::Reconstruct { target } => {
            for t in target {
                require(t.symbol, missing);
            }
            target.iter().map(|t| t.symbol).collect()
        }
        TransmitSpec::Combo(parts) => {
            let mut all = Support::new();
            for (_, p) in parts {
                all.extend(spec_support(
                    p,
                    node,
                    is_source,
                    heard,
                    received,
                    missing,
                    replay_orphan,
                ));
            }
            all
        }
    }
}
