//! Time-slotted linear transmission schemes.
//!
//! A [`Scheme`] assigns a [`TransmitSpec`] to each `(slot, node)` of each hop
//! block. Hop block `ℓ` (1-based) is used by the nodes of layer `ℓ`, and the
//! blocks run one after another: all `T` slots of hop 1, then hop 2, and so on.
//! Channel gains are indexed by the slot of the hop block their edge belongs
//! to, so `h_{u,v}[t]` always means "slot `t` of the block in which `u`
//! transmits".

mod builtin;
pub(crate) mod legality;

pub use builtin::builtin_scheme;
pub use legality::{
    check_csit_legality, check_csit_legality_with_delay, LegalityReport, Violation, ViolationReason,
};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::dof::Rational;
use crate::network::{Family, Flow, NetworkError, NodeId};

/// `a_index` for flow 1, `b_index` for flow 2. Indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId {
    pub flow: Flow,
    pub index: u32,
}

impl SymbolId {
    pub fn a(index: u32) -> Self {
        SymbolId {
            flow: Flow::One,
            index,
        }
    }

    pub fn b(index: u32) -> Self {
        SymbolId {
            flow: Flow::Two,
            index,
        }
    }

    pub fn of(flow: Flow, index: u32) -> Self {
        SymbolId { flow, index }
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.flow {
            Flow::One => 'a',
            Flow::Two => 'b',
        };
        write!(f, "{}{}", letter, self.index)
    }
}

/// Reference to the gain `h_{from,to}[slot]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GainRef {
    pub from: NodeId,
    pub to: NodeId,
    pub slot: u32,
}

impl GainRef {
    pub fn new(from: impl Into<NodeId>, to: impl Into<NodeId>, slot: u32) -> Self {
        GainRef {
            from: from.into(),
            to: to.into(),
            slot,
        }
    }
}

impl fmt::Display for GainRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h[{},{}][{}]", self.from, self.to, self.slot)
    }
}

/// A real coefficient `weight · Π gains`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficient {
    pub weight: f64,
    pub gains: Vec<GainRef>,
}

impl Coefficient {
    pub fn one() -> Self {
        Coefficient::constant(1.0)
    }

    pub fn constant(weight: f64) -> Self {
        Coefficient {
            weight,
            gains: Vec::new(),
        }
    }

    pub fn gain(g: GainRef) -> Self {
        Coefficient {
            weight: 1.0,
            gains: alloc::vec![g],
        }
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::one()
    }
}

/// One term `coefficient · symbol` of a linear form.
#[derive(Clone, Debug, PartialEq)]
pub struct FormTerm {
    pub symbol: SymbolId,
    pub coefficient: Coefficient,
}

/// What a node puts on the air in one slot.
#[derive(Clone, Debug, PartialEq)]
pub enum TransmitSpec {
    Silent,
    /// A symbol the node can decode from what it has received (sources know
    /// their own flow's symbols).
    Symbol {
        symbol: SymbolId,
        scale: Coefficient,
    },
    /// What the node received in `slot` of the previous hop block.
    Replay {
        slot: u32,
        scale: Coefficient,
    },
    /// A linear form over symbols that must lie in the span of the node's
    /// received signals; its coefficients may only use gains the node knows.
    Reconstruct {
        target: Vec<FormTerm>,
    },
    /// Constant-weight combination of other specs.
    Combo(Vec<(f64, TransmitSpec)>),
}

impl TransmitSpec {
    pub fn symbol(symbol: SymbolId) -> Self {
        TransmitSpec::Symbol {
            symbol,
            scale: Coefficient::one(),
        }
    }

    pub fn replay(slot: u32) -> Self {
        TransmitSpec::Replay {
            slot,
            scale: Coefficient::one(),
        }
    }

    pub fn is_silent(&self) -> bool {
        matches!(self, TransmitSpec::Silent)
    }

    /// Every gain referenced anywhere in the spec.
    pub fn gains(&self) -> Vec<&GainRef> {
        let mut out = Vec::new();
        self.collect_gains(&mut out);
        out
    }

    fn collect_gains<'a>(&'a self, out: &mut Vec<&'a GainRef>) {
        match self {
            TransmitSpec::Silent => {}
            TransmitSpec::Symbol { scale, .. } | TransmitSpec::Replay { scale, .. } => {
                out.extend(scale.gains.iter())
            }
            TransmitSpec::Reconstruct { target } => {
                for t in target {
                    out.extend(t.coefficient.gains.iter());
                }
            }
            TransmitSpec::Combo(parts) => {
                for (_, p) in parts {
                    p.collect_gains(out);
                }
            }
        }
    }

    fn map_slots(&self, f: &impl Fn(u32) -> u32) -> TransmitSpec {
        let coef = |c: &Coefficient| Coefficient {
            weight: c.weight,
            gains: c
                .gains
                .iter()
                .map(|g| GainRef {
                    slot: f(g.slot),
                    ..g.clone()
                })
                .collect(),
        };
        match self {
            TransmitSpec::Silent => TransmitSpec::Silent,
            TransmitSpec::Symbol { symbol, scale } => TransmitSpec::Symbol {
                symbol: *symbol,
                scale: coef(scale),
            },
            TransmitSpec::Replay { slot, scale } => TransmitSpec::Replay {
                slot: f(*slot),
                scale: coef(scale),
            },
            TransmitSpec::Reconstruct { target } => TransmitSpec::Reconstruct {
                target: target
                    .iter()
                    .map(|t| FormTerm {
                        symbol: t.symbol,
                        coefficient: coef(&t.coefficient),
                    })
                    .collect(),
            },
            TransmitSpec::Combo(parts) => {
                TransmitSpec::Combo(parts.iter().map(|(w, p)| (*w, p.map_slots(f))).collect())
            }
        }
    }
}

/// Schedule of one hop block.
#[derive(Clone, Debug, PartialEq)]
pub struct HopBlock {
    slots: u32,
    schedule: BTreeMap<(u32, NodeId), TransmitSpec>,
}

static SILENT: TransmitSpec = TransmitSpec::Silent;

impl HopBlock {
    pub fn new(slots: u32) -> Self {
        HopBlock {
            slots,
            schedule: BTreeMap::new(),
        }
    }

    pub fn slots(&self) -> u32 {
        self.slots
    }

    /// Sets the spec of `node` in `slot`; silent entries are not stored.
    pub fn set(&mut self, slot: u32, node: impl Into<NodeId>, spec: TransmitSpec) -> &mut Self {
        let key = (slot, node.into());
        if spec.is_silent() {
            self.schedule.remove(&key);
        } else {
            self.schedule.insert(key, spec);
        }
        self
    }

    pub fn get(&self, slot: u32, node: &NodeId) -> &TransmitSpec {
        self.schedule.get(&(slot, node.clone())).unwrap_or(&SILENT)
    }

    /// Non-silent entries ordered by `(slot, node)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &NodeId, &TransmitSpec)> {
        self.schedule.iter().map(|((s, n), spec)| (*s, n, spec))
    }
}

/// Family tag carried by a scheme; free-form for hand-written schemes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTag {
    pub name: String,
    pub m: Option<u32>,
}

impl From<Family> for FamilyTag {
    fn from(f: Family) -> Self {
        FamilyTag {
            name: f.name().to_string(),
            m: f.m(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchemeError {
    #[error("a scheme needs at least one hop block")]
    NoHops,
    #[error("hop block {hop} has {slots} slots; every block must have {expected}")]
    NonUniformBlocks {
        hop: usize,
        slots: u32,
        expected: u32,
    },
    #[error("hop blocks must have at least one slot")]
    ZeroSlots,
    #[error("hop {hop}: slot {slot} outside 1..={slots}")]
    SlotOutOfRange { hop: usize, slot: u32, slots: u32 },
    #[error("scheme has {hops} hop blocks but the network needs {expected}")]
    HopCountMismatch { hops: usize, expected: usize },
    #[error("node `{node}` is in layer {layer} but is scheduled in hop block {hop}")]
    WrongHop {
        node: NodeId,
        hop: usize,
        layer: usize,
    },
    #[error("reference to nonexistent edge ({0}, {1})")]
    UnknownEdge(NodeId, NodeId),
    #[error("gain {gain} refers to a slot outside 1..={slots}")]
    GainSlotOutOfRange { gain: GainRef, slots: u32 },
    #[error("symbol {symbol} is not among the declared symbols")]
    UnknownSymbol { symbol: SymbolId },
    #[error("invalid family parameter m = {0}")]
    InvalidParameter(u32),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// A complete per-hop linear schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct Scheme {
    family: FamilyTag,
    hops: Vec<HopBlock>,
    symbols: (u32, u32),
}

impl Scheme {
    /// Builds a scheme; every hop block must have the same number of slots
    /// and schedule only slots inside it.
    pub fn new(
        family: FamilyTag,
        hops: Vec<HopBlock>,
        symbols: (u32, u32),
    ) -> Result<Self, SchemeError> {
        let first = hops.first().ok_or(SchemeError::NoHops)?;
        let slots = first.slots;
        if slots == 0 {
            return Err(SchemeError::ZeroSlots);
        }
        for (h, block) in hops.iter().enumerate() {
            if block.slots != slots {
                return Err(SchemeError::NonUniformBlocks {
                    hop: h + 1,
                    slots: block.slots,
                    expected: slots,
                });
            }
            for (slot, _, _) in block.entries() {
                if slot == 0 || slot > slots {
                    return Err(SchemeError::SlotOutOfRange {
                        hop: h + 1,
                        slot,
                        slots,
                    });
                }
            }
        }
        Ok(Scheme {
            family,
            hops,
            symbols,
        })
    }

    pub fn family(&self) -> &FamilyTag {
        &self.family
    }

    pub fn hops(&self) -> &[HopBlock] {
        &self.hops
    }

    /// `T`, the common block length.
    pub fn slots(&self) -> u32 {
        self.hops[0].slots
    }

    /// `(k1, k2)`
    pub fn symbols(&self) -> (u32, u32) {
        self.symbols
    }

    pub fn symbol_count(&self, flow: Flow) -> u32 {
        match flow {
            Flow::One => self.symbols.0,
            Flow::Two => self.symbols.1,
        }
    }

    /// `(k1/T, k2/T)`
    pub fn declared_dof(&self) -> (Rational, Rational) {
        let t = self.slots() as i64;
        (
            Rational::new(self.symbols.0 as i64, t),
            Rational::new(self.symbols.1 as i64, t),
        )
    }

    /// Stretches every block by `factor`: slot `t` becomes `(t - 1)·factor + 1`
    /// (for schedule keys, replays and gain references alike) and the new
    /// slots in between are silent.
    pub fn interleaved(&self, factor: u32) -> Scheme {
        assert!(factor >= 1, "interleaving factor must be positive");
        let map = |t: u32| (t - 1) * factor + 1;
        let hops = self
            .hops
            .iter()
            .map(|b| HopBlock {
                slots: b.slots * factor,
                schedule: b
                    .schedule
                    .iter()
                    .map(|((s, n), spec)| ((map(*s), n.clone()), spec.map_slots(&map)))
                    .collect(),
            })
            .collect();
        Scheme {
            family: self.family.clone(),
            hops,
            symbols: self.symbols,
        }
    }
}
